#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shapxp/adversarial.hpp"
#include "shapxp/dataset.hpp"
#include "shapxp/errors.hpp"
#include "shapxp/explain.hpp"
#include "shapxp/families.hpp"
#include "shapxp/model/model_io.hpp"
#include "shapxp/scan.hpp"
#include "shapxp/shapley.hpp"

namespace shapxp::cli {

namespace {

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t");
    auto e = cell.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError(std::string("empty entry in ") + what + " '" + text + "'");
    cell = cell.substr(b, e - b + 1);
    int v = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size())
      throw UsageError(std::string("not an integer in ") + what + ": '" + cell + "'");
    values.push_back(v);
  }
  if (values.empty() || text.back() == ',') throw UsageError(std::string("malformed ") + what + " '" + text + "'");
  return values;
}

struct Options {
  std::string model;
  std::string instance;
  std::string method;
  std::string out;
  std::string summary;
  std::string family;
  std::string cert;
  std::string data;
  std::string to;
  std::string order;
  bool all = false;
  bool canonical = false;
  bool solve = false;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;
  int jobs = 1;
  std::int64_t scale = 1;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

std::shared_ptr<const Model> load(const Options& o) {
  return std::make_shared<const Model>(read_model_file(o.model));
}

ExplanationProblem problem_of(const Options& o) {
  auto model = load(o);
  return ExplanationProblem(model, parse_instance(o.instance, space_of(*model)));
}

Backend backend_of(const Options& o) {
  return o.method == "paths" ? Backend::PathCounting : Backend::Enumeration;
}

ExplainEngine engine_of(const Options& o) {
  return o.method == "brute" ? ExplainEngine::BruteForce : ExplainEngine::Duality;
}

int cmd_explain(const Options& o, std::ostream& out) {
  auto problem = problem_of(o);
  emit(dump_json(to_json(relevancy_report(problem, engine_of(o)))), o.out, out);
  return 0;
}

int cmd_shapley(const Options& o, std::ostream& out) {
  auto problem = problem_of(o);
  emit(dump_json(to_json(shapley_values(problem, {backend_of(o), o.jobs}))), o.out, out);
  return 0;
}

int cmd_adversarial(const Options& o, std::ostream& out) {
  auto problem = problem_of(o);
  auto sets = minimal_adversarial_sets(problem);
  emit(dump_json(to_json(sets, min_l0_distance(problem).distance)), o.out, out);
  return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
  auto model = load(o);
  const auto& space = space_of(*model);
  nlohmann::json doc{{"model", kind_name(*model)},
                     {"features", space.num_features()},
                     {"points", space.total_points()},
                     {"classes", class_values(*model)}};
  bool valid = true;
  if (!o.instance.empty()) {
    ExplanationProblem problem(model, parse_instance(o.instance, space));
    auto report = shapley_values(problem, {backend_of(o), o.jobs});
    Rational sum = 0;
    for (const auto& q : report.sv) sum += q;
    Rational residual = validate_efficiency(problem, report);
    valid = residual == 0;
    doc["instance"] = problem.instance();
    doc["sum_sv"] = rational_json(sum);
    doc["phi_empty"] = rational_json(report.phi_empty);
    doc["predicted"] = report.predicted;
    doc["residual"] = to_fraction_string(residual);
  }
  doc["valid"] = valid;
  emit(dump_json(doc), o.out, out);
  return valid ? 0 : 1;
}

int cmd_scan(const Options& o, std::ostream& out) {
  auto model = load(o);
  ScanOptions options;
  options.sample = o.sample;
  options.seed = o.seed;
  options.jobs = o.jobs;
  options.analysis.backend = backend_of(o);
  options.analysis.engine = engine_of(o);
  auto result = scan_model(model, options);
  emit(scan_csv(space_of(*model), result.records), o.out, out);
  if (!o.summary.empty()) emit(dump_json(to_json(result.summary)), o.summary, out);
  return 0;
}

int cmd_synth(const Options& o, std::ostream& out) {
  if (o.canonical == o.solve) throw UsageError("synth needs exactly one of --paper or --solve");
  SolveOptions options;
  options.strategy = o.canonical ? SolveStrategy::Canonical : SolveStrategy::Search;
  options.seed = o.seed;
  options.budget = o.budget;
  options.scale = o.scale;
  auto spec = solve_family(parse_family(o.family), options);
  auto inst = instantiate(spec);
  emit(dump_json(model_to_json(Model(inst.table))), o.out, out);
  if (o.cert.empty()) return 0;
  auto cert = certificate_json(spec);
  emit(dump_json(cert), o.cert, out);
  return cert["constraints_checked"].get<bool>() ? 0 : 1;
}

int cmd_build_omdd(const Options& o, std::ostream& out) {
  auto data = load_consistent_dataset(std::filesystem::path(o.data));
  Omdd dd = build_omdd_from_dataset(data);
  if (!o.order.empty()) dd = to_omdd(Model(dd), parse_order(o.order, data.space.num_features()));
  emit(dump_json(model_to_json(Model(dd))), o.out, out);
  return 0;
}

int cmd_convert(const Options& o, std::ostream& out) {
  auto model = load(o);
  const int m = space_of(*model).num_features();
  Model result = o.to == "table"
                     ? Model(to_tabular(*model))
                     : Model(to_omdd(*model, o.order.empty() ? identity_order(m) : parse_order(o.order, m)));
  emit(dump_json(model_to_json(result)), o.out, out);
  return 0;
}

} // namespace

Point parse_instance(const std::string& text, const FeatureSpace& space) {
  auto values = parse_int_list(text, "instance");
  if (static_cast<int>(values.size()) != space.num_features())
    throw UsageError("instance has " + std::to_string(values.size()) + " values, the model has " +
                     std::to_string(space.num_features()) + " features");
  for (int i = 0; i < space.num_features(); ++i) {
    int x = values[static_cast<std::size_t>(i)];
    if (x < 0 || x >= space.domain_size(i))
      throw UsageError("value " + std::to_string(x) + " of feature " + std::to_string(i + 1) + " is outside 0.." +
                       std::to_string(space.domain_size(i) - 1));
  }
  return values;
}

std::vector<int> parse_order(const std::string& text, int m) {
  auto values = parse_int_list(text, "order");
  std::vector<int> order;
  for (int v : values) order.push_back(v - 1);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != identity_order(m))
    throw UsageError("order must be a permutation of 1.." + std::to_string(m));
  return order;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Shapley values, formal explanations and adversarial examples for discrete classifiers",
               "shapxp"};
  app.require_subcommand(1, 1);
  Options o;

  auto model_flag = [&](CLI::App* c) { c->add_option("--model", o.model, "Model file (JSON)")->required(); };
  auto instance_flag = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--instance", o.instance, "Instance as comma-separated values, e.g. 1,0,0");
    if (required) opt->required();
  };
  auto method_flag = [&](CLI::App* c) {
    c->add_option("--method", o.method, "brute: exhaustive; paths: duality / path counting")
        ->check(CLI::IsMember({"brute", "paths"}));
  };
  auto out_flag = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file (default: standard output)"); };
  auto jobs_flag = [&](CLI::App* c) {
    c->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  };

  auto* explain = app.add_subcommand("explain", "AXps, CXps and feature relevancy");
  model_flag(explain);
  instance_flag(explain, true);
  method_flag(explain);
  out_flag(explain);

  auto* shapley = app.add_subcommand("shapley", "Exact Shapley values");
  model_flag(shapley);
  instance_flag(shapley, true);
  method_flag(shapley);
  jobs_flag(shapley);
  out_flag(shapley);

  auto* adversarial = app.add_subcommand("adversarial", "Minimal l0 adversarial examples");
  model_flag(adversarial);
  instance_flag(adversarial, true);
  out_flag(adversarial);

  auto* scan = app.add_subcommand("scan", "Issue scan over the feature space");
  model_flag(scan);
  auto* all = scan->add_flag("--all", o.all, "Every point of the feature space (default)");
  auto* sample = scan->add_option("--sample", o.sample, "Sample N points without replacement");
  all->excludes(sample);
  scan->add_option("--seed", o.seed, "Sampling seed");
  method_flag(scan);
  jobs_flag(scan);
  out_flag(scan);
  scan->add_option("--summary", o.summary, "Write the summary JSON here");

  auto* synth = app.add_subcommand("synth", "Instantiate a counterexample family");
  synth->add_option("--family", o.family, "a, b, c, c5 or d")->required();
  auto* canonical = synth->add_flag("--paper", o.canonical, "Reference parameter pick");
  auto* solve = synth->add_flag("--solve", o.solve, "Search for parameters");
  canonical->excludes(solve);
  synth->add_option("--budget", o.budget, "Search budget (candidates)");
  synth->add_option("--seed", o.seed, "Search start offset");
  synth->add_option("--scale", o.scale, "Multiply every parameter by this factor")->check(CLI::PositiveNumber);
  out_flag(synth);
  synth->add_option("--cert", o.cert, "Write the certificate JSON here");

  auto* validate = app.add_subcommand("validate", "Check a model file and the efficiency identity");
  model_flag(validate);
  instance_flag(validate, false);
  method_flag(validate);
  jobs_flag(validate);
  out_flag(validate);

  auto* build = app.add_subcommand("build-omdd", "Build a decision diagram from a CSV dataset");
  build->add_option("--data", o.data, "CSV with header; last column is the class")->required();
  build->add_option("--order", o.order, "Variable order, e.g. 3,1,2");
  out_flag(build);

  auto* convert = app.add_subcommand("convert", "Convert between model representations");
  model_flag(convert);
  convert->add_option("--to", o.to, "table or omdd")->required()->check(CLI::IsMember({"table", "omdd"}));
  convert->add_option("--order", o.order, "Variable order for omdd output");
  out_flag(convert);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*explain) return cmd_explain(o, out);
    if (*shapley) return cmd_shapley(o, out);
    if (*adversarial) return cmd_adversarial(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*synth) return cmd_synth(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*build) return cmd_build_omdd(o, out);
    if (*convert) return cmd_convert(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

} // namespace shapxp::cli
