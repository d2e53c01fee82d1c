#include "shapxp/scan.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::string join_features(FeatureSet s) {
  std::string out;
  for (int f : s.one_based()) {
    if (!out.empty()) out += ';';
    out += std::to_string(f);
  }
  return out;
}

} // namespace

Rational ScanSummary::fraction() const {
  if (total == 0) return 0;
  Rational q(Integer(static_cast<unsigned long>(issues)), Integer(static_cast<unsigned long>(total)));
  q.canonicalize();
  return q;
}

ScanRecord analyze_instance(const ExplanationProblem& problem, const AnalysisOptions& options) {
  ScanRecord rec;
  rec.index = problem.space().index_of(problem.instance());
  rec.instance = problem.instance();
  rec.prediction = problem.prediction();
  rec.sv = shapley_values(problem, {options.backend, 1}).sv;
  auto rel = relevancy_report(problem, options.engine);
  rec.relevant = rel.relevant;
  rec.irrelevant = rel.irrelevant;

  for (int i : rec.irrelevant.indices()) {
    Rational a = abs(rec.sv[static_cast<std::size_t>(i)]);
    if (!rec.v_i || a > *rec.v_i) rec.v_i = a;
  }
  for (int j : rec.relevant.indices()) {
    Rational a = abs(rec.sv[static_cast<std::size_t>(j)]);
    if (!rec.v_j || a < *rec.v_j) rec.v_j = a;
  }
  rec.issue = rec.v_i && rec.v_j && *rec.v_i > *rec.v_j;
  return rec;
}

std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (n >= total) {
    out.resize(total);
    for (std::uint64_t k = 0; k < total; ++k) out[k] = k;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - n; j < total; ++j) {
    std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

ScanResult scan_model(std::shared_ptr<const Model> model, const ScanOptions& options) {
  const auto& space = space_of(*model);
  const std::uint64_t total = space.total_points();
  std::uint64_t n = options.sample ? *options.sample : total;
  if (!options.sample && total > options.limits.max_enumerated_points)
    throw CapacityError("feature space has " + std::to_string(total) + " points; use a sample");
  auto indices = sample_indices(total, n, options.seed);

  ScanResult result;
  result.records.resize(indices.size());
  auto work = [&](std::size_t k) {
    ExplanationProblem problem(model, space.point_at(indices[k]), options.limits);
    result.records[k] = analyze_instance(problem, options.analysis);
  };

  const std::size_t jobs = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), 1,
                                                   std::max<std::size_t>(indices.size(), 1));
  if (jobs == 1) {
    for (std::size_t k = 0; k < indices.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < indices.size(); k = next++) work(k);
        } catch (...) {
          errors[w] = std::current_exception();
          next = indices.size();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  result.summary = summarize(result.records);
  return result;
}

ScanSummary summarize(const std::vector<ScanRecord>& records) {
  ScanSummary s;
  s.total = records.size();
  for (const auto& r : records) {
    if (r.issue) ++s.issues;
    bool zero = false;
    for (int j : r.relevant.indices())
      if (r.sv[static_cast<std::size_t>(j)] == 0) zero = true;
    if (zero) ++s.zero_sv_relevant;
  }
  return s;
}

void write_scan_csv(std::ostream& out, const FeatureSpace& space, const std::vector<ScanRecord>& records) {
  const int m = space.num_features();
  out << "instance_index";
  for (int i = 1; i <= m; ++i) out << ",x" << i;
  out << ",class";
  for (int i = 1; i <= m; ++i) out << ",sv_" << i;
  out << ",relevant,issue,v_i,v_j\n";
  for (const auto& r : records) {
    out << r.index;
    for (int x : r.instance) out << ',' << x;
    out << ',' << r.prediction;
    for (const auto& q : r.sv) out << ',' << to_decimal_string(q);
    out << ',' << join_features(r.relevant) << ',' << (r.issue ? 1 : 0) << ','
        << (r.v_i ? to_decimal_string(*r.v_i) : "") << ',' << (r.v_j ? to_decimal_string(*r.v_j) : "") << '\n';
  }
}

std::string scan_csv(const FeatureSpace& space, const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  write_scan_csv(out, space, records);
  return out.str();
}

nlohmann::json to_json(const ScanSummary& summary) {
  return {{"total", summary.total},
          {"issues", summary.issues},
          {"fraction", rational_json(summary.fraction())},
          {"zero_sv_relevant", summary.zero_sv_relevant}};
}

} // namespace shapxp
