#include "shapxp/families.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>

#include "shapxp/errors.hpp"
#include "shapxp/explain.hpp"
#include "shapxp/shapley.hpp"

namespace shapxp {

namespace {

struct FamilyShape {
  std::vector<int> domains;
  Point instance;
  int sigmas;
};

const FamilyShape& shape(Family family) {
  static const FamilyShape a{{2, 2}, {1, 1}, 2};
  static const FamilyShape b{{2, 2, 2}, {1, 1, 1}, 4};
  static const FamilyShape c{{2, 3, 3}, {1, 2, 2}, 9};
  static const FamilyShape c5{{2, 2, 3}, {1, 1, 2}, 6};
  static const FamilyShape d{{2, 2, 2, 3}, {1, 1, 1, 2}, 4};
  switch (family) {
  case Family::A: return a;
  case Family::B: return b;
  case Family::C: return c;
  case Family::C5: return c5;
  case Family::D: return d;
  }
  throw InputError("unknown family");
}

std::vector<Rational> row(std::int64_t den, std::initializer_list<std::int64_t> nums) {
  std::vector<Rational> out;
  bool first = true;
  for (auto n : nums) {
    out.push_back(first ? make_rational(n, 2) : make_rational(n, den));
    first = false;
  }
  return out;
}

SymbolicSv build_form(Family family) {
  SymbolicSv f;
  auto& k = f.coefficients;
  switch (family) {
  case Family::A:
    k.push_back({make_rational(1, 2), make_rational(-3, 8), make_rational(-1, 8)});
    k.push_back({Rational(0), make_rational(1, 8), make_rational(-1, 8)});
    break;
  case Family::B:
    k.push_back(row(24, {1, -1, -2, -2, -7}));
    k.push_back(row(24, {0, -1, -2, 1, 2}));
    k.push_back(row(24, {0, -1, 1, -2, 2}));
    break;
  case Family::C:
    k.push_back(row(108, {1, -2, -2, -5, -2, -2, -5, -5, -5, -26}));
    k.push_back(row(108, {0, -2, -2, -5, -2, -2, -5, 4, 4, 10}));
    k.push_back(row(108, {0, -2, -2, 4, -2, -2, 4, -5, -5, 10}));
    break;
  case Family::C5:
    k.push_back(row(72, {1, -2, -2, -5, -4, -4, -19}));
    k.push_back(row(72, {0, -2, -2, -5, 2, 2, 5}));
    k.push_back(row(72, {0, -2, -2, 4, -4, -4, 8}));
    break;
  case Family::D:
    k.push_back(row(288, {1, -3, -5, -5, -11}));
    k.push_back(row(288, {0, -3, -5, 3, 5}));
    k.push_back(row(288, {0, -3, 3, -5, 5}));
    k.push_back(row(288, {0, -3, -5, -5, -11}));
    break;
  }
  return f;
}

void check_arity(Family family, std::size_t n) {
  if (static_cast<int>(n) != sigma_count(family))
    throw InputError("family " + family_name(family) + " takes " + std::to_string(sigma_count(family)) +
                     " sigma parameters, got " + std::to_string(n));
}

FamilySpec canonical_pick(Family family) {
  switch (family) {
  case Family::A: return {Family::A, 3, {4, 0}, 1};
  case Family::B: return {Family::B, 1, {0, 3, 3, 0}, 1};
  case Family::C: return {Family::C, 1, {0, 2, 0, 0, 5, 0, 0, 8, 0}, 1};
  case Family::C5: return {Family::C5, 1, {2, 0, 0, 4, 4, 0}, 1};
  case Family::D: return {Family::D, 1, {5, 2, 4, 9}, 1};
  }
  throw InputError("unknown family");
}

FamilySpec scaled(FamilySpec spec, std::int64_t psi) {
  if (psi < 1) throw InputError("scale must be >= 1");
  spec.alpha *= psi;
  for (auto& s : spec.sigma) s *= psi;
  spec.scale *= psi;
  return spec;
}

// alpha solving Sv(1) = 0, if integral
std::optional<std::int64_t> solve_alpha(Family family, const std::vector<std::int64_t>& sigma) {
  const auto& c = symbolic_form(family).coefficients[0];
  Rational rest = 0;
  for (std::size_t j = 0; j < sigma.size(); ++j) rest += c[j + 1] * static_cast<long>(sigma[j]);
  Rational alpha = -rest / c[0];
  if (alpha.get_den() != 1 || !alpha.get_num().fits_slong_p()) return std::nullopt;
  return alpha.get_num().get_si();
}

bool collides(const FamilySpec& spec) {
  if (spec.family == Family::D && spec.alpha == 0) return true;
  return std::find(spec.sigma.begin(), spec.sigma.end(), spec.alpha) != spec.sigma.end();
}

} // namespace

std::string family_name(Family family) {
  switch (family) {
  case Family::A: return "a";
  case Family::B: return "b";
  case Family::C: return "c";
  case Family::C5: return "c5";
  case Family::D: return "d";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  std::string s;
  for (char ch : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "a") return Family::A;
  if (s == "b") return Family::B;
  if (s == "c") return Family::C;
  if (s == "c5") return Family::C5;
  if (s == "d") return Family::D;
  throw InputError("unknown family '" + name + "' (expected a, b, c, c5 or d)");
}

int sigma_count(Family family) { return shape(family).sigmas; }
Point family_instance(Family family) { return shape(family).instance; }

void validate(const FamilySpec& spec) {
  check_arity(spec.family, spec.sigma.size());
  if (spec.scale < 1) throw InputError("scale must be >= 1");
  if (collides(spec))
    throw InputError("alpha must differ from every other class value of family " + family_name(spec.family));
}

const SymbolicSv& symbolic_form(Family family) {
  static const SymbolicSv forms[] = {build_form(Family::A), build_form(Family::B), build_form(Family::C),
                                     build_form(Family::C5), build_form(Family::D)};
  return forms[static_cast<int>(family)];
}

std::vector<Rational> symbolic_sv(Family family, std::int64_t alpha, const std::vector<std::int64_t>& sigma) {
  check_arity(family, sigma.size());
  std::vector<Rational> out;
  for (const auto& c : symbolic_form(family).coefficients) {
    Rational s = c[0] * static_cast<long>(alpha);
    for (std::size_t j = 0; j < sigma.size(); ++j) s += c[j + 1] * static_cast<long>(sigma[j]);
    out.push_back(s);
  }
  return out;
}

std::vector<Rational> symbolic_sv(const FamilySpec& spec) { return symbolic_sv(spec.family, spec.alpha, spec.sigma); }

FamilyInstance instantiate(const FamilySpec& spec) {
  validate(spec);
  const auto& sh = shape(spec.family);
  FeatureSpace space(sh.domains);
  std::uint64_t half = space.total_points() / 2;
  std::vector<ClassValue> values(space.total_points(), spec.alpha);
  for (std::uint64_t k = 0; k < half; ++k) {
    if (spec.family == Family::A) {
      values[k] = k == 0 ? spec.sigma[1] : spec.sigma[0];
    } else if (spec.family == Family::D) {
      values[k] = k % 3 == 1 ? spec.sigma[k / 3] : 0;
    } else {
      values[k] = spec.sigma[k];
    }
  }
  TabularClassifier table(space, std::move(values));
  ClassValue c = table.evaluate(sh.instance);
  return {std::move(table), sh.instance, c};
}

bool misleading(const std::vector<Rational>& sv) {
  if (sv.empty() || sv[0] != 0) return false;
  return std::all_of(sv.begin() + 1, sv.end(), [](const Rational& q) { return q != 0; });
}

FamilySpec solve_family(Family family, const SolveOptions& options) {
  if (options.strategy == SolveStrategy::Canonical) return scaled(canonical_pick(family), options.scale);
  if (options.grid_max < 0) throw InputError("grid_max must be >= 0");

  int n = sigma_count(family);
  std::uint64_t base = static_cast<std::uint64_t>(options.grid_max) + 1;
  std::uint64_t total = 1;
  bool saturated = false;
  for (int j = 0; j < n; ++j) {
    if (total > UINT64_MAX / base) {
      saturated = true;
      break;
    }
    total *= base;
  }
  std::uint64_t tries = saturated ? options.budget : std::min<std::uint64_t>(options.budget, total);
  std::uint64_t start = saturated ? options.seed : options.seed % total;

  std::vector<std::int64_t> sigma(n);
  for (std::uint64_t t = 0; t < tries; ++t) {
    std::uint64_t rank = start + t;
    if (!saturated) rank %= total;
    for (int j = n - 1; j >= 0; --j) {
      sigma[j] = static_cast<std::int64_t>(rank % base);
      rank /= base;
    }
    auto alpha = solve_alpha(family, sigma);
    if (!alpha) continue;
    FamilySpec spec{family, *alpha, sigma, 1};
    if (collides(spec)) continue;
    if (!misleading(symbolic_sv(spec))) continue;
    return scaled(spec, options.scale);
  }
  throw NoSolutionError("no parameters found for family " + family_name(family) + " within budget " +
                        std::to_string(options.budget));
}

nlohmann::json certificate_json(const FamilySpec& spec) {
  auto inst = instantiate(spec);
  auto model = std::make_shared<const Model>(inst.table);
  ExplanationProblem problem(model, inst.instance);
  auto sv = shapley_values(problem);
  auto rel = relevancy_report(problem);

  bool ok = sv.residual == 0 && misleading(sv.sv) && sv.sv == symbolic_sv(spec) &&
            rel.relevant == FeatureSet::of({0}) && rel.axps.size() == 1;

  nlohmann::json params;
  params["alpha"] = spec.alpha;
  if (spec.family == Family::A) {
    params["beta"] = spec.sigma[0];
    params["gamma"] = spec.sigma[1];
    params["delta"] = spec.alpha;
  } else {
    params["sigma"] = spec.sigma;
  }
  params["scale"] = spec.scale;

  nlohmann::json svs = nlohmann::json::array();
  for (std::size_t i = 0; i < sv.sv.size(); ++i) {
    auto q = rational_json(sv.sv[i]);
    q["feature"] = i + 1;
    svs.push_back(q);
  }
  nlohmann::json axps = nlohmann::json::array();
  for (auto s : rel.axps) axps.push_back(s.one_based());

  return {{"family", family_name(spec.family)}, {"params", params},   {"instance", inst.instance},
          {"class", inst.prediction},           {"sv", svs},          {"axps", axps},
          {"constraints_checked", ok}};
}

} // namespace shapxp
