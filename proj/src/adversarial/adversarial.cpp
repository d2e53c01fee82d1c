#include "shapxp/adversarial.hpp"

#include <algorithm>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

/// Visits, in lexicographic order, every point that differs from v on
/// exactly `changed`. fn returns false to stop.
template <typename Fn>
void for_each_exact_change(const FeatureSpace& space, const Point& v, FeatureSet changed, Fn&& fn) {
  const std::vector<int> features = changed.indices();
  Point x = v;
  auto first_allowed = [&](int f, int from) {
    int value = from;
    if (value == v[static_cast<std::size_t>(f)]) ++value;
    return value;
  };
  for (int f : features) x[static_cast<std::size_t>(f)] = first_allowed(f, 0);
  while (true) {
    if (!fn(static_cast<const Point&>(x))) return;
    int k = static_cast<int>(features.size()) - 1;
    for (; k >= 0; --k) {
      const int f = features[static_cast<std::size_t>(k)];
      auto& cell = x[static_cast<std::size_t>(f)];
      cell = first_allowed(f, cell + 1);
      if (cell < space.domain_size(f)) break;
      cell = first_allowed(f, 0);
    }
    if (k < 0) return;
  }
}

std::uint64_t exact_change_count(const FeatureSpace& space, FeatureSet changed) {
  std::uint64_t n = 1;
  changed.for_each([&](int f) { n *= static_cast<std::uint64_t>(space.domain_size(f) - 1); });
  return n;
}

} // namespace

std::optional<AdversarialSet> find_witness(const ExplanationProblem& problem, FeatureSet changed) {
  const FeatureSpace& space = problem.space();
  space.check_features(changed);
  if (changed.empty()) return std::nullopt;
  if (exact_change_count(space, changed) > problem.limits().max_enumerated_points)
    throw CapacityError("too many candidate points for change-set " + to_string(changed));
  std::optional<AdversarialSet> hit;
  for_each_exact_change(space, problem.instance(), changed, [&](const Point& x) {
    const ClassValue cls = evaluate(problem.model(), x);
    if (cls != problem.prediction()) {
      hit = AdversarialSet{changed, x, cls};
      return false;
    }
    return true;
  });
  return hit;
}

std::vector<AdversarialSet> minimal_adversarial_sets(const ExplanationProblem& problem) {
  const int m = problem.num_features();
  if (m > problem.limits().max_brute_force_features)
    throw CapacityError("adversarial change-set enumeration is capped at " +
                        std::to_string(problem.limits().max_brute_force_features) + " features");
  // By increasing size: a set is minimal iff it has a witness and no smaller
  // minimal set sits inside it.
  std::vector<std::uint64_t> masks(std::uint64_t{1} << m);
  for (std::uint64_t s = 0; s < masks.size(); ++s) masks[s] = s;
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });

  std::vector<AdversarialSet> minimal;
  for (std::uint64_t s : masks) {
    const FeatureSet set(s);
    if (std::any_of(minimal.begin(), minimal.end(),
                    [&](const AdversarialSet& a) { return a.changed.subset_of(set); }))
      continue;
    if (auto found = find_witness(problem, set)) minimal.push_back(std::move(*found));
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const AdversarialSet& a, const AdversarialSet& b) { return lex_less(a.changed, b.changed); });
  return minimal;
}

MinL0Result min_l0_distance(const ExplanationProblem& problem) {
  const auto minimal = minimal_adversarial_sets(problem);
  MinL0Result result;
  if (minimal.empty()) {
    result.distance = -1;
    return result;
  }
  int best = problem.num_features();
  for (const auto& a : minimal) best = std::min(best, a.changed.size());
  result.distance = best;
  // Every change-set of the smallest size is minimal, so all witnesses at
  // distance `best` come from these sets.
  for (const auto& a : minimal) {
    if (a.changed.size() != best) continue;
    for_each_exact_change(problem.space(), problem.instance(), a.changed, [&](const Point& x) {
      const ClassValue cls = evaluate(problem.model(), x);
      if (cls != problem.prediction()) result.witnesses.push_back(AdversarialSet{a.changed, x, cls});
      return true;
    });
  }
  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const AdversarialSet& a, const AdversarialSet& b) { return a.witness < b.witness; });
  return result;
}

FeatureSet ae_feature_set(const ExplanationProblem& problem) {
  FeatureSet out;
  for (const auto& a : minimal_adversarial_sets(problem)) out = out | a.changed;
  return out;
}

nlohmann::json to_json(const std::vector<AdversarialSet>& minimal_sets, int min_l0) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& a : minimal_sets)
    sets.push_back({{"changed", a.changed.one_based()}, {"witness", a.witness}, {"class", a.witness_class}});
  return {{"min_l0", min_l0}, {"minimal_sets", std::move(sets)}};
}

} // namespace shapxp
