#include "shapxp/explain.hpp"

#include <algorithm>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

std::vector<int> resolve_order(const ExplanationProblem& problem, const std::vector<int>& order) {
  const int m = problem.num_features();
  if (order.empty()) return identity_order(m);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != identity_order(m)) throw InputError("elimination order must be a permutation of the features");
  return order;
}

bool contains(const std::vector<FeatureSet>& sets, FeatureSet s) {
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

Explanations brute_force(const ExplanationProblem& problem) {
  const int m = problem.num_features();
  if (m > problem.limits().max_brute_force_features)
    throw CapacityError("brute-force explanation enumeration is capped at " +
                        std::to_string(problem.limits().max_brute_force_features) + " features");
  const std::uint64_t n = std::uint64_t{1} << m;
  const std::uint64_t full = n - 1;
  std::vector<bool> sufficient(n);
  for (std::uint64_t s = 0; s < n; ++s) sufficient[s] = is_sufficient(problem, FeatureSet(s));

  Explanations out;
  for (std::uint64_t s = 0; s < n; ++s) {
    const FeatureSet set(s);
    bool axp = sufficient[s];
    bool cxp = !sufficient[full & ~s];
    set.for_each([&](int t) {
      const std::uint64_t smaller = s & ~(std::uint64_t{1} << t);
      if (sufficient[smaller]) axp = false;
      if (!sufficient[full & ~smaller]) cxp = false;
    });
    if (axp) out.axps.push_back(set);
    if (cxp) out.cxps.push_back(set);
  }
  sort_lex(out.axps);
  sort_lex(out.cxps);
  return out;
}

Explanations duality(const ExplanationProblem& problem) {
  const FeatureSet all = problem.all_features();
  const Point& v = problem.instance();
  Explanations out;

  while (true) {
    // A minimal hitting set of the known CXps is either an AXp, or its
    // counterexample frees a CXp disjoint from it.
    bool progressed = false;
    for (FeatureSet h : minimal_hitting_sets(out.cxps)) {
      if (contains(out.axps, h)) continue;
      const auto witness = find_disagreement(problem.model(), h, v, problem.prediction(), problem.limits());
      if (!witness) {
        out.axps.push_back(h);
      } else {
        out.cxps.push_back(minimize_cxp(problem, difference_set(*witness, v)));
      }
      progressed = true;
      break;
    }
    if (progressed) continue;

    for (FeatureSet g : minimal_hitting_sets(out.axps)) {
      if (contains(out.cxps, g)) continue;
      if (is_counterfactual(problem, g)) {
        out.cxps.push_back(g);
      } else {
        out.axps.push_back(minimize_axp(problem, all.minus(g)));
      }
      progressed = true;
      break;
    }
    if (!progressed) break;
  }
  sort_lex(out.axps);
  sort_lex(out.cxps);
  return out;
}

} // namespace

bool is_sufficient(const ExplanationProblem& problem, FeatureSet fixed) {
  return !find_disagreement(problem.model(), fixed, problem.instance(), problem.prediction(),
                            problem.limits())
              .has_value();
}

bool is_counterfactual(const ExplanationProblem& problem, FeatureSet freed) {
  problem.space().check_features(freed);
  return !is_sufficient(problem, problem.all_features().minus(freed));
}

FeatureSet minimize_axp(const ExplanationProblem& problem, FeatureSet start,
                        const std::vector<int>& elimination_order) {
  if (!is_sufficient(problem, start)) throw InvariantError("cannot minimize an insufficient set to an AXp");
  FeatureSet x = start;
  for (int f : resolve_order(problem, elimination_order))
    if (x.contains(f) && is_sufficient(problem, x.without(f))) x.erase(f);
  return x;
}

FeatureSet minimize_cxp(const ExplanationProblem& problem, FeatureSet start,
                        const std::vector<int>& elimination_order) {
  if (!is_counterfactual(problem, start))
    throw InvariantError("cannot minimize a non-counterfactual set to a CXp");
  FeatureSet y = start;
  for (int f : resolve_order(problem, elimination_order))
    if (y.contains(f) && is_counterfactual(problem, y.without(f))) y.erase(f);
  return y;
}

FeatureSet one_axp(const ExplanationProblem& problem, const std::vector<int>& elimination_order) {
  return minimize_axp(problem, problem.all_features(), elimination_order);
}

FeatureSet one_cxp(const ExplanationProblem& problem, const std::vector<int>& elimination_order) {
  return minimize_cxp(problem, problem.all_features(), elimination_order);
}

Explanations enumerate_explanations(const ExplanationProblem& problem, ExplainEngine engine) {
  return engine == ExplainEngine::BruteForce ? brute_force(problem) : duality(problem);
}

RelevancyReport relevancy_report(const ExplanationProblem& problem, const Explanations& xps) {
  RelevancyReport r;
  r.axps = xps.axps;
  r.cxps = xps.cxps;
  r.necessary = xps.axps.empty() ? FeatureSet{} : problem.all_features();
  for (FeatureSet x : xps.axps) {
    r.relevant = r.relevant | x;
    r.necessary = r.necessary & x;
  }
  r.irrelevant = problem.all_features().minus(r.relevant);
  return r;
}

RelevancyReport relevancy_report(const ExplanationProblem& problem, ExplainEngine engine) {
  return relevancy_report(problem, enumerate_explanations(problem, engine));
}

std::string axp_rule(const ExplanationProblem& problem, FeatureSet axp) {
  problem.space().check_features(axp);
  std::string out = "IF ";
  if (axp.empty()) out += "TRUE";
  bool first = true;
  axp.for_each([&](int f) {
    if (!first) out += " AND ";
    out += problem.space().name(f) + "=" + std::to_string(problem.instance()[static_cast<std::size_t>(f)]);
    first = false;
  });
  return out + " THEN class=" + std::to_string(problem.prediction());
}

nlohmann::json to_json(const RelevancyReport& report) {
  auto sets = [](const std::vector<FeatureSet>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (FeatureSet s : v) a.push_back(s.one_based());
    return a;
  };
  return {{"axps", sets(report.axps)},
          {"cxps", sets(report.cxps)},
          {"relevant", report.relevant.one_based()},
          {"necessary", report.necessary.one_based()},
          {"irrelevant", report.irrelevant.one_based()}};
}

} // namespace shapxp
