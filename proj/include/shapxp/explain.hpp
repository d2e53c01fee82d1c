#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "shapxp/model/model.hpp"

namespace shapxp {

/// WAXp: every point agreeing with v on `fixed` is classified c.
bool is_sufficient(const ExplanationProblem& problem, FeatureSet fixed);

/// WCXp: some point agreeing with v outside `freed` is classified other than c.
bool is_counterfactual(const ExplanationProblem& problem, FeatureSet freed);

/// Deletion-based minimization from F: drops features in `elimination_order`
/// (0-based, default ascending) whenever sufficiency survives.
FeatureSet one_axp(const ExplanationProblem& problem, const std::vector<int>& elimination_order = {});

/// Dual of one_axp over is_counterfactual.
FeatureSet one_cxp(const ExplanationProblem& problem, const std::vector<int>& elimination_order = {});

/// Shrinks a sufficient set to an AXp / a counterfactual set to a CXp.
FeatureSet minimize_axp(const ExplanationProblem& problem, FeatureSet start,
                        const std::vector<int>& elimination_order = {});
FeatureSet minimize_cxp(const ExplanationProblem& problem, FeatureSet start,
                        const std::vector<int>& elimination_order = {});

struct Explanations {
  std::vector<FeatureSet> axps;  // lexicographically sorted
  std::vector<FeatureSet> cxps;  // lexicographically sorted

  bool operator==(const Explanations&) const = default;
};

enum class ExplainEngine {
  BruteForce,  // every subset of F, minimality by single deletions
  Duality,     // hitting-set duality loop
};

Explanations enumerate_explanations(const ExplanationProblem& problem,
                                    ExplainEngine engine = ExplainEngine::Duality);

/// All minimal hitting sets of `family`, sorted lexicographically. An empty
/// family yields {{}}; a family holding the empty set yields {}.
std::vector<FeatureSet> minimal_hitting_sets(const std::vector<FeatureSet>& family);

struct RelevancyReport {
  std::vector<FeatureSet> axps;
  std::vector<FeatureSet> cxps;
  FeatureSet relevant;
  FeatureSet necessary;
  FeatureSet irrelevant;
};

RelevancyReport relevancy_report(const ExplanationProblem& problem,
                                 ExplainEngine engine = ExplainEngine::Duality);
RelevancyReport relevancy_report(const ExplanationProblem& problem, const Explanations& xps);

/// "IF x1=1 AND x3=0 THEN class=2"
std::string axp_rule(const ExplanationProblem& problem, FeatureSet axp);

/// {"axps":[[1]],"cxps":[[1]],"relevant":[1],"necessary":[1],"irrelevant":[2,3]}
nlohmann::json to_json(const RelevancyReport& report);

} // namespace shapxp
