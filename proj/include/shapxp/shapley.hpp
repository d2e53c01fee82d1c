#pragma once

#include <vector>

#include <json.hpp>

#include "shapxp/model/model.hpp"
#include "shapxp/rational.hpp"

namespace shapxp {

/// Average of the classifier over the points agreeing with v on `fixed`,
/// under the uniform distribution.
Rational phi(const ExplanationProblem& problem, FeatureSet fixed, Backend backend = Backend::Enumeration);

/// |S|! (m - |S| - 1)! / m!
Rational coalition_weight(int num_features, int coalition_size);

struct ShapleyOptions {
  Backend backend = Backend::Enumeration;
  int jobs = 1;
};

struct SvReport {
  std::vector<Rational> sv;  // indexed by 0-based feature
  Rational phi_empty;
  ClassValue predicted = 0;
  Rational residual;  // sum(sv) + phi_empty - predicted; always 0
};

/// Exact Shapley values of every feature. Throws CapacityError above
/// limits.max_coalition_features.
SvReport shapley_values(const ExplanationProblem& problem, const ShapleyOptions& options = {});

/// sum(sv) + phi(empty) - prediction, recomputed from the report's values.
Rational validate_efficiency(const ExplanationProblem& problem, const SvReport& report);

/// {"num": -7, "den": 24, "value": "-7/24", "decimal": "-0.2917"}
nlohmann::json rational_json(const Rational& q);

/// {"sv":[{"feature":1,...}],"phi_empty":{...},"predicted":c,"residual":"0"}
nlohmann::json to_json(const SvReport& report);

} // namespace shapxp
