#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "shapxp/model/model.hpp"

namespace shapxp {

/// A change-set A with a witness x: x differs from v exactly on A and
/// model(x) != c. |A| is the Hamming distance between x and v.
struct AdversarialSet {
  FeatureSet changed;
  Point witness;
  ClassValue witness_class = 0;

  bool operator==(const AdversarialSet&) const = default;
};

/// Lexicographically smallest point that changes exactly the features in
/// `changed` and flips the prediction, if one exists.
std::optional<AdversarialSet> find_witness(const ExplanationProblem& problem, FeatureSet changed);

/// Every subset-minimal adversarial change-set, sorted lexicographically,
/// each with its smallest witness.
std::vector<AdversarialSet> minimal_adversarial_sets(const ExplanationProblem& problem);

struct MinL0Result {
  int distance = 0;                 // -1 when no adversarial example exists
  std::vector<AdversarialSet> witnesses;  // every point at that distance, lexicographic
};

MinL0Result min_l0_distance(const ExplanationProblem& problem);

/// Union of all subset-minimal adversarial change-sets.
FeatureSet ae_feature_set(const ExplanationProblem& problem);

/// {"min_l0":k,"minimal_sets":[{"changed":[..],"witness":[..],"class":c}]}
nlohmann::json to_json(const std::vector<AdversarialSet>& minimal_sets, int min_l0);

} // namespace shapxp
