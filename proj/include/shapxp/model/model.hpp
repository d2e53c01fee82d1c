#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shapxp/model/decision_tree.hpp"
#include "shapxp/model/omdd.hpp"
#include "shapxp/model/space.hpp"
#include "shapxp/model/tabular.hpp"
#include "shapxp/rational.hpp"

namespace shapxp {

using Model = std::variant<TabularClassifier, DecisionTree, Omdd>;

enum class Backend {
  Enumeration,   // visit every point of the cube
  PathCounting,  // count along DT paths / OMDD edges; tables fall back to enumeration
};

const FeatureSpace& space_of(const Model& model);
std::string kind_name(const Model& model);

ClassValue evaluate(const Model& model, const Point& x);
std::vector<ClassValue> class_values(const Model& model);

std::uint64_t cube_size(const FeatureSpace& space, FeatureSet fixed);

/// Sum of model(x) over all x agreeing with v on `fixed`. Enumeration throws
/// CapacityError when the cube exceeds limits.max_enumerated_points.
Integer sum_kappa_over_cube(const Model& model, FeatureSet fixed, const Point& v,
                            Backend backend = Backend::Enumeration, const Limits& limits = {});

/// A point agreeing with v on `fixed` whose class differs from c, if any.
/// Tables enumerate the cube; trees and diagrams search paths.
std::optional<Point> find_disagreement(const Model& model, FeatureSet fixed, const Point& v,
                                       ClassValue c, const Limits& limits = {});

TabularClassifier to_tabular(const Model& model, const Limits& limits = {});
Omdd tabular_to_omdd(const TabularClassifier& table, const std::vector<int>& order);
Omdd to_omdd(const Model& model, const std::vector<int>& order, const Limits& limits = {});

std::vector<int> identity_order(int m);

/// A classifier paired with an instance (v, c), c = model(v).
class ExplanationProblem {
public:
  ExplanationProblem(std::shared_ptr<const Model> model, Point v, Limits limits = {});
  /// Throws InvariantError unless c == model(v).
  ExplanationProblem(std::shared_ptr<const Model> model, Point v, ClassValue c, Limits limits = {});

  const Model& model() const { return *model_; }
  const std::shared_ptr<const Model>& model_ptr() const { return model_; }
  const FeatureSpace& space() const { return space_of(*model_); }
  int num_features() const { return space().num_features(); }
  FeatureSet all_features() const { return space().all_features(); }
  const Point& instance() const { return v_; }
  ClassValue prediction() const { return c_; }
  const Limits& limits() const { return limits_; }

private:
  std::shared_ptr<const Model> model_;
  Point v_;
  ClassValue c_ = 0;
  Limits limits_;
};

} // namespace shapxp
