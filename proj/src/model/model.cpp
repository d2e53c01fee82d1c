#include "shapxp/model/model.hpp"

#include <numeric>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_enumerable(std::uint64_t points, const Limits& limits, const char* what) {
  if (points > limits.max_enumerated_points)
    throw CapacityError(std::string(what) + " has " + std::to_string(points) +
                        " points, above the enumeration cap of " +
                        std::to_string(limits.max_enumerated_points));
}

} // namespace

const FeatureSpace& space_of(const Model& model) {
  return std::visit([](const auto& m) -> const FeatureSpace& { return m.space(); }, model);
}

std::string kind_name(const Model& model) {
  return std::visit(overloaded{
                        [](const TabularClassifier&) { return std::string("table"); },
                        [](const DecisionTree&) { return std::string("dt"); },
                        [](const Omdd&) { return std::string("omdd"); },
                    },
                    model);
}

ClassValue evaluate(const Model& model, const Point& x) {
  return std::visit([&](const auto& m) { return m.evaluate(x); }, model);
}

std::vector<ClassValue> class_values(const Model& model) {
  return std::visit([](const auto& m) { return m.class_values(); }, model);
}

std::uint64_t cube_size(const FeatureSpace& space, FeatureSet fixed) {
  space.check_features(fixed);
  return space.cube_size(fixed);
}

Integer sum_kappa_over_cube(const Model& model, FeatureSet fixed, const Point& v, Backend backend,
                            const Limits& limits) {
  const FeatureSpace& space = space_of(model);
  space.check_features(fixed);
  space.check_point(v);

  if (backend == Backend::PathCounting) {
    if (const auto* dt = std::get_if<DecisionTree>(&model)) return dt->path_sum(fixed, v);
    if (const auto* dd = std::get_if<Omdd>(&model)) return dd->path_sum(fixed, v);
  }

  check_enumerable(space.cube_size(fixed), limits, "cube");
  Integer total = 0;
  if (const auto* table = std::get_if<TabularClassifier>(&model)) {
    for_each_in_cube(space, fixed, v, [&](const Point& x) {
      total += Integer(static_cast<long>(table->at_index(space.index_of(x))));
      return true;
    });
    return total;
  }
  for_each_in_cube(space, fixed, v, [&](const Point& x) {
    total += Integer(static_cast<long>(evaluate(model, x)));
    return true;
  });
  return total;
}

std::optional<Point> find_disagreement(const Model& model, FeatureSet fixed, const Point& v,
                                       ClassValue c, const Limits& limits) {
  const FeatureSpace& space = space_of(model);
  space.check_features(fixed);
  space.check_point(v);
  if (std::holds_alternative<TabularClassifier>(model))
    check_enumerable(space.cube_size(fixed), limits, "cube");
  return std::visit([&](const auto& m) { return m.find_disagreement(fixed, v, c); }, model);
}

TabularClassifier to_tabular(const Model& model, const Limits& limits) {
  if (const auto* table = std::get_if<TabularClassifier>(&model)) return *table;
  const FeatureSpace& space = space_of(model);
  check_enumerable(space.total_points(), limits, "feature space");
  std::vector<ClassValue> values(space.total_points());
  for (std::uint64_t k = 0; k < values.size(); ++k) values[k] = evaluate(model, space.point_at(k));
  return TabularClassifier(space, std::move(values));
}

Omdd tabular_to_omdd(const TabularClassifier& table, const std::vector<int>& order) {
  const FeatureSpace& space = table.space();
  return build_omdd(space, order,
                    [&](const Point& x) { return table.at_index(space.index_of(x)); });
}

Omdd to_omdd(const Model& model, const std::vector<int>& order, const Limits& limits) {
  if (const auto* dd = std::get_if<Omdd>(&model); dd && dd->order() == order) return reduce(*dd);
  return tabular_to_omdd(to_tabular(model, limits), order);
}

std::vector<int> identity_order(int m) {
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

ExplanationProblem::ExplanationProblem(std::shared_ptr<const Model> model, Point v, Limits limits)
    : model_(std::move(model)), v_(std::move(v)), limits_(limits) {
  if (!model_) throw InputError("explanation problem without a model");
  c_ = shapxp::evaluate(*model_, v_);
}

ExplanationProblem::ExplanationProblem(std::shared_ptr<const Model> model, Point v, ClassValue c,
                                       Limits limits)
    : ExplanationProblem(std::move(model), std::move(v), limits) {
  if (c != c_)
    throw InvariantError("instance class " + std::to_string(c) + " differs from the prediction " +
                         std::to_string(c_));
}

} // namespace shapxp
