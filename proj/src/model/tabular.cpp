#include "shapxp/model/tabular.hpp"

#include <algorithm>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

void require_non_constant(const std::vector<ClassValue>& values) {
  if (values.empty() ||
      std::all_of(values.begin(), values.end(), [&](ClassValue v) { return v == values.front(); }))
    throw InvariantError("classifier is constant: at least two distinct classes are required");
}

} // namespace

TabularClassifier::TabularClassifier(FeatureSpace space, std::vector<ClassValue> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.total_points())
    throw InvariantError("table has " + std::to_string(values_.size()) + " rows but the space has " +
                         std::to_string(space_.total_points()) + " points");
  require_non_constant(values_);
}

TabularClassifier TabularClassifier::from_rows(FeatureSpace space, const std::vector<Row>& rows) {
  const std::uint64_t total = space.total_points();
  if (rows.size() != total)
    throw InvariantError("table is incomplete: " + std::to_string(rows.size()) + " rows for " +
                         std::to_string(total) + " points");
  std::vector<ClassValue> values(total);
  std::vector<bool> seen(total, false);
  for (const auto& [point, cls] : rows) {
    space.check_point(point);
    const auto idx = space.index_of(point);
    if (seen[idx]) throw InvariantError("duplicate row for point " + to_string(point));
    seen[idx] = true;
    values[idx] = cls;
  }
  return TabularClassifier(std::move(space), std::move(values));
}

ClassValue TabularClassifier::evaluate(const Point& x) const {
  space_.check_point(x);
  return values_[space_.index_of(x)];
}

std::vector<TabularClassifier::Row> TabularClassifier::rows() const {
  std::vector<Row> out;
  out.reserve(values_.size());
  for (std::uint64_t k = 0; k < values_.size(); ++k) out.emplace_back(space_.point_at(k), values_[k]);
  return out;
}

std::vector<ClassValue> TabularClassifier::class_values() const {
  std::vector<ClassValue> out = values_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Point> TabularClassifier::find_disagreement(FeatureSet fixed, const Point& v,
                                                          ClassValue c) const {
  std::optional<Point> hit;
  for_each_in_cube(space_, fixed, v, [&](const Point& x) {
    if (values_[space_.index_of(x)] != c) {
      hit = x;
      return false;
    }
    return true;
  });
  return hit;
}

} // namespace shapxp
