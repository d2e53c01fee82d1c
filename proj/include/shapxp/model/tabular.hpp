#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shapxp/model/space.hpp"

namespace shapxp {

/// Complete truth table: one class per point of the feature space.
class TabularClassifier {
public:
  using Row = std::pair<Point, ClassValue>;

  /// `values[k]` is the class of space.point_at(k). Throws InvariantError if
  /// the size is wrong or the function is constant.
  TabularClassifier(FeatureSpace space, std::vector<ClassValue> values);

  /// Rows in any order; every point must appear exactly once.
  static TabularClassifier from_rows(FeatureSpace space, const std::vector<Row>& rows);

  const FeatureSpace& space() const { return space_; }
  ClassValue evaluate(const Point& x) const;
  ClassValue at_index(std::uint64_t index) const { return values_[index]; }
  const std::vector<ClassValue>& values() const { return values_; }
  /// Rows in mixed-radix order.
  std::vector<Row> rows() const;
  std::vector<ClassValue> class_values() const;

  std::optional<Point> find_disagreement(FeatureSet fixed, const Point& v, ClassValue c) const;

  bool operator==(const TabularClassifier&) const = default;

private:
  FeatureSpace space_;
  std::vector<ClassValue> values_;
};

} // namespace shapxp
