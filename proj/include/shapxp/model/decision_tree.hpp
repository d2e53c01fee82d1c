#pragma once

#include <optional>
#include <vector>

#include "shapxp/model/space.hpp"
#include "shapxp/rational.hpp"

namespace shapxp {

struct DtEdge {
  ValueSet values;
  int child = -1;
};

struct DtNode {
  int feature = -1;  // -1 marks a leaf
  ClassValue value = 0;
  std::vector<DtEdge> edges;

  bool is_leaf() const { return feature < 0; }
  static DtNode leaf(ClassValue value) { return DtNode{-1, value, {}}; }
};

/// One root-to-leaf path: the values each feature may take along it.
struct DtPath {
  ClassValue value = 0;
  std::vector<ValueSet> allowed;
};

/// Decision tree with set-labeled edges. Each internal node's edge labels
/// partition its feature's domain, and no feature is tested twice on a path.
class DecisionTree {
public:
  DecisionTree(FeatureSpace space, std::vector<DtNode> nodes, int root = 0);

  const FeatureSpace& space() const { return space_; }
  const std::vector<DtNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  const std::vector<DtPath>& paths() const { return paths_; }

  ClassValue evaluate(const Point& x) const;
  std::vector<ClassValue> class_values() const;

  /// Sum of the class over the cube fixed by (fixed, v), by path counting.
  Integer path_sum(FeatureSet fixed, const Point& v) const;

  std::optional<Point> find_disagreement(FeatureSet fixed, const Point& v, ClassValue c) const;

private:
  FeatureSpace space_;
  std::vector<DtNode> nodes_;
  int root_ = 0;
  std::vector<DtPath> paths_;
};

} // namespace shapxp
