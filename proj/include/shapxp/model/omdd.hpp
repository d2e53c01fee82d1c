#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shapxp/model/space.hpp"
#include "shapxp/rational.hpp"

namespace shapxp {

struct OmddEdge {
  ValueSet values;
  int child = -1;

  bool operator==(const OmddEdge&) const = default;
};

/// Nonterminal nodes sit on a layer 0..m-1 and test feature order[layer];
/// terminals sit on layer m and carry a class value.
struct OmddNode {
  int layer = 0;
  ClassValue value = 0;
  std::vector<OmddEdge> edges;

  bool operator==(const OmddNode&) const = default;
};

/// Ordered multi-valued decision diagram.
///
/// Edges only go to strictly later layers; skipped layers are don't-cares.
/// Per-node edge labels partition the tested feature's domain. A reduced
/// diagram has no redundant node (all edges into one child), no two
/// structurally identical nodes, and one terminal per class value.
class Omdd {
public:
  /// `order` is a permutation of 0..m-1. Validates structure, not reduction.
  Omdd(FeatureSpace space, std::vector<int> order, std::vector<OmddNode> nodes, int root);

  const FeatureSpace& space() const { return space_; }
  const std::vector<int>& order() const { return order_; }
  const std::vector<OmddNode>& nodes() const { return nodes_; }
  int root() const { return root_; }

  bool is_terminal(int node) const { return nodes_[static_cast<std::size_t>(node)].layer == terminal_layer(); }
  int terminal_layer() const { return space_.num_features(); }
  int feature_at(int layer) const { return order_[static_cast<std::size_t>(layer)]; }
  int layer_of(int feature) const { return position_[static_cast<std::size_t>(feature)]; }

  int nonterminal_count() const;
  bool is_reduced() const;

  ClassValue evaluate(const Point& x) const;
  std::vector<ClassValue> class_values() const;

  /// Sum of the class over the cube fixed by (fixed, v): weighted model
  /// counting bottom-up over the DAG.
  Integer path_sum(FeatureSet fixed, const Point& v) const;

  std::optional<Point> find_disagreement(FeatureSet fixed, const Point& v, ClassValue c) const;

  /// Structural identity: same order, same node list, same root.
  bool operator==(const Omdd& o) const {
    return space_ == o.space_ && order_ == o.order_ && nodes_ == o.nodes_ && root_ == o.root_;
  }

private:
  FeatureSpace space_;
  std::vector<int> order_;
  std::vector<int> position_;
  std::vector<OmddNode> nodes_;
  int root_ = 0;
};

/// Builds the reduced diagram of `fn` under `order` by Shannon expansion with
/// hash-consing. Visits every point of the space.
Omdd build_omdd(const FeatureSpace& space, const std::vector<int>& order,
                const std::function<ClassValue(const Point&)>& fn);

/// Canonical reduced form of any valid diagram, same order.
Omdd reduce(const Omdd& dd);

} // namespace shapxp
