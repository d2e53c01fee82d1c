#include "shapxp/model/decision_tree.hpp"

#include <algorithm>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

void collect_paths(const std::vector<DtNode>& nodes, int id, std::vector<ValueSet>& allowed,
                   FeatureSet tested, std::vector<DtPath>& out) {
  const DtNode& node = nodes[static_cast<std::size_t>(id)];
  if (node.is_leaf()) {
    out.push_back(DtPath{node.value, allowed});
    return;
  }
  if (tested.contains(node.feature))
    throw InvariantError("feature " + std::to_string(node.feature + 1) +
                         " is tested twice on one path");
  const auto f = static_cast<std::size_t>(node.feature);
  const ValueSet saved = allowed[f];
  for (const DtEdge& e : node.edges) {
    allowed[f] = e.values;
    collect_paths(nodes, e.child, allowed, tested.with(node.feature), out);
  }
  allowed[f] = saved;
}

} // namespace

DecisionTree::DecisionTree(FeatureSpace space, std::vector<DtNode> nodes, int root)
    : space_(std::move(space)), nodes_(std::move(nodes)), root_(root) {
  const int n = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= n) throw InputError("decision tree root out of range");
  for (int id = 0; id < n; ++id) {
    const DtNode& node = nodes_[static_cast<std::size_t>(id)];
    if (node.is_leaf()) continue;
    if (node.feature >= space_.num_features())
      throw InputError("decision tree node tests unknown feature " + std::to_string(node.feature + 1));
    const int d = space_.domain_size(node.feature);
    ValueSet covered(d);
    for (const DtEdge& e : node.edges) {
      if (e.child < 0 || e.child >= n) throw InputError("decision tree edge to unknown node");
      if (e.values.domain_size() != d || e.values.empty())
        throw InvariantError("decision tree edge label must be a nonempty subset of the domain");
      if (covered.intersects(e.values))
        throw InvariantError("decision tree edge labels of a node overlap");
      for (int v : e.values.values()) covered.insert(v);
    }
    if (!covered.full())
      throw InvariantError("decision tree edge labels do not cover the domain of feature " +
                           std::to_string(node.feature + 1));
  }

  std::vector<ValueSet> allowed;
  for (int i = 0; i < space_.num_features(); ++i) allowed.emplace_back(space_.domain_size(i), true);
  collect_paths(nodes_, root_, allowed, FeatureSet{}, paths_);

  if (class_values().size() < 2)
    throw InvariantError("classifier is constant: at least two distinct classes are required");
}

ClassValue DecisionTree::evaluate(const Point& x) const {
  space_.check_point(x);
  int id = root_;
  while (!nodes_[static_cast<std::size_t>(id)].is_leaf()) {
    const DtNode& node = nodes_[static_cast<std::size_t>(id)];
    const int value = x[static_cast<std::size_t>(node.feature)];
    for (const DtEdge& e : node.edges) {
      if (e.values.contains(value)) {
        id = e.child;
        break;
      }
    }
  }
  return nodes_[static_cast<std::size_t>(id)].value;
}

std::vector<ClassValue> DecisionTree::class_values() const {
  std::vector<ClassValue> out;
  for (const DtPath& p : paths_) out.push_back(p.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integer DecisionTree::path_sum(FeatureSet fixed, const Point& v) const {
  Integer total = 0;
  const int m = space_.num_features();
  for (const DtPath& path : paths_) {
    Integer count = 1;
    for (int i = 0; i < m && count != 0; ++i) {
      const ValueSet& allowed = path.allowed[static_cast<std::size_t>(i)];
      if (fixed.contains(i)) {
        if (!allowed.contains(v[static_cast<std::size_t>(i)])) count = 0;
      } else {
        count *= allowed.count();
      }
    }
    total += count * Integer(static_cast<long>(path.value));
  }
  return total;
}

std::optional<Point> DecisionTree::find_disagreement(FeatureSet fixed, const Point& v,
                                                     ClassValue c) const {
  const int m = space_.num_features();
  for (const DtPath& path : paths_) {
    if (path.value == c) continue;
    bool consistent = true;
    for (int i = 0; i < m && consistent; ++i)
      if (fixed.contains(i) && !path.allowed[static_cast<std::size_t>(i)].contains(v[static_cast<std::size_t>(i)]))
        consistent = false;
    if (!consistent) continue;
    // Stay as close to v as the path allows.
    Point x = v;
    for (int i = 0; i < m; ++i) {
      const ValueSet& allowed = path.allowed[static_cast<std::size_t>(i)];
      if (!allowed.contains(x[static_cast<std::size_t>(i)])) x[static_cast<std::size_t>(i)] = allowed.first();
    }
    return x;
  }
  return std::nullopt;
}

} // namespace shapxp
