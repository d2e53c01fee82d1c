#include "shapxp/model/omdd.hpp"

#include <algorithm>
#include <map>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

/// Hash-consing node factory producing reduced diagrams.
class OmddBuilder {
public:
  explicit OmddBuilder(const FeatureSpace& space) : space_(space) {}

  int terminal(ClassValue value) {
    auto [it, inserted] = terminals_.try_emplace(value, static_cast<int>(nodes_.size()));
    if (inserted) nodes_.push_back(OmddNode{space_.num_features(), value, {}});
    return it->second;
  }

  /// children[k] is the node reached when the layer's feature takes value k.
  int node(int layer, int feature, const std::vector<int>& children) {
    if (std::all_of(children.begin(), children.end(), [&](int c) { return c == children.front(); }))
      return children.front();
    auto key = std::make_pair(layer, children);
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;

    const int d = space_.domain_size(feature);
    OmddNode n{layer, 0, {}};
    for (int value = 0; value < d; ++value) {
      const int child = children[static_cast<std::size_t>(value)];
      auto edge = std::find_if(n.edges.begin(), n.edges.end(),
                               [&](const OmddEdge& e) { return e.child == child; });
      if (edge == n.edges.end()) {
        n.edges.push_back(OmddEdge{ValueSet(d), child});
        edge = n.edges.end() - 1;
      }
      edge->values.insert(value);
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    unique_.emplace(std::move(key), id);
    return id;
  }

  std::vector<OmddNode> take() { return std::move(nodes_); }

private:
  const FeatureSpace& space_;
  std::vector<OmddNode> nodes_;
  std::map<ClassValue, int> terminals_;
  std::map<std::pair<int, std::vector<int>>, int> unique_;
};

} // namespace

Omdd::Omdd(FeatureSpace space, std::vector<int> order, std::vector<OmddNode> nodes, int root)
    : space_(std::move(space)), order_(std::move(order)), nodes_(std::move(nodes)), root_(root) {
  const int m = space_.num_features();
  if (static_cast<int>(order_.size()) != m)
    throw InputError("variable order must list every feature exactly once");
  position_.assign(static_cast<std::size_t>(m), -1);
  for (int layer = 0; layer < m; ++layer) {
    const int f = order_[static_cast<std::size_t>(layer)];
    if (f < 0 || f >= m || position_[static_cast<std::size_t>(f)] != -1)
      throw InputError("variable order must be a permutation of the features");
    position_[static_cast<std::size_t>(f)] = layer;
  }
  const int n = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= n) throw InputError("diagram root out of range");
  for (const OmddNode& node : nodes_) {
    if (node.layer < 0 || node.layer > m) throw InputError("diagram node on an invalid layer");
    if (node.layer == m) {
      if (!node.edges.empty()) throw InvariantError("terminal node with outgoing edges");
      continue;
    }
    const int d = space_.domain_size(feature_at(node.layer));
    ValueSet covered(d);
    for (const OmddEdge& e : node.edges) {
      if (e.child < 0 || e.child >= n) throw InputError("diagram edge to unknown node");
      if (nodes_[static_cast<std::size_t>(e.child)].layer <= node.layer)
        throw InvariantError("diagram edge does not point to a later layer");
      if (e.values.domain_size() != d || e.values.empty())
        throw InvariantError("diagram edge label must be a nonempty subset of the domain");
      if (covered.intersects(e.values)) throw InvariantError("diagram edge labels of a node overlap");
      for (int v : e.values.values()) covered.insert(v);
    }
    if (!covered.full()) throw InvariantError("diagram edge labels do not cover the domain");
  }
  if (class_values().size() < 2)
    throw InvariantError("classifier is constant: at least two distinct classes are required");
}

int Omdd::nonterminal_count() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(),
                                        [&](const OmddNode& n) { return n.layer != terminal_layer(); }));
}

bool Omdd::is_reduced() const {
  std::map<ClassValue, int> terminals;
  std::map<std::pair<int, std::vector<int>>, int> seen;
  for (const OmddNode& node : nodes_) {
    if (node.layer == terminal_layer()) {
      if (++terminals[node.value] > 1) return false;
      continue;
    }
    if (node.edges.size() < 2) return false;
    std::vector<int> children(static_cast<std::size_t>(space_.domain_size(feature_at(node.layer))));
    for (const OmddEdge& e : node.edges)
      for (int v : e.values.values()) children[static_cast<std::size_t>(v)] = e.child;
    if (++seen[{node.layer, children}] > 1) return false;
  }
  return true;
}

ClassValue Omdd::evaluate(const Point& x) const {
  space_.check_point(x);
  int id = root_;
  while (!is_terminal(id)) {
    const OmddNode& node = nodes_[static_cast<std::size_t>(id)];
    const int value = x[static_cast<std::size_t>(feature_at(node.layer))];
    for (const OmddEdge& e : node.edges) {
      if (e.values.contains(value)) {
        id = e.child;
        break;
      }
    }
  }
  return nodes_[static_cast<std::size_t>(id)].value;
}

std::vector<ClassValue> Omdd::class_values() const {
  // Only values of terminals reachable from the root count.
  std::vector<bool> reached(nodes_.size(), false);
  std::vector<int> stack{root_};
  reached[static_cast<std::size_t>(root_)] = true;
  std::vector<ClassValue> out;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const OmddNode& node = nodes_[static_cast<std::size_t>(id)];
    if (node.layer == terminal_layer()) out.push_back(node.value);
    for (const OmddEdge& e : node.edges) {
      if (!reached[static_cast<std::size_t>(e.child)]) {
        reached[static_cast<std::size_t>(e.child)] = true;
        stack.push_back(e.child);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integer Omdd::path_sum(FeatureSet fixed, const Point& v) const {
  const int m = space_.num_features();
  // free_below[k] = number of assignments to the free features on layers < k
  std::vector<Integer> free_below(static_cast<std::size_t>(m) + 1);
  free_below[0] = 1;
  for (int k = 0; k < m; ++k) {
    const int f = feature_at(k);
    free_below[static_cast<std::size_t>(k) + 1] =
        free_below[static_cast<std::size_t>(k)] * (fixed.contains(f) ? 1 : space_.domain_size(f));
  }
  auto skipped = [&](int from_layer, int to_layer) -> Integer {
    // layers strictly between from_layer and to_layer
    return free_below[static_cast<std::size_t>(to_layer)] / free_below[static_cast<std::size_t>(from_layer) + 1];
  };

  std::vector<Integer> sum(nodes_.size());
  std::vector<bool> done(nodes_.size(), false);
  // Iterative post-order.
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const auto uid = static_cast<std::size_t>(id);
    if (done[uid]) continue;
    const OmddNode& node = nodes_[uid];
    if (node.layer == m) {
      sum[uid] = Integer(static_cast<long>(node.value));
      done[uid] = true;
      continue;
    }
    if (!expanded) {
      stack.emplace_back(id, true);
      for (const OmddEdge& e : node.edges)
        if (!done[static_cast<std::size_t>(e.child)]) stack.emplace_back(e.child, false);
      continue;
    }
    const int f = feature_at(node.layer);
    Integer total = 0;
    for (const OmddEdge& e : node.edges) {
      Integer weight;
      if (fixed.contains(f))
        weight = e.values.contains(v[static_cast<std::size_t>(f)]) ? 1 : 0;
      else
        weight = e.values.count();
      if (weight == 0) continue;
      const int child_layer = nodes_[static_cast<std::size_t>(e.child)].layer;
      total += weight * skipped(node.layer, child_layer) * sum[static_cast<std::size_t>(e.child)];
    }
    sum[uid] = total;
    done[uid] = true;
  }
  const int root_layer = nodes_[static_cast<std::size_t>(root_)].layer;
  return free_below[static_cast<std::size_t>(root_layer)] * sum[static_cast<std::size_t>(root_)];
}

std::optional<Point> Omdd::find_disagreement(FeatureSet fixed, const Point& v, ClassValue c) const {
  std::vector<bool> dead(nodes_.size(), false);
  Point x = v;

  auto search = [&](auto&& self, int id) -> bool {
    const auto uid = static_cast<std::size_t>(id);
    if (dead[uid]) return false;
    const OmddNode& node = nodes_[uid];
    if (node.layer == terminal_layer()) {
      if (node.value != c) return true;
      dead[uid] = true;
      return false;
    }
    const int f = feature_at(node.layer);
    const int vf = v[static_cast<std::size_t>(f)];
    for (const OmddEdge& e : node.edges) {
      if (fixed.contains(f) && !e.values.contains(vf)) continue;
      x[static_cast<std::size_t>(f)] = e.values.contains(vf) ? vf : e.values.first();
      if (self(self, e.child)) return true;
    }
    x[static_cast<std::size_t>(f)] = vf;
    dead[uid] = true;
    return false;
  };
  if (search(search, root_)) return x;
  return std::nullopt;
}

Omdd build_omdd(const FeatureSpace& space, const std::vector<int>& order,
                const std::function<ClassValue(const Point&)>& fn) {
  const int m = space.num_features();
  if (static_cast<int>(order.size()) != m) throw InputError("variable order must list every feature");
  OmddBuilder builder(space);
  Point x(static_cast<std::size_t>(m), 0);

  auto expand = [&](auto&& self, int layer) -> int {
    if (layer == m) return builder.terminal(fn(x));
    const int f = order[static_cast<std::size_t>(layer)];
    std::vector<int> children(static_cast<std::size_t>(space.domain_size(f)));
    for (int value = 0; value < space.domain_size(f); ++value) {
      x[static_cast<std::size_t>(f)] = value;
      children[static_cast<std::size_t>(value)] = self(self, layer + 1);
    }
    x[static_cast<std::size_t>(f)] = 0;
    return builder.node(layer, f, children);
  };
  const int root = expand(expand, 0);
  return Omdd(space, order, builder.take(), root);
}

Omdd reduce(const Omdd& dd) {
  const FeatureSpace& space = dd.space();
  OmddBuilder builder(space);
  std::vector<int> mapped(dd.nodes().size(), -1);

  auto rebuild = [&](auto&& self, int id) -> int {
    const auto uid = static_cast<std::size_t>(id);
    if (mapped[uid] >= 0) return mapped[uid];
    const OmddNode& node = dd.nodes()[uid];
    int result;
    if (dd.is_terminal(id)) {
      result = builder.terminal(node.value);
    } else {
      const int f = dd.feature_at(node.layer);
      std::vector<int> children(static_cast<std::size_t>(space.domain_size(f)));
      for (const OmddEdge& e : node.edges) {
        const int child = self(self, e.child);
        for (int value : e.values.values()) children[static_cast<std::size_t>(value)] = child;
      }
      result = builder.node(node.layer, f, children);
    }
    mapped[uid] = result;
    return result;
  };
  const int root = rebuild(rebuild, dd.root());
  return Omdd(space, dd.order(), builder.take(), root);
}

} // namespace shapxp
