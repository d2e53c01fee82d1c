#include <algorithm>

#include "shapxp/explain.hpp"

namespace shapxp {

// Berge's incremental dualization: fold the family in one set at a time,
// extending every partial hitting set that misses it, then discard
// non-minimal candidates.
std::vector<FeatureSet> minimal_hitting_sets(const std::vector<FeatureSet>& family) {
  std::vector<FeatureSet> current{FeatureSet{}};
  for (FeatureSet target : family) {
    std::vector<FeatureSet> next;
    for (FeatureSet h : current) {
      if (h.intersects(target)) {
        next.push_back(h);
        continue;
      }
      target.for_each([&](int f) { next.push_back(h.with(f)); });
    }
    sort_lex(next);
    std::vector<FeatureSet> minimal;
    for (FeatureSet h : next) {
      const bool dominated = std::any_of(next.begin(), next.end(),
                                         [&](FeatureSet g) { return g.proper_subset_of(h); });
      if (!dominated) minimal.push_back(h);
    }
    current = std::move(minimal);
  }
  sort_lex(current);
  return current;
}

} // namespace shapxp
