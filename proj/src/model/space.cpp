#include "shapxp/model/space.hpp"

#include <algorithm>

#include "shapxp/errors.hpp"

namespace shapxp {

ValueSet ValueSet::of(int domain_size, std::span<const int> values) {
  ValueSet s(domain_size);
  for (int v : values) {
    if (v < 0 || v >= domain_size)
      throw InputError("value " + std::to_string(v) + " outside domain of size " +
                       std::to_string(domain_size));
    s.insert(v);
  }
  return s;
}

int ValueSet::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

int ValueSet::first() const {
  for (int v = 0; v < domain_size(); ++v)
    if (bits_[static_cast<std::size_t>(v)]) return v;
  return -1;
}

std::vector<int> ValueSet::values() const {
  std::vector<int> out;
  for (int v = 0; v < domain_size(); ++v)
    if (bits_[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

ValueSet ValueSet::intersect(const ValueSet& o) const {
  ValueSet r(domain_size());
  for (int v = 0; v < domain_size(); ++v)
    if (contains(v) && o.contains(v)) r.insert(v);
  return r;
}

bool ValueSet::intersects(const ValueSet& o) const {
  for (int v = 0; v < domain_size(); ++v)
    if (contains(v) && o.contains(v)) return true;
  return false;
}

FeatureSpace::FeatureSpace(std::vector<int> domain_sizes, std::vector<std::string> names)
    : domains_(std::move(domain_sizes)), names_(std::move(names)) {
  const int m = num_features();
  if (m < 1) throw InputError("a feature space needs at least one feature");
  if (m > kMaxFeatures)
    throw CapacityError("at most " + std::to_string(kMaxFeatures) + " features are supported");
  if (names_.empty()) {
    for (int i = 0; i < m; ++i) names_.push_back("x" + std::to_string(i + 1));
  } else if (static_cast<int>(names_.size()) != m) {
    throw InputError("feature name count does not match feature count");
  }
  total_ = 1;
  for (int i = 0; i < m; ++i) {
    const int d = domains_[static_cast<std::size_t>(i)];
    if (d < 2)
      throw InputError("feature " + std::to_string(i + 1) + " has domain size " +
                       std::to_string(d) + " (need at least 2)");
    if (total_ > kMaxSpacePoints / static_cast<std::uint64_t>(d))
      throw CapacityError("feature space has more than 2^62 points");
    total_ *= static_cast<std::uint64_t>(d);
  }
}

void FeatureSpace::check_point(const Point& p) const {
  if (static_cast<int>(p.size()) != num_features())
    throw InputError("point has " + std::to_string(p.size()) + " values, expected " +
                     std::to_string(num_features()));
  for (int i = 0; i < num_features(); ++i) {
    const int x = p[static_cast<std::size_t>(i)];
    if (x < 0 || x >= domain_size(i))
      throw InputError("value " + std::to_string(x) + " of feature " + std::to_string(i + 1) +
                       " outside 0.." + std::to_string(domain_size(i) - 1));
  }
}

void FeatureSpace::check_features(FeatureSet s) const {
  if (!s.subset_of(all_features()))
    throw InputError("feature set " + to_string(s) + " is not a subset of the features");
}

std::uint64_t FeatureSpace::index_of(const Point& p) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < num_features(); ++i)
    idx = idx * static_cast<std::uint64_t>(domain_size(i)) +
          static_cast<std::uint64_t>(p[static_cast<std::size_t>(i)]);
  return idx;
}

Point FeatureSpace::point_at(std::uint64_t index) const {
  if (index >= total_) throw InputError("point index out of range");
  Point p(static_cast<std::size_t>(num_features()));
  for (int i = num_features() - 1; i >= 0; --i) {
    const auto d = static_cast<std::uint64_t>(domain_size(i));
    p[static_cast<std::size_t>(i)] = static_cast<int>(index % d);
    index /= d;
  }
  return p;
}

std::uint64_t FeatureSpace::cube_size(FeatureSet fixed) const {
  std::uint64_t n = 1;
  for (int i = 0; i < num_features(); ++i)
    if (!fixed.contains(i)) n *= static_cast<std::uint64_t>(domain_size(i));
  return n;
}

int hamming_distance(const Point& a, const Point& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

FeatureSet difference_set(const Point& a, const Point& b) {
  FeatureSet s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) s.insert(static_cast<int>(i));
  return s;
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

} // namespace shapxp
