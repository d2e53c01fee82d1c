#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shapxp/feature_set.hpp"

namespace shapxp {

using ClassValue = std::int64_t;
using Point = std::vector<int>;

/// Configurable guardrails shared by every analysis.
struct Limits {
  /// Largest cube (or feature space) that is ever enumerated point by point.
  std::uint64_t max_enumerated_points = std::uint64_t{1} << 24;
  /// Largest feature count for exact Shapley coalition sums.
  int max_coalition_features = 24;
  /// Largest feature count for subset-lattice brute force.
  int max_brute_force_features = 20;
};

/// Hard ceiling on |feature space|, independent of Limits: point indices must
/// fit comfortably in 64 bits.
inline constexpr std::uint64_t kMaxSpacePoints = std::uint64_t{1} << 62;

/// Set of values of one feature, as a membership bitmap over 0..d-1.
class ValueSet {
public:
  ValueSet() = default;
  explicit ValueSet(int domain_size, bool full = false)
      : bits_(static_cast<std::size_t>(domain_size), full) {}

  static ValueSet of(int domain_size, std::span<const int> values);

  int domain_size() const { return static_cast<int>(bits_.size()); }
  bool contains(int value) const {
    return value >= 0 && value < domain_size() && bits_[static_cast<std::size_t>(value)];
  }
  void insert(int value) { bits_[static_cast<std::size_t>(value)] = true; }
  int count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == domain_size(); }
  /// Smallest member, or -1 when empty.
  int first() const;
  std::vector<int> values() const;

  ValueSet intersect(const ValueSet& o) const;
  bool intersects(const ValueSet& o) const;

  bool operator==(const ValueSet&) const = default;

private:
  std::vector<bool> bits_;
};

/// Cartesian product D_1 x ... x D_m with D_i = {0, ..., d_i - 1}.
class FeatureSpace {
public:
  FeatureSpace() = default;
  /// Feature names default to x1..xm.
  explicit FeatureSpace(std::vector<int> domain_sizes, std::vector<std::string> names = {});

  int num_features() const { return static_cast<int>(domains_.size()); }
  int domain_size(int feature) const { return domains_[static_cast<std::size_t>(feature)]; }
  const std::vector<int>& domain_sizes() const { return domains_; }
  const std::string& name(int feature) const { return names_[static_cast<std::size_t>(feature)]; }
  const std::vector<std::string>& names() const { return names_; }

  std::uint64_t total_points() const { return total_; }
  FeatureSet all_features() const { return FeatureSet::all(num_features()); }

  /// Throws InputError on arity or range mismatch.
  void check_point(const Point& p) const;
  void check_features(FeatureSet s) const;

  /// Mixed-radix index with feature 1 most significant (the row order of a
  /// tabular listing).
  std::uint64_t index_of(const Point& p) const;
  Point point_at(std::uint64_t index) const;

  /// |{x : x_i = v_i for i in fixed}| = prod_{i not in fixed} d_i.
  std::uint64_t cube_size(FeatureSet fixed) const;

  bool operator==(const FeatureSpace& o) const { return domains_ == o.domains_; }

private:
  std::vector<int> domains_;
  std::vector<std::string> names_;
  std::uint64_t total_ = 0;
};

/// Calls fn(point) for every point agreeing with v on `fixed`, in
/// lexicographic order; fn returns false to stop early. Returns false iff
/// stopped.
template <typename Fn>
bool for_each_in_cube(const FeatureSpace& space, FeatureSet fixed, const Point& v, Fn&& fn) {
  const int m = space.num_features();
  Point x = v;
  std::vector<int> free;
  for (int i = 0; i < m; ++i) {
    if (!fixed.contains(i)) {
      free.push_back(i);
      x[static_cast<std::size_t>(i)] = 0;
    }
  }
  while (true) {
    if (!fn(static_cast<const Point&>(x))) return false;
    // Odometer increment, last free feature fastest.
    int k = static_cast<int>(free.size()) - 1;
    for (; k >= 0; --k) {
      auto& cell = x[static_cast<std::size_t>(free[static_cast<std::size_t>(k)])];
      if (++cell < space.domain_size(free[static_cast<std::size_t>(k)])) break;
      cell = 0;
    }
    if (k < 0) return true;
  }
}

/// Hamming (l0) distance.
int hamming_distance(const Point& a, const Point& b);

/// Features on which a and b differ.
FeatureSet difference_set(const Point& a, const Point& b);

std::string to_string(const Point& p);

} // namespace shapxp
