#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace shapxp {

inline constexpr int kMaxFeatures = 64;

/// A subset of features {0..m-1}, stored as a bitmask. Feature i is
/// displayed as i+1 everywhere outside the library.
class FeatureSet {
public:
  constexpr FeatureSet() = default;
  constexpr explicit FeatureSet(std::uint64_t bits) : bits_(bits) {}

  /// Builds from 0-based indices.
  static FeatureSet of(std::initializer_list<int> features) {
    FeatureSet s;
    for (int f : features) s.insert(f);
    return s;
  }
  static FeatureSet of(const std::vector<int>& features) {
    FeatureSet s;
    for (int f : features) s.insert(f);
    return s;
  }
  /// Builds from 1-based indices, the way features are written in reports.
  static FeatureSet of_one_based(const std::vector<int>& features) {
    FeatureSet s;
    for (int f : features) s.insert(f - 1);
    return s;
  }
  static constexpr FeatureSet all(int m) {
    return FeatureSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int f) const { return (bits_ >> f) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr void insert(int f) { bits_ |= std::uint64_t{1} << f; }
  constexpr void erase(int f) { bits_ &= ~(std::uint64_t{1} << f); }

  constexpr FeatureSet with(int f) const {
    return FeatureSet(bits_ | (std::uint64_t{1} << f));
  }
  constexpr FeatureSet without(int f) const {
    return FeatureSet(bits_ & ~(std::uint64_t{1} << f));
  }

  constexpr FeatureSet operator|(FeatureSet o) const { return FeatureSet(bits_ | o.bits_); }
  constexpr FeatureSet operator&(FeatureSet o) const { return FeatureSet(bits_ & o.bits_); }
  constexpr FeatureSet minus(FeatureSet o) const { return FeatureSet(bits_ & ~o.bits_); }
  constexpr FeatureSet complement(int m) const { return all(m).minus(*this); }

  constexpr bool intersects(FeatureSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(FeatureSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(FeatureSet o) const {
    return subset_of(o) && bits_ != o.bits_;
  }

  constexpr bool operator==(const FeatureSet&) const = default;

  std::vector<int> indices() const;
  std::vector<int> one_based() const;

  template <typename Fn> void for_each(Fn&& fn) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b));
  }

private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on the sorted element lists: {1} < {1,2} < {2}.
bool lex_less(FeatureSet a, FeatureSet b);

/// Sorts and removes duplicates, using lex_less.
void sort_lex(std::vector<FeatureSet>& sets);

/// "{1,2,3}" using 1-based indices.
std::string to_string(FeatureSet s);

} // namespace shapxp
