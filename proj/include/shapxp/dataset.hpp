#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "shapxp/model/model.hpp"

namespace shapxp {

/// Labeled rows over a discrete feature space. Columns whose cells are all
/// non-negative integers keep their values (domain = max + 1, at least 2);
/// any other column is coded by the sorted order of its distinct symbols.
/// The class column (last) is kept as integers when every label is one.
struct Dataset {
  FeatureSpace space;
  std::vector<Point> rows;
  std::vector<ClassValue> labels;
  std::vector<std::string> class_symbols;  // empty when labels were integers
  std::size_t dropped = 0;                 // contradicting rows removed

  std::size_t size() const { return rows.size(); }
};

/// Parses a headed CSV and removes contradictions: a row repeating an
/// earlier feature vector with a different class is dropped (first wins).
/// Throws InputError on malformed input or an empty result.
Dataset load_consistent_dataset(std::istream& in);
Dataset load_consistent_dataset(const std::filesystem::path& path);

/// Majority class of the rows, ties to the smallest label.
ClassValue majority_class(const Dataset& data);

/// Completes the dataset over the whole feature space (points without a row
/// get the majority class) and builds the reduced diagram under column
/// order. Throws InvariantError if the completion is constant.
Omdd build_omdd_from_dataset(const Dataset& data, const Limits& limits = {});

} // namespace shapxp
