#include "shapxp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <optional>

#include "shapxp/errors.hpp"

namespace shapxp {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<long long> as_integer(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

} // namespace

Dataset load_consistent_dataset(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split(line);
      break;
    }
  }
  if (header.size() < 2) throw InputError("dataset needs a header with at least one feature and a class column");
  const std::size_t width = header.size();

  std::vector<std::vector<std::string>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto row = split(line);
    if (row.size() != width)
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " cells, got " +
                       std::to_string(row.size()));
    for (const auto& c : row)
      if (c.empty()) throw InputError("line " + std::to_string(line_no) + ": empty cell");
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw InputError("dataset has no rows");

  const std::size_t m = width - 1;
  std::vector<std::vector<int>> coded(cells.size(), std::vector<int>(m));
  std::vector<int> domains(m);
  for (std::size_t j = 0; j < m; ++j) {
    bool integral = std::all_of(cells.begin(), cells.end(), [&](const auto& r) {
      auto v = as_integer(r[j]);
      return v && *v >= 0 && *v < (1 << 20);
    });
    if (integral) {
      int top = 0;
      for (std::size_t r = 0; r < cells.size(); ++r) {
        coded[r][j] = static_cast<int>(*as_integer(cells[r][j]));
        top = std::max(top, coded[r][j]);
      }
      domains[j] = std::max(2, top + 1);
    } else {
      std::set<std::string> symbols;
      for (const auto& r : cells) symbols.insert(r[j]);
      std::map<std::string, int> code;
      for (const auto& s : symbols) code.emplace(s, static_cast<int>(code.size()));
      for (std::size_t r = 0; r < cells.size(); ++r) coded[r][j] = code.at(cells[r][j]);
      domains[j] = std::max<int>(2, static_cast<int>(symbols.size()));
    }
  }

  Dataset data;
  std::vector<ClassValue> labels(cells.size());
  bool integral_class = std::all_of(cells.begin(), cells.end(), [&](const auto& r) { return as_integer(r[m]).has_value(); });
  if (integral_class) {
    for (std::size_t r = 0; r < cells.size(); ++r) labels[r] = *as_integer(cells[r][m]);
  } else {
    std::set<std::string> symbols;
    for (const auto& r : cells) symbols.insert(r[m]);
    data.class_symbols.assign(symbols.begin(), symbols.end());
    for (std::size_t r = 0; r < cells.size(); ++r)
      labels[r] = std::lower_bound(data.class_symbols.begin(), data.class_symbols.end(), cells[r][m]) -
                  data.class_symbols.begin();
  }

  std::vector<std::string> names(header.begin(), header.end() - 1);
  for (std::size_t j = 0; j < m; ++j)
    if (names[j].empty()) names[j] = "x" + std::to_string(j + 1);
  data.space = FeatureSpace(domains, names);

  std::map<Point, ClassValue> seen;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    auto [it, inserted] = seen.emplace(coded[r], labels[r]);
    if (!inserted && it->second != labels[r]) {
      ++data.dropped;
      continue;
    }
    data.rows.push_back(coded[r]);
    data.labels.push_back(labels[r]);
  }
  return data;
}

Dataset load_consistent_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  return load_consistent_dataset(in);
}

ClassValue majority_class(const Dataset& data) {
  if (data.labels.empty()) throw InputError("dataset has no rows");
  std::map<ClassValue, std::size_t> counts;
  for (auto c : data.labels) ++counts[c];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first;
}

Omdd build_omdd_from_dataset(const Dataset& data, const Limits& limits) {
  const auto& space = data.space;
  if (space.total_points() > limits.max_enumerated_points)
    throw CapacityError("dataset feature space has " + std::to_string(space.total_points()) +
                        " points, above the enumeration cap");
  std::vector<ClassValue> values(space.total_points(), majority_class(data));
  for (std::size_t r = 0; r < data.rows.size(); ++r) values[space.index_of(data.rows[r])] = data.labels[r];
  TabularClassifier table(space, std::move(values));
  return tabular_to_omdd(table, identity_order(space.num_features()));
}

} // namespace shapxp
