#include "shapxp/model/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "shapxp/errors.hpp"

namespace shapxp {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw InputError(std::string("model file: missing \"") + key + "\"");
  return obj.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string("model file: ") + what + " must be an integer");
  return j.get<std::int64_t>();
}

int as_small_int(const json& j, const char* what) {
  const auto v = as_int(j, what);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InputError(std::string("model file: ") + what + " out of range");
  return static_cast<int>(v);
}

FeatureSpace parse_features(const json& doc) {
  const json& features = require(doc, "features");
  if (!features.is_array()) throw InputError("model file: \"features\" must be an array");
  std::vector<int> domains;
  std::vector<std::string> names;
  for (const json& f : features) {
    domains.push_back(as_small_int(require(f, "domain"), "domain"));
    const json& name = require(f, "name");
    if (!name.is_string()) throw InputError("model file: feature name must be a string");
    names.push_back(name.get<std::string>());
  }
  return FeatureSpace(std::move(domains), std::move(names));
}

std::vector<ClassValue> parse_classes(const json& doc) {
  const json& classes = require(doc, "classes");
  if (!classes.is_array()) throw InputError("model file: \"classes\" must be an array");
  std::vector<ClassValue> out;
  for (const json& c : classes) out.push_back(as_int(c, "class"));
  return out;
}

void check_declared(ClassValue c, const std::vector<ClassValue>& declared) {
  if (std::find(declared.begin(), declared.end(), c) == declared.end())
    throw InputError("model file: class " + std::to_string(c) + " is not listed in \"classes\"");
}

int parse_feature_index(const json& j, const FeatureSpace& space) {
  const int f = as_small_int(j, "feature");
  if (f < 1 || f > space.num_features())
    throw InputError("model file: feature index " + std::to_string(f) + " out of range");
  return f - 1;
}

ValueSet parse_values(const json& j, int domain_size) {
  if (!j.is_array()) throw InputError("model file: edge \"values\" must be an array");
  std::vector<int> values;
  for (const json& v : j) values.push_back(as_small_int(v, "value"));
  return ValueSet::of(domain_size, values);
}

/// Node lists shared by "dt" and "omdd": maps file ids to positions.
struct RawNode {
  int feature = -1;
  ClassValue value = 0;
  std::vector<std::pair<ValueSet, std::int64_t>> edges;
};

std::pair<std::vector<RawNode>, std::map<std::int64_t, int>> parse_nodes(
    const json& doc, const FeatureSpace& space, const std::vector<ClassValue>& classes) {
  const json& nodes = require(doc, "nodes");
  if (!nodes.is_array() || nodes.empty()) throw InputError("model file: \"nodes\" must be a nonempty array");
  std::vector<RawNode> raw;
  std::map<std::int64_t, int> index;
  for (const json& n : nodes) {
    const std::int64_t id = as_int(require(n, "id"), "node id");
    if (!index.emplace(id, static_cast<int>(raw.size())).second)
      throw InputError("model file: duplicate node id " + std::to_string(id));
    RawNode r;
    if (n.contains("class")) {
      r.value = as_int(n.at("class"), "class");
      check_declared(r.value, classes);
    } else {
      r.feature = parse_feature_index(require(n, "feature"), space);
      const json& edges = require(n, "edges");
      if (!edges.is_array()) throw InputError("model file: \"edges\" must be an array");
      for (const json& e : edges)
        r.edges.emplace_back(parse_values(require(e, "values"), space.domain_size(r.feature)),
                             as_int(require(e, "to"), "edge target"));
    }
    raw.push_back(std::move(r));
  }
  return {std::move(raw), std::move(index)};
}

int resolve(const std::map<std::int64_t, int>& index, std::int64_t id) {
  auto it = index.find(id);
  if (it == index.end()) throw InputError("model file: reference to unknown node " + std::to_string(id));
  return it->second;
}

int parse_root(const json& doc, const std::map<std::int64_t, int>& index) {
  if (!doc.contains("root")) return 0;
  return resolve(index, as_int(doc.at("root"), "root"));
}

json features_json(const FeatureSpace& space) {
  json out = json::array();
  for (int i = 0; i < space.num_features(); ++i)
    out.push_back({{"name", space.name(i)}, {"domain", space.domain_size(i)}});
  return out;
}

json edge_json(const ValueSet& values, int to) {
  return {{"values", values.values()}, {"to", to}};
}

} // namespace

Model model_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("model file: top level must be an object");
  const json& type = require(doc, "type");
  if (!type.is_string()) throw InputError("model file: \"type\" must be a string");
  const std::string kind = type.get<std::string>();
  FeatureSpace space = parse_features(doc);
  const std::vector<ClassValue> classes = parse_classes(doc);
  const int m = space.num_features();

  if (kind == "table") {
    const json& rows = require(doc, "rows");
    if (!rows.is_array()) throw InputError("model file: \"rows\" must be an array");
    std::vector<TabularClassifier::Row> parsed;
    for (const json& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != m + 1)
        throw InputError("model file: each row needs " + std::to_string(m + 1) + " integers");
      Point p;
      for (int i = 0; i < m; ++i) p.push_back(as_small_int(row[static_cast<std::size_t>(i)], "feature value"));
      const ClassValue c = as_int(row[static_cast<std::size_t>(m)], "class");
      check_declared(c, classes);
      parsed.emplace_back(std::move(p), c);
    }
    return TabularClassifier::from_rows(std::move(space), parsed);
  }

  if (kind == "dt") {
    auto [raw, index] = parse_nodes(doc, space, classes);
    std::vector<DtNode> nodes;
    for (const RawNode& r : raw) {
      DtNode n{r.feature, r.value, {}};
      for (const auto& [values, to] : r.edges) n.edges.push_back(DtEdge{values, resolve(index, to)});
      nodes.push_back(std::move(n));
    }
    const int root = parse_root(doc, index);
    return DecisionTree(std::move(space), std::move(nodes), root);
  }

  if (kind == "omdd") {
    const json& order_json = require(doc, "order");
    if (!order_json.is_array()) throw InputError("model file: \"order\" must be an array");
    std::vector<int> order;
    for (const json& f : order_json) order.push_back(parse_feature_index(f, space));
    if (static_cast<int>(order.size()) != m) throw InputError("model file: \"order\" must list every feature");
    std::vector<int> layer_of(static_cast<std::size_t>(m), -1);
    for (int k = 0; k < m; ++k) {
      if (layer_of[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] != -1)
        throw InputError("model file: \"order\" repeats a feature");
      layer_of[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    }
    auto [raw, index] = parse_nodes(doc, space, classes);
    std::vector<OmddNode> nodes;
    for (const RawNode& r : raw) {
      OmddNode n{r.feature < 0 ? m : layer_of[static_cast<std::size_t>(r.feature)], r.value, {}};
      for (const auto& [values, to] : r.edges) n.edges.push_back(OmddEdge{values, resolve(index, to)});
      nodes.push_back(std::move(n));
    }
    const int root = parse_root(doc, index);
    return Omdd(std::move(space), std::move(order), std::move(nodes), root);
  }

  throw InputError("model file: unknown type \"" + kind + "\"");
}

json model_to_json(const Model& model) {
  const FeatureSpace& space = space_of(model);
  json doc;
  doc["type"] = kind_name(model);
  doc["features"] = features_json(space);
  doc["classes"] = class_values(model);

  if (const auto* table = std::get_if<TabularClassifier>(&model)) {
    json rows = json::array();
    for (const auto& [point, cls] : table->rows()) {
      json row = point;
      row.push_back(cls);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
  } else if (const auto* dt = std::get_if<DecisionTree>(&model)) {
    doc["root"] = dt->root();
    json nodes = json::array();
    for (std::size_t id = 0; id < dt->nodes().size(); ++id) {
      const DtNode& n = dt->nodes()[id];
      if (n.is_leaf()) {
        nodes.push_back({{"id", id}, {"class", n.value}});
        continue;
      }
      json edges = json::array();
      for (const DtEdge& e : n.edges) edges.push_back(edge_json(e.values, e.child));
      nodes.push_back({{"id", id}, {"feature", n.feature + 1}, {"edges", std::move(edges)}});
    }
    doc["nodes"] = std::move(nodes);
  } else {
    const Omdd& dd = std::get<Omdd>(model);
    json order = json::array();
    for (int f : dd.order()) order.push_back(f + 1);
    doc["order"] = std::move(order);
    doc["root"] = dd.root();
    json nodes = json::array();
    for (std::size_t id = 0; id < dd.nodes().size(); ++id) {
      const OmddNode& n = dd.nodes()[id];
      if (dd.is_terminal(static_cast<int>(id))) {
        nodes.push_back({{"id", id}, {"class", n.value}});
        continue;
      }
      json edges = json::array();
      for (const OmddEdge& e : n.edges) edges.push_back(edge_json(e.values, e.child));
      nodes.push_back({{"id", id}, {"feature", dd.feature_at(n.layer) + 1}, {"edges", std::move(edges)}});
    }
    doc["nodes"] = std::move(nodes);
  }
  return doc;
}

Model read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("model file " + path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

void write_model_file(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << dump_json(model_to_json(model));
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace shapxp
