#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "shapxp/model/model.hpp"

namespace shapxp {

/// Model files are single JSON documents:
///
///   {"type": "table" | "dt" | "omdd",
///    "features": [{"name": "x1", "domain": 2}, ...],
///    "classes": [0, 1, ...],
///    ...body}
///
/// table: "rows": [[x1, ..., xm, class], ...], complete.
/// dt:    "root": id (defaults to the first node), "nodes": [
///          {"id": 0, "feature": 1, "edges": [{"values": [0, 2], "to": 1}, ...]},
///          {"id": 1, "class": 3}, ...]
/// omdd:  as dt, plus "order": [1, 3, 2].
///
/// Feature indices are 1-based; values and classes are integers, never floats.
Model model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const Model& model);

Model read_model_file(const std::filesystem::path& path);
void write_model_file(const std::filesystem::path& path, const Model& model);

/// Pretty JSON with a trailing newline; the one serialization used for every
/// report so that library and CLI output are byte-identical.
std::string dump_json(const nlohmann::json& doc);

} // namespace shapxp
