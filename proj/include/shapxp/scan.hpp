#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapxp/explain.hpp"
#include "shapxp/shapley.hpp"

namespace shapxp {

struct ScanRecord {
  std::uint64_t index = 0;  // mixed-radix index of the instance
  Point instance;
  ClassValue prediction = 0;
  std::vector<Rational> sv;
  FeatureSet relevant;
  FeatureSet irrelevant;
  std::optional<Rational> v_i;  // max |Sv| over irrelevant features
  std::optional<Rational> v_j;  // min |Sv| over relevant features
  bool issue = false;           // some irrelevant i, relevant j with |Sv(i)| > |Sv(j)|
};

struct ScanSummary {
  std::uint64_t total = 0;
  std::uint64_t issues = 0;
  std::uint64_t zero_sv_relevant = 0;  // instances where a relevant feature has Sv = 0

  Rational fraction() const;
};

struct AnalysisOptions {
  Backend backend = Backend::Enumeration;
  ExplainEngine engine = ExplainEngine::Duality;
};

ScanRecord analyze_instance(const ExplanationProblem& problem, const AnalysisOptions& options = {});

struct ScanOptions {
  std::optional<std::uint64_t> sample;  // unset: every point of the space
  std::uint64_t seed = 0;
  int jobs = 1;
  AnalysisOptions analysis;
  Limits limits;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // sorted by index
  ScanSummary summary;
};

/// n distinct indices below `total`, sorted, drawn without replacement by
/// Floyd's algorithm over std::mt19937_64 seeded with `seed`. n >= total
/// selects everything.
std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t n, std::uint64_t seed);

ScanResult scan_model(std::shared_ptr<const Model> model, const ScanOptions& options = {});

ScanSummary summarize(const std::vector<ScanRecord>& records);

/// instance_index,x1..xm,class,sv_1..sv_m,relevant,issue,v_i,v_j
void write_scan_csv(std::ostream& out, const FeatureSpace& space, const std::vector<ScanRecord>& records);
std::string scan_csv(const FeatureSpace& space, const std::vector<ScanRecord>& records);

/// {"total":..,"issues":..,"fraction":..,"zero_sv_relevant":..}
nlohmann::json to_json(const ScanSummary& summary);

} // namespace shapxp
