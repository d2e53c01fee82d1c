#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "shapxp/model/space.hpp"

namespace shapxp::cli {

/// "1,0,0" -> (1,0,0). Throws UsageError on bad syntax, arity or range.
Point parse_instance(const std::string& text, const FeatureSpace& space);

/// "1,3,2" -> 0-based permutation of the m features. Throws UsageError.
std::vector<int> parse_order(const std::string& text, int m);

/// Runs one command. Returns 0 on success, 1 on domain errors, 2 on usage
/// errors; reports go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace shapxp::cli
