#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapxp/model/model.hpp"
#include "shapxp/rational.hpp"

namespace shapxp {

/// Parameterized counterexample families. Each is a tabular classifier whose
/// x1 = 1 half predicts alpha and whose x1 = 0 half holds the sigma
/// parameters, together with a fixed target instance.
///
///   A:  2 boolean features, rows (gamma, beta, alpha, alpha), instance (1,1)
///   B:  3 boolean features, sigma1..4, instance (1,1,1)
///   C:  {0,1} x {0,1,2}^2, sigma1..9, instance (1,2,2)
///   C5: {0,1}^2 x {0,1,2}, sigma1..6, instance (1,1,2)
///   D:  {0,1}^3 x {0,1,2}, sigma1..4 on the x4 = 1 rows of the x1 = 0 half
///       (other rows 0), instance (1,1,1,2)
enum class Family { A, B, C, C5, D };

std::string family_name(Family family);
/// Accepts a, b, c, c5, d (any case). Throws InputError.
Family parse_family(const std::string& name);

/// Number of sigma parameters (for A: beta and gamma).
int sigma_count(Family family);
Point family_instance(Family family);

struct FamilySpec {
  Family family = Family::A;
  std::int64_t alpha = 0;
  std::vector<std::int64_t> sigma;  // A: {beta, gamma}; delta is alpha
  std::int64_t scale = 1;           // psi; alpha and sigma are already multiplied by it

  bool operator==(const FamilySpec&) const = default;
};

/// Throws InputError on arity mismatch, a non-positive scale, or alpha
/// colliding with a sigma (or with the constant 0 rows of family D).
void validate(const FamilySpec& spec);

/// Closed-form Shapley values as linear forms over (alpha, sigma_1, ...):
/// coefficients[i][0] multiplies alpha, coefficients[i][j] multiplies sigma_j.
struct SymbolicSv {
  std::vector<std::vector<Rational>> coefficients;
};

const SymbolicSv& symbolic_form(Family family);

/// Evaluates the closed forms at the given parameters.
std::vector<Rational> symbolic_sv(Family family, std::int64_t alpha, const std::vector<std::int64_t>& sigma);
std::vector<Rational> symbolic_sv(const FamilySpec& spec);

struct FamilyInstance {
  TabularClassifier table;
  Point instance;
  ClassValue prediction = 0;
};

FamilyInstance instantiate(const FamilySpec& spec);

enum class SolveStrategy {
  Canonical,  // the fixed reference pick of each family
  Search,  // seeded random search over a small integer grid
};

struct SolveOptions {
  SolveStrategy strategy = SolveStrategy::Canonical;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;  // candidate sigma vectors tried
  int grid_max = 12;              // sigma_j drawn from 0..grid_max
  std::int64_t scale = 1;
};

/// Parameters with Sv(1) = 0, Sv(i) != 0 for i > 1 and a valid spec.
/// Throws NoSolutionError when the budget runs out.
FamilySpec solve_family(Family family, const SolveOptions& options = {});

/// True iff Sv(1) = 0 and Sv(i) != 0 for every other feature.
bool misleading(const std::vector<Rational>& sv);

/// Instantiates, recomputes Sv and the explanations, and checks the family's
/// constraints: {"family","params","instance","class","sv","axps",
/// "constraints_checked"}.
nlohmann::json certificate_json(const FamilySpec& spec);

} // namespace shapxp
