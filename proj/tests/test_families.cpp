#include <doctest.h>

#include <random>

#include "shapxp/errors.hpp"
#include "shapxp/explain.hpp"
#include "shapxp/families.hpp"
#include "shapxp/shapley.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shapxp;
using fixture::q;

namespace {

std::vector<Rational> numeric_sv(const FamilySpec& spec) {
  auto inst = instantiate(spec);
  return shapley_values(fixture::problem(inst.table, inst.instance)).sv;
}

FamilySpec random_spec(std::mt19937_64& rng, Family family) {
  std::uniform_int_distribution<std::int64_t> draw(-20, 20);
  while (true) {
    FamilySpec spec{family, draw(rng), {}, 1};
    for (int j = 0; j < sigma_count(family); ++j) spec.sigma.push_back(draw(rng));
    try {
      validate(spec);
      return spec;
    } catch (const InputError&) {
    }
  }
}

} // namespace

TEST_CASE("reference parameter picks") {
  CHECK(symbolic_sv(Family::A, 3, {4, 0}) == std::vector<Rational>{q(0), q(1, 2)});
  CHECK(symbolic_sv(Family::B, 1, {0, 3, 3, 0}) == std::vector<Rational>{q(0), q(-1, 8), q(-1, 8)});
  CHECK(symbolic_sv(Family::B, 4, {0, 12, 12, 0}) == std::vector<Rational>{q(0), q(-1, 2), q(-1, 2)});
  CHECK(symbolic_sv(Family::C, 1, {0, 2, 0, 0, 5, 0, 0, 8, 0}) == std::vector<Rational>{q(0), q(1, 6), q(-1, 2)});
  CHECK(symbolic_sv(Family::C, 1, {3, 4, 8, 0, 0, 0, 0, 0, 0}) == std::vector<Rational>{q(0), q(-1, 2), q(1, 6)});
  CHECK(symbolic_sv(Family::C5, 1, {2, 0, 0, 4, 4, 0}) == std::vector<Rational>{q(0), q(1, 6), q(-1, 2)});
  CHECK(symbolic_sv(Family::D, 1, {5, 2, 4, 9}) == std::vector<Rational>{q(0), q(1, 9), q(1, 18), q(-1, 2)});
}

TEST_CASE("arity and preconditions") {
  CHECK_THROWS_AS(symbolic_sv(Family::B, 1, {0, 3, 3}), InputError);
  CHECK_THROWS_AS(validate({Family::A, 3, {3, 0}, 1}), InputError);
  CHECK_THROWS_AS(validate({Family::D, 0, {5, 2, 4, 9}, 1}), InputError);
  CHECK_THROWS_AS(validate({Family::C5, 1, {2, 0, 0, 4, 4, 0}, 0}), InputError);
  CHECK_NOTHROW(validate({Family::C5, 1, {2, 0, 0, 4, 4, 0}, 1}));
  CHECK(parse_family("C5") == Family::C5);
  CHECK_THROWS_AS(parse_family("e"), InputError);
}

TEST_CASE("instantiated tables follow the family layouts") {
  auto a = instantiate({Family::A, 3, {4, 0}, 1});
  CHECK(a.table.values() == std::vector<ClassValue>{0, 4, 3, 3});
  CHECK(a.instance == Point{1, 1});
  CHECK(a.prediction == 3);

  auto c = instantiate({Family::C, 1, {0, 2, 0, 0, 5, 0, 0, 8, 0}, 1});
  CHECK(c.table.values() == std::vector<ClassValue>{0, 2, 0, 0, 5, 0, 0, 8, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(to_tabular(*fixture::load("kc1_dt.json")) == c.table);

  auto c5 = instantiate({Family::C5, 1, {2, 0, 0, 4, 4, 0}, 1});
  CHECK(c5.table.values() == std::vector<ClassValue>{2, 0, 0, 4, 4, 0, 1, 1, 1, 1, 1, 1});
  CHECK(c5.instance == Point{1, 1, 2});

  auto d = instantiate({Family::D, 1, {5, 2, 4, 9}, 1});
  CHECK(d.table.values().size() == 24);
  CHECK(d.table.evaluate({0, 0, 0, 1}) == 5);
  CHECK(d.table.evaluate({0, 1, 1, 1}) == 9);
  CHECK(d.table.evaluate({0, 1, 1, 2}) == 0);
  CHECK(d.table.evaluate({1, 0, 1, 0}) == 1);
  CHECK(d.instance == Point{1, 1, 1, 2});
}

TEST_CASE("property: closed forms agree with the numeric engine") {
  std::mt19937_64 rng(17);
  for (Family f : {Family::A, Family::B, Family::C, Family::C5, Family::D}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto spec = random_spec(rng, f);
      CHECK(symbolic_sv(spec) == numeric_sv(spec));
    }
    // each coefficient column is recovered from a unit parameter vector
    const auto& form = symbolic_form(f).coefficients;
    for (int j = 0; j < sigma_count(f); ++j) {
      auto base = FamilySpec{f, 1000, std::vector<std::int64_t>(sigma_count(f), 2), 1};
      auto base_j = base;
      base_j.sigma[j] = 3;
      auto a = numeric_sv(base), b = numeric_sv(base_j);
      for (std::size_t i = 0; i < form.size(); ++i) CHECK(b[i] - a[i] == form[i][j + 1]);
    }
  }
}

TEST_CASE("the canonical strategy returns the reference picks") {
  CHECK(solve_family(Family::A) == FamilySpec{Family::A, 3, {4, 0}, 1});
  CHECK(solve_family(Family::C) == FamilySpec{Family::C, 1, {0, 2, 0, 0, 5, 0, 0, 8, 0}, 1});
  CHECK(solve_family(Family::C5) == FamilySpec{Family::C5, 1, {2, 0, 0, 4, 4, 0}, 1});
  SolveOptions scaled;
  scaled.scale = 4;
  auto b = solve_family(Family::B, scaled);
  CHECK(b == FamilySpec{Family::B, 4, {0, 12, 12, 0}, 4});
  CHECK(symbolic_sv(b) == std::vector<Rational>{q(0), q(-1, 2), q(-1, 2)});
}

TEST_CASE("property: every solution yields the misleading configuration") {
  for (Family f : {Family::A, Family::B, Family::C, Family::C5, Family::D}) {
    for (auto strategy : {SolveStrategy::Canonical, SolveStrategy::Search}) {
      for (std::uint64_t seed : {0u, 7u, 12345u}) {
        SolveOptions options;
        options.strategy = strategy;
        options.seed = seed;
        auto spec = solve_family(f, options);
        CHECK(solve_family(f, options) == spec);
        auto inst = instantiate(spec);
        auto p = fixture::problem(inst.table, inst.instance);
        auto sv = shapley_values(p).sv;
        CHECK(sv == symbolic_sv(spec));
        CHECK(sv[0] == 0);
        for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] != 0);
        auto rel = relevancy_report(p);
        CHECK(rel.relevant == FeatureSet::of({0}));
        CHECK(rel.irrelevant == p.all_features().without(0));
        CHECK(certificate_json(spec)["constraints_checked"] == true);
      }
    }
  }
}

TEST_CASE("property: family A constraints are closed under scaling") {
  for (std::int64_t beta = 0; beta <= 12; ++beta)
    for (std::int64_t gamma = 0; gamma <= 12; ++gamma) {
      if ((3 * beta + gamma) % 4 != 0) continue;
      FamilySpec spec{Family::A, (3 * beta + gamma) / 4, {beta, gamma}, 1};
      if (spec.alpha == beta || spec.alpha == gamma || !misleading(symbolic_sv(spec))) continue;
      for (std::int64_t psi = 1; psi <= 6; ++psi) {
        FamilySpec s{Family::A, spec.alpha * psi, {beta * psi, gamma * psi}, psi};
        CHECK_NOTHROW(validate(s));
        CHECK(misleading(numeric_sv(s)));
      }
    }
}

TEST_CASE("search budget") {
  SolveOptions options;
  options.strategy = SolveStrategy::Search;
  options.budget = 1;
  CHECK_THROWS_AS(solve_family(Family::C, options), NoSolutionError);
  options.budget = 100000;
  options.grid_max = 0;
  CHECK_THROWS_AS(solve_family(Family::B, options), NoSolutionError);
}

TEST_CASE("certificate") {
  auto cert = certificate_json({Family::C5, 1, {2, 0, 0, 4, 4, 0}, 1});
  CHECK(cert["family"] == "c5");
  CHECK(cert["params"]["alpha"] == 1);
  CHECK(cert["params"]["sigma"] == nlohmann::json({2, 0, 0, 4, 4, 0}));
  CHECK(cert["sv"][1]["value"] == "1/6");
  CHECK(cert["sv"][2]["value"] == "-1/2");
  CHECK(cert["axps"] == nlohmann::json::parse("[[1]]"));
  CHECK(cert["instance"] == nlohmann::json({1, 1, 2}));
  CHECK(cert["constraints_checked"] == true);
  auto a = certificate_json({Family::A, 3, {4, 0}, 1});
  CHECK(a["params"]["delta"] == 3);
  CHECK(a["params"]["beta"] == 4);
}
