#include <doctest.h>

#include <random>

#include "shapxp/errors.hpp"
#include "shapxp/model/model_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shapxp;
using fixture::q;

TEST_CASE("rational rendering") {
  CHECK(to_fraction_string(q(-7, 24)) == "-7/24");
  CHECK(to_fraction_string(q(4, 2)) == "2");
  CHECK(to_decimal_string(q(-7, 24)) == "-0.2917");
  CHECK(to_decimal_string(q(1, 6)) == "0.1667");
  CHECK(to_decimal_string(q(-1, 100000)) == "0.0000");
  CHECK(to_decimal_string(q(1, 20000)) == "0.0001");
  CHECK(to_decimal_string(q(3, 2)) == "1.5000");
  CHECK(to_dual_string(q(-7, 24)) == "-7/24=-0.2917");
  CHECK(parse_rational("10/54") == q(5, 27));
  CHECK(parse_rational("-3") == q(-3));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK(factorial(5) == 120);
}

TEST_CASE("feature sets") {
  auto s = FeatureSet::of({0, 2});
  CHECK(s.size() == 2);
  CHECK(s.one_based() == std::vector<int>{1, 3});
  CHECK(to_string(s) == "{1,3}");
  CHECK(s.complement(3) == FeatureSet::of({1}));
  CHECK(FeatureSet::of({0}).proper_subset_of(s));
  CHECK_FALSE(s.proper_subset_of(s));
  CHECK(lex_less(FeatureSet::of({0, 2}), FeatureSet::of({1})));
  CHECK(lex_less(FeatureSet::of({0}), FeatureSet::of({0, 1})));
}

TEST_CASE("feature space indexing") {
  FeatureSpace space({2, 3, 3});
  CHECK(space.total_points() == 18);
  CHECK(space.index_of({1, 2, 2}) == 17);
  CHECK(space.point_at(5) == Point{0, 1, 2});
  for (std::uint64_t k = 0; k < space.total_points(); ++k) CHECK(space.index_of(space.point_at(k)) == k);
  CHECK(space.cube_size(FeatureSet::of({1})) == 6);
  CHECK(space.name(1) == "x2");
  CHECK_THROWS_AS(FeatureSpace({2, 1}), InputError);
  CHECK_THROWS_AS(FeatureSpace(std::vector<int>{}), InputError);
  CHECK_THROWS_AS(space.check_point({1, 3, 0}), InputError);
  CHECK_THROWS_AS(space.check_point({1, 0}), InputError);

  std::vector<Point> seen;
  for_each_in_cube(space, FeatureSet::of({0, 2}), {1, 0, 2}, [&](const Point& x) {
    seen.push_back(x);
    return true;
  });
  CHECK(seen == std::vector<Point>{{1, 0, 2}, {1, 1, 2}, {1, 2, 2}});
  CHECK(hamming_distance({1, 0, 0}, {0, 0, 1}) == 2);
  CHECK(difference_set({1, 0, 0}, {0, 0, 1}) == FeatureSet::of({0, 2}));
}

TEST_CASE("tabular classifier") {
  auto k1 = fixture::k1_table();
  CHECK(k1.evaluate({1, 0, 0}) == 1);
  CHECK(k1.evaluate({0, 0, 1}) == 3);
  CHECK(k1.class_values() == std::vector<ClassValue>{0, 1, 2, 3});
  CHECK_THROWS_AS(TabularClassifier(FeatureSpace({2}), {1, 1}), InvariantError);
  CHECK_THROWS_AS(TabularClassifier(FeatureSpace({2}), {0, 1, 1}), InvariantError);
  CHECK_THROWS_AS(TabularClassifier::from_rows(FeatureSpace({2}), {{{0}, 1}}), InvariantError);
  auto rows = k1.rows();
  std::reverse(rows.begin(), rows.end());
  CHECK(TabularClassifier::from_rows(k1.space(), rows) == k1);
  CHECK(k1.find_disagreement(FeatureSet::of({1, 2}), {1, 0, 0}, 1) == Point{0, 0, 0});
  CHECK_FALSE(k1.find_disagreement(FeatureSet::of({0}), {1, 0, 0}, 1).has_value());
}

TEST_CASE("decision tree validation") {
  FeatureSpace space({2, 2});
  auto leaf0 = DtNode::leaf(0), leaf1 = DtNode::leaf(1);
  auto split = [](int f, ValueSet a, int ca, ValueSet b, int cb) { return DtNode{f, 0, {{a, ca}, {b, cb}}}; };
  ValueSet zero(2), one(2), both(2, true);
  zero.insert(0);
  one.insert(1);
  CHECK_NOTHROW(DecisionTree(space, {split(0, zero, 1, one, 2), leaf0, leaf1}));
  CHECK_THROWS_AS(DecisionTree(space, {split(0, zero, 1, both, 2), leaf0, leaf1}), InvariantError);
  CHECK_THROWS_AS(DecisionTree(space, {split(0, zero, 1, zero, 2), leaf0, leaf1}), InvariantError);
  CHECK_THROWS_AS(DecisionTree(space, {split(0, zero, 1, one, 2), leaf0, leaf0}), InvariantError);
  CHECK_THROWS_AS(DecisionTree(space, {split(0, zero, 1, one, 2), split(0, zero, 2, one, 3), leaf0, leaf1}),
                  InvariantError);
  CHECK_THROWS_AS(DecisionTree(space, {split(0, zero, 1, one, 7), leaf0}), InputError);
}

TEST_CASE("k1 diagram has four internal nodes under order 1,2,3") {
  auto k1 = fixture::k1_table();
  auto dd = tabular_to_omdd(k1, {0, 1, 2});
  CHECK(dd.nonterminal_count() == 4);
  CHECK(dd.is_reduced());
  CHECK(reduce(dd) == dd);
  for (std::uint64_t k = 0; k < 8; ++k) CHECK(dd.evaluate(k1.space().point_at(k)) == k1.at_index(k));
}

TEST_CASE("property: diagrams and trees agree with their tables under any order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    auto t = oracle::random_table(rng, 1, 5, 3, 3);
    auto table = oracle::to_classifier(t);
    auto order = identity_order(t.m());
    std::shuffle(order.begin(), order.end(), rng);
    auto dd = tabular_to_omdd(table, order);
    CHECK(dd.is_reduced());
    CHECK(to_tabular(Model(dd)) == table);
    CHECK(reduce(dd) == dd);

    auto v = oracle::random_point(rng, t.dom);
    auto fixed = FeatureSet(std::uniform_int_distribution<std::uint64_t>(0, (1u << t.m()) - 1)(rng));
    Integer expected = 0;
    for (const auto& x : t.points())
      if (oracle::agrees(x, v, fixed.bits())) expected += t.at(x);
    CHECK(dd.path_sum(fixed, v) == expected);
    CHECK(sum_kappa_over_cube(Model(table), fixed, v) == expected);

    auto c = t.at(v);
    auto found = find_disagreement(Model(dd), fixed, v, c);
    bool exists = false;
    for (const auto& x : t.points())
      if (oracle::agrees(x, v, fixed.bits()) && t.at(x) != c) exists = true;
    REQUIRE(found.has_value() == exists);
    if (found) {
      CHECK(oracle::agrees(*found, v, fixed.bits()));
      CHECK(t.at(*found) != c);
    }
  }
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<int> dom;
    int m = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < m; ++i) dom.push_back(std::uniform_int_distribution<int>(2, 3)(rng));
    auto dt = oracle::random_tree(rng, dom, 6, 3);
    auto t = oracle::from_model(Model(dt));
    auto v = oracle::random_point(rng, dom);
    auto fixed = FeatureSet(std::uniform_int_distribution<std::uint64_t>(0, (1u << m) - 1)(rng));
    Integer expected = 0;
    for (const auto& x : t.points())
      if (oracle::agrees(x, v, fixed.bits())) expected += t.at(x);
    CHECK(dt.path_sum(fixed, v) == expected);
    auto found = dt.find_disagreement(fixed, v, t.at(v));
    if (found) {
      CHECK(oracle::agrees(*found, v, fixed.bits()));
      CHECK(t.at(*found) != t.at(v));
    }
    auto dd = to_omdd(Model(dt), identity_order(m));
    CHECK(to_tabular(Model(dd)) == to_tabular(Model(dt)));
  }
}

TEST_CASE("model files round-trip") {
  for (const char* name : {"k1_table.json", "k1_dt.json", "k2_dt.json", "kc1_dt.json"}) {
    auto model = fixture::load(name);
    auto again = model_from_json(model_to_json(*model));
    CHECK(kind_name(again) == kind_name(*model));
    CHECK(to_tabular(again) == to_tabular(*model));
    CHECK(dump_json(model_to_json(again)) == dump_json(model_to_json(*model)));
  }
  auto k1 = fixture::load("k1_table.json");
  CHECK(to_tabular(*k1) == fixture::k1_table());
  CHECK(to_tabular(*fixture::load("k1_dt.json")) == fixture::k1_table());
  CHECK(to_tabular(*fixture::load("k2_dt.json")) == fixture::k2_table());

  auto dd = tabular_to_omdd(fixture::k2_table(), {2, 0, 1});
  auto back = model_from_json(model_to_json(Model(dd)));
  CHECK(std::get<Omdd>(back).order() == std::vector<int>{2, 0, 1});
  CHECK(to_tabular(back) == fixture::k2_table());
}

TEST_CASE("malformed model files") {
  auto doc = model_to_json(Model(fixture::k1_table()));
  auto bad = doc;
  bad["rows"][0][3] = 0.5;
  CHECK_THROWS_AS(model_from_json(bad), InputError);
  bad = doc;
  bad["classes"] = {0, 1, 2};
  CHECK_THROWS_AS(model_from_json(bad), InputError);
  bad = doc;
  bad["type"] = "forest";
  CHECK_THROWS_AS(model_from_json(bad), InputError);
  bad = doc;
  bad["rows"].erase(0);
  CHECK_THROWS_AS(model_from_json(bad), InvariantError);
  CHECK_THROWS_AS(read_model_file(fixture::data_path("missing.json")), InputError);
}

TEST_CASE("explanation problem checks the prediction") {
  auto model = std::make_shared<const Model>(fixture::k1_table());
  ExplanationProblem p(model, {1, 0, 0});
  CHECK(p.prediction() == 1);
  CHECK_THROWS_AS(ExplanationProblem(model, {1, 0, 0}, 2), InvariantError);
  CHECK_THROWS_AS(ExplanationProblem(model, {1, 2, 0}), InputError);
}

TEST_CASE("enumeration caps") {
  Limits small;
  small.max_enumerated_points = 4;
  CHECK_THROWS_AS(sum_kappa_over_cube(Model(fixture::k1_table()), FeatureSet{}, {1, 0, 0}, Backend::Enumeration, small),
                  CapacityError);
  auto dt = fixture::load("k1_dt.json");
  CHECK(sum_kappa_over_cube(*dt, FeatureSet{}, {1, 0, 0}, Backend::PathCounting, small) == 12);
}
