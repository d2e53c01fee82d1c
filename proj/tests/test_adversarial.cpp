#include <doctest.h>

#include <random>

#include "shapxp/adversarial.hpp"
#include "shapxp/explain.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shapxp;

TEST_CASE("k1 adversarial examples") {
  auto p = fixture::problem(fixture::k1_table(), {1, 0, 0});
  auto sets = minimal_adversarial_sets(p);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].changed == FeatureSet::of({0}));
  CHECK(sets[0].witness == Point{0, 0, 0});
  CHECK(sets[0].witness_class == 0);
  auto l0 = min_l0_distance(p);
  CHECK(l0.distance == 1);
  REQUIRE(l0.witnesses.size() == 1);
  CHECK(l0.witnesses[0].witness == Point{0, 0, 0});
  CHECK(ae_feature_set(p) == FeatureSet::of({0}));
  CHECK(to_json(sets, l0.distance).dump() ==
        R"({"min_l0":1,"minimal_sets":[{"changed":[1],"class":0,"witness":[0,0,0]}]})");
}

TEST_CASE("witnesses change exactly the requested features") {
  auto p = fixture::problem(fixture::k1_table(), {1, 0, 0});
  CHECK_FALSE(find_witness(p, FeatureSet{}).has_value());
  auto w = find_witness(p, FeatureSet::of({0, 2}));
  REQUIRE(w.has_value());
  CHECK(w->witness == Point{0, 0, 1});
  CHECK(w->witness_class == 3);
  CHECK_FALSE(find_witness(p, FeatureSet::of({1, 2})).has_value());

  auto q = fixture::problem(fixture::k2_table(), {0, 0, 0});
  auto x = find_witness(q, FeatureSet::of({1, 2}));
  REQUIRE(x.has_value());
  CHECK(x->witness == Point{0, 2, 2});
}

TEST_CASE("single feature classifier") {
  auto p = fixture::problem(TabularClassifier(FeatureSpace({3}), {0, 1, 1}), {1});
  auto l0 = min_l0_distance(p);
  CHECK(l0.distance == 1);
  CHECK(l0.witnesses.size() == 1);
  CHECK(l0.witnesses[0].witness == Point{0});
}

TEST_CASE("property: minimal change-sets are the CXps and avoid irrelevant features") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = oracle::random_table(rng, 1, 6, 3, 3, 729);
    auto v = oracle::random_point(rng, t.dom);
    auto p = fixture::problem(oracle::to_classifier(t), v);
    auto sets = minimal_adversarial_sets(p);
    std::vector<FeatureSet> changed;
    for (const auto& s : sets) {
      changed.push_back(s.changed);
      CHECK(difference_set(s.witness, v) == s.changed);
      CHECK(t.at(s.witness) != t.at(v));
      CHECK(t.at(s.witness) == s.witness_class);
    }
    CHECK(oracle::masks(changed) == oracle::sorted(oracle::minimal_change_sets(t, v)));
    CHECK(oracle::masks(changed) == oracle::sorted(oracle::cxps(t, v)));
    auto rel = relevancy_report(p);
    CHECK(ae_feature_set(p).subset_of(rel.relevant));

    auto l0 = min_l0_distance(p);
    CHECK(l0.distance == oracle::min_hamming(t, v));
    for (const auto& w : l0.witnesses) CHECK(hamming_distance(w.witness, v) == l0.distance);
  }
}
