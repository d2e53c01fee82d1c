#include <doctest.h>

#include <random>
#include <sstream>

#include "shapxp/dataset.hpp"
#include "shapxp/errors.hpp"
#include "shapxp/families.hpp"
#include "shapxp/scan.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shapxp;
using fixture::q;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return load_consistent_dataset(in);
}

} // namespace

TEST_CASE("k1 instance analysis") {
  auto r = analyze_instance(fixture::problem(fixture::k1_table(), {1, 0, 0}));
  CHECK(r.index == 4);
  CHECK(r.issue);
  CHECK(r.v_i == q(7, 24));
  CHECK(r.v_j == q(1, 24));
  CHECK(r.relevant == FeatureSet::of({0}));
  CHECK(r.sv == std::vector<Rational>{q(-1, 24), q(-1, 6), q(-7, 24)});
}

TEST_CASE("family C target instance is flagged") {
  auto model = fixture::load("kc1_dt.json");
  auto r = analyze_instance(ExplanationProblem(model, {1, 2, 2}));
  CHECK(r.issue);
  CHECK(r.sv[0] == 0);
  CHECK(r.v_j == 0);
  CHECK(*r.v_i > 0);
}

TEST_CASE("single feature classifiers never raise the issue") {
  auto r = analyze_instance(fixture::problem(TabularClassifier(FeatureSpace({3}), {0, 1, 2}), {2}));
  CHECK_FALSE(r.issue);
  CHECK_FALSE(r.v_i.has_value());
  CHECK(r.v_j.has_value());
}

TEST_CASE("scans cover the whole space in index order") {
  auto k1 = scan_model(std::make_shared<const Model>(fixture::k1_table()));
  REQUIRE(k1.records.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) CHECK(k1.records[k].index == k);
  CHECK(k1.summary.total == 8);

  auto t = oracle::from_model(Model(fixture::k1_table()));
  std::uint64_t issues = 0;
  for (const auto& x : t.points()) {
    auto sv = oracle::shapley(t, x);
    auto axps = oracle::axps(t, x);
    std::uint64_t rel = 0;
    for (auto a : axps) rel |= a;
    bool issue = false;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(rel >> i & 1) && (rel >> j & 1) && abs(sv[i]) > abs(sv[j])) issue = true;
    issues += issue;
  }
  CHECK(k1.summary.issues == issues);

  auto k2 = scan_model(fixture::load("k2_dt.json"));
  CHECK(k2.records.size() == 18);
}

TEST_CASE("sampling is seeded and without replacement") {
  auto idx = sample_indices(1000, 200, 42);
  CHECK(idx.size() == 200);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  CHECK(idx.back() < 1000);
  CHECK(sample_indices(1000, 200, 42) == idx);
  CHECK(sample_indices(1000, 200, 43) != idx);
  CHECK(sample_indices(5, 9, 1) == std::vector<std::uint64_t>{0, 1, 2, 3, 4});

  // every index is reachable and draws are roughly uniform
  std::vector<int> hits(10);
  for (std::uint64_t seed = 0; seed < 2000; ++seed)
    for (auto k : sample_indices(10, 3, seed)) ++hits[k];
  for (int h : hits) CHECK((h > 450 && h < 750));

  auto model = fixture::load("k2_dt.json");
  ScanOptions options;
  options.sample = 5;
  options.seed = 3;
  auto a = scan_model(model, options);
  options.jobs = 3;
  auto b = scan_model(model, options);
  CHECK(a.records.size() == 5);
  CHECK(scan_csv(space_of(*model), a.records) == scan_csv(space_of(*model), b.records));
}

TEST_CASE("property: records are self-consistent and the summary recounts them") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<int> dom;
    int m = std::uniform_int_distribution<int>(2, 5)(rng);
    for (int i = 0; i < m; ++i) dom.push_back(std::uniform_int_distribution<int>(2, 3)(rng));
    auto model = std::make_shared<const Model>(oracle::random_tree(rng, dom, 5, 3));
    ScanOptions options;
    options.jobs = 2;
    auto result = scan_model(model, options);
    std::uint64_t issues = 0, zero = 0;
    for (const auto& r : result.records) {
      CHECK((r.relevant | r.irrelevant) == FeatureSet::all(m));
      CHECK_FALSE(r.relevant.intersects(r.irrelevant));
      CHECK(r.issue == (r.v_i && r.v_j && *r.v_i > *r.v_j));
      auto again = analyze_instance(ExplanationProblem(model, r.instance));
      CHECK(again.sv == r.sv);
      CHECK(again.v_i == r.v_i);
      CHECK(again.v_j == r.v_j);
      issues += r.issue;
      bool z = false;
      for (int j : r.relevant.indices()) z = z || r.sv[j] == 0;
      zero += z;
    }
    CHECK(result.summary.total == result.records.size());
    CHECK(result.summary.issues == issues);
    CHECK(result.summary.zero_sv_relevant == zero);
  }
}

TEST_CASE("property: every family flags its target instance") {
  for (Family f : {Family::A, Family::B, Family::C, Family::C5, Family::D}) {
    auto spec = solve_family(f);
    auto inst = instantiate(spec);
    auto result = scan_model(std::make_shared<const Model>(inst.table));
    CHECK(result.records.size() == inst.table.space().total_points());
    const auto& r = result.records[inst.table.space().index_of(inst.instance)];
    CHECK(r.instance == inst.instance);
    CHECK(r.issue);
    CHECK(r.relevant == FeatureSet::of({0}));
    CHECK(r.sv[0] == 0);
    CHECK(result.summary.zero_sv_relevant >= 1);
  }
}

TEST_CASE("scan CSV and summary") {
  auto result = scan_model(std::make_shared<const Model>(fixture::k1_table()));
  auto csv = scan_csv(FeatureSpace({2, 2, 2}), result.records);
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "instance_index,x1,x2,x3,class,sv_1,sv_2,sv_3,relevant,issue,v_i,v_j");
  for (int k = 0; k <= 4; ++k) std::getline(lines, row);
  CHECK(row == "4,1,0,0,1,-0.0417,-0.1667,-0.2917,1,1,0.2917,0.0417");
  auto j = to_json(result.summary);
  CHECK(j["total"] == 8);
  CHECK(j["issues"] == result.summary.issues);
  CHECK(j.contains("fraction"));
  CHECK(j.contains("zero_sv_relevant"));
}

TEST_CASE("dataset loading keeps the first of contradicting rows") {
  auto d = parse("a,b,y\n0,0,1\n0,0,2\n1,0,1\n");
  CHECK(d.size() == 2);
  CHECK(d.rows == std::vector<Point>{{0, 0}, {1, 0}});
  CHECK(d.labels == std::vector<ClassValue>{1, 1});
  CHECK(d.dropped == 1);

  auto same = parse("a,b,y\n0,0,1\n0,0,1\n1,1,0\n");
  CHECK(same.size() == 3);
  CHECK(same.dropped == 0);

  auto cat = parse("colour,size,label\nred,1,yes\nblue,0,no\ngreen,2,yes\n");
  CHECK(cat.space.domain_sizes() == std::vector<int>{3, 3});
  CHECK(cat.space.name(0) == "colour");
  CHECK(cat.rows[0] == Point{2, 1});
  CHECK(cat.class_symbols == std::vector<std::string>{"no", "yes"});
  CHECK(cat.labels == std::vector<ClassValue>{1, 0, 1});

  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("a,y\n"), InputError);
  CHECK_THROWS_AS(parse("a,y\n1\n"), InputError);
  CHECK_THROWS_AS(parse("a,y\n1,\n"), InputError);
}

TEST_CASE("diagrams built from datasets") {
  std::ostringstream csv;
  csv << "x1,x2,x3,class\n";
  auto k1 = fixture::k1_table();
  for (const auto& [x, c] : k1.rows()) csv << x[0] << ',' << x[1] << ',' << x[2] << ',' << c << '\n';
  auto dd = build_omdd_from_dataset(parse(csv.str()));
  CHECK(dd.is_reduced());
  CHECK(to_tabular(Model(dd)) == k1);

  std::ostringstream csv2;
  csv2 << "x1,x2,x3,class\n";
  auto k2 = fixture::k2_table();
  auto rows = k2.rows();
  std::reverse(rows.begin(), rows.end());
  for (const auto& [x, c] : rows) csv2 << x[0] << ',' << x[1] << ',' << x[2] << ',' << c << '\n';
  CHECK(to_tabular(Model(build_omdd_from_dataset(parse(csv2.str())))) == k2);

  auto partial = parse("a,b,y\n0,0,5\n1,1,5\n1,0,3\n");
  CHECK(majority_class(partial) == 5);
  auto completed = to_tabular(Model(build_omdd_from_dataset(partial)));
  CHECK(completed.values() == std::vector<ClassValue>{5, 5, 3, 5});

  CHECK(majority_class(parse("a,y\n0,2\n1,1\n")) == 1);
  CHECK_THROWS_AS(build_omdd_from_dataset(parse("a,b,y\n0,0,1\n")), InvariantError);
}
