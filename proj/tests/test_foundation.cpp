#include <atomic>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "satlab/config.hpp"
#include "satlab/core.hpp"
#include "satlab/io.hpp"
#include "satlab/kernels.hpp"
#include "satlab/parallel.hpp"

using namespace satlab;

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("2/4").str() == "1/2");
  CHECK(Rational::parse("-3/6").str() == "-1/2");
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("21/60") == Rational(7, 20));
  for (const char* s : {"1/3", "-5/7", "0", "12"}) CHECK(Rational::parse(s).str() == s);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 5) - Rational(1, 3) == Rational(1, 15));
  CHECK(Rational(7, 3).floor() == 2);
  CHECK(Rational(-1, 3).floor() == -1);
  CHECK(inverse_power_of_two(3) == Rational(1, 8));
  CHECK(Rational(1, 3) < Rational(2, 5));
  Rational r(1);
  r.sub_mul(Rational(1, 2), Rational(2, 3));
  CHECK(r == Rational(2, 3));
}

TEST_CASE("label functions") {
  const LabelFunction f = LabelFunction::from_string("0110");
  CHECK(f.size() == 4);
  CHECK(!f[0]);
  CHECK(f[1]);
  CHECK(f.count() == 2);
  CHECK(f.str() == "0110");
  CHECK((~f).str() == "1001");
  CHECK(f.ones() == std::vector<std::size_t>{1, 2});
  CHECK(f.restrict_to({2, 0}).str() == "10");
  CHECK(LabelFunction::from_vector({1, 0, 1}).str() == "101");

  LabelFunction big(130, true);
  CHECK(big.count() == 130);
  CHECK(big.all());
  big.flip(129);
  CHECK(big.count() == 129);
  CHECK((~big).count() == 1);
  // numeric order with the first point as the low bit
  CHECK(LabelFunction::from_string("10") < LabelFunction::from_string("01"));
  CHECK_THROWS(f & LabelFunction(5));
}

TEST_CASE("scalar and simd kernels agree") {
  using namespace satlab::kernels;
  const Table& s = scalar_table();
  std::vector<const Table*> others;
  if (const Table* t = avx2_table()) others.push_back(t);
  if (const Table* t = neon_table()) others.push_back(t);
  MESSAGE("active kernels: " << active().name << ", variants under test: " << others.size());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t words = 1 + rng() % 3;
    const std::size_t n = rng() % 40;
    std::vector<std::uint64_t> rows(n * words), target(words), mask(words);
    // few distinct bits so that agreements actually happen
    for (auto& w : rows) w = rng() & rng() & 0xF0F0ull;
    for (auto& w : target) w = rng() & 0xF0F0ull;
    for (auto& w : mask) w = trial % 3 == 0 ? ~0ull : (rng() & 0x3333ull);
    std::vector<std::uint32_t> out_s(n + 1), out_o(n + 1);
    const std::size_t cs = s.count_agree(rows.data(), n, words, target.data(), mask.data());
    const std::size_t fs = s.first_agree(rows.data(), n, words, target.data(), mask.data());
    const std::size_t ks = s.filter_agree(rows.data(), n, words, target.data(), mask.data(), out_s.data());
    CHECK(cs == ks);
    std::vector<std::uint32_t> pop_s(n), pop_o(n);
    s.masked_popcount(rows.data(), n, words, mask.data(), pop_s.data());
    std::vector<std::uint64_t> single(n), proj_s(n), proj_o(n);
    for (auto& w : single) w = rng();
    const std::uint64_t pm = rng();
    s.project(single.data(), n, pm, proj_s.data());
    for (const Table* o : others) {
      CHECK(o->count_agree(rows.data(), n, words, target.data(), mask.data()) == cs);
      CHECK(o->first_agree(rows.data(), n, words, target.data(), mask.data()) == fs);
      CHECK(o->filter_agree(rows.data(), n, words, target.data(), mask.data(), out_o.data()) == ks);
      for (std::size_t i = 0; i < ks; ++i) CHECK(out_o[i] == out_s[i]);
      o->masked_popcount(rows.data(), n, words, mask.data(), pop_o.data());
      CHECK(pop_o == pop_s);
      o->project(single.data(), n, pm, proj_o.data());
      CHECK(proj_o == proj_s);
    }
  }
  CHECK(pext_scalar(0b101101, 0b001110) == 0b110);
}

TEST_CASE("hypothesis classes keep insertion order") {
  const HypothesisClass c = make_class({"a", "b", "c"}, {{1, 0, 0}, {0, 1, 0}});
  CHECK(c.size() == 2);
  CHECK(c.index_of(LabelFunction::from_string("010")) == 1u);
  CHECK(c.column(0).str() == "10");
  const HypothesisClass d = c.with_appended({LabelFunction::from_string("100"), LabelFunction::from_string("000")});
  CHECK(d.size() == 3);
  CHECK(d[2].str() == "000");
  CHECK(c.subset_of(d));
  CHECK(!d.subset_of(c));
  CHECK(make_class({"a", "b"}, {{1, 0}, {1, 0}}).size() == 1);
  CHECK(make_class({"a", "b"}, {{0, 1}, {1, 0}}).hypotheses() == make_class({"a", "b"}, {{1, 0}, {0, 1}}).hypotheses());
  CHECK_THROWS_AS(make_class({"a", "b"}, {{1, 0, 1}}), std::invalid_argument);
}

TEST_CASE("dual and class_from_graph") {
  const HypothesisClass c = make_class({"x1", "x2", "x3"}, {{1, 1, 0}, {0, 1, 1}});
  const HypothesisClass d = dual(c);
  CHECK(d.domain_size() == 2);
  CHECK(d.size() == 3);
  // dual twice realizes the same relation up to row order
  const HypothesisClass dd = dual(d);
  CHECK(dd.same_functions(c));

  const Graph anticlique(numbered_ids("v", 3), {});
  CHECK(class_from_graph(anticlique).size() == 1);
  const Graph clique(numbered_ids("v", 3), {{0, 1}, {0, 2}, {1, 2}});
  CHECK(class_from_graph(clique).size() == 3);
  const Graph looped(numbered_ids("v", 2), {{0, 1}}, {0});
  CHECK(looped.has_loop(0));
  CHECK(!looped.has_loop(1));
  CHECK(class_from_graph(looped)[0].str() == "11");
  CHECK_THROWS(Graph::from_rows({"a", "b"}, {LabelFunction::from_string("01"), LabelFunction::from_string("00")}));
}

TEST_CASE("weighted sets") {
  const WeightedSet u = WeightedSet::uniform({0, 2, 4});
  CHECK(u.weight_of(2) == Rational(1, 3));
  CHECK(u.weight_of(1) == Rational(0));
  CHECK(u.mass_on(LabelFunction::from_string("10100")) == Rational(2, 3));
  CHECK_THROWS(WeightedSet({{0, Rational(1, 2)}, {1, Rational(1, 3)}}));
  CHECK_THROWS(WeightedSet({{0, Rational(1, 2)}, {0, Rational(1, 2)}}));
  CHECK_THROWS(WeightedSet({{0, Rational(1)}, {1, Rational(0)}}));
}

TEST_CASE("special tree shape") {
  const SpecialTree t = SpecialTree::empty_shape(2, Side::domain, Side::hypothesis);
  CHECK(t.nodes.size() == 3);
  CHECK(t.leaves.size() == 4);
  const auto p = t.path(2);  // branch 10
  REQUIRE(p.size() == 2);
  CHECK(p[0] == std::pair<std::size_t, bool>{0, true});
  CHECK(p[1] == std::pair<std::size_t, bool>{2, false});
  CHECK(t.leaves_below(1) == std::vector<std::size_t>{0, 1});
  CHECK(SpecialTree::depth_of(0) == 0);
  CHECK(SpecialTree::depth_of(5) == 2);
}

TEST_CASE("json round trips") {
  const HypothesisClass c = make_class({"p", "q"}, {{1, 0}, {0, 0}});
  const Json j = to_json(c);
  CHECK(std::get<HypothesisClass>(instance_from_json(j)).hypotheses() == c.hypotheses());
  // re-ingesting our own output is the identity
  CHECK(to_json(std::get<HypothesisClass>(instance_from_json(j))) == j);
  const Graph g(numbered_ids("v", 3), {{0, 2}}, {1});
  const Graph g2 = std::get<Graph>(instance_from_json(to_json(g)));
  CHECK(g2.rows() == g.rows());
  const WeightedSet ws({{1, Rational(1, 3)}, {4, Rational(2, 3)}});
  CHECK(weighted_set_from_json(to_json(ws)).str() == ws.str());
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"domain": ["a"], "hypotheses": [[2]]})")), ParseError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"vertices": ["a"], "edges": [[0, 3]]})")), ParseError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"foo": 1})")), ParseError);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.json"), ParseError);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<std::atomic<int>> hits(200);
  parallel_for(200, [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(
                      10, [](std::size_t i) { if (i == 7) throw std::runtime_error("boom"); }, 3),
                  std::runtime_error);
}

TEST_CASE("caps") {
  CHECK(config::class_cap() >= 1);
  CHECK(config::graph_cap() >= 1);
  CHECK(std::string(config::prng_algorithm) == "mt19937_64");
}
