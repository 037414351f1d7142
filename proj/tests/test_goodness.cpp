#include <numeric>
#include <random>

#include "doctest.h"
#include "satlab/dims.hpp"
#include "satlab/generators.hpp"
#include "satlab/goodness.hpp"
#include "satlab/satgraph.hpp"

using namespace satlab;

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

Rational power(const Rational& x, std::size_t m) {
  Rational r(1);
  for (std::size_t i = 0; i < m; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("opinions and majority functions") {
  const WeightedSet ws({{0, Rational(1, 5)}, {1, Rational(4, 5)}});
  CHECK(opinion_on(ws, LabelFunction::from_string("01"), Rational(1, 4)) == true);
  CHECK(opinion_on(ws, LabelFunction::from_string("10"), Rational(1, 4)) == false);
  // minority exactly eps is balanced
  CHECK(!opinion_on(ws, LabelFunction::from_string("10"), Rational(1, 5)).has_value());

  const HypothesisClass m5 = gen_matching(5);
  CHECK(majority_function(m5, WeightedSet::singleton(2), Rational(1, 4)) == m5[2]);
  const auto zero = majority_function(m5, WeightedSet::uniform(range(0, 5)), Rational(1, 4));
  REQUIRE(zero);
  CHECK(zero->none());
  CHECK(is_good(m5, WeightedSet::uniform(range(0, 5)), Rational(1, 4)));
  CHECK(!is_good(m5, WeightedSet::uniform(range(0, 5)), Rational(1, 5)));

  // a median b splits an independent side of a half-graph in half
  const Graph hg = gen_halfgraph(8);
  CHECK(!majority_function(hg, WeightedSet::uniform(range(0, 6)), Rational(1, 6)));
  CHECK(!is_good(hg, WeightedSet::uniform(range(0, 6)), Rational(1, 6)));
}

TEST_CASE("excellence") {
  const Rational eps(1, 4);
  const Graph k5 = gen_clique(5);
  const auto tg = good_opinion_functions(k5, eps);
  for (std::size_t v = 0; v < 5; ++v) CHECK(is_excellent(k5, WeightedSet::singleton(v), eps, tg));
  const WeightedSet all = WeightedSet::uniform(range(0, 5));
  CHECK(is_good(k5, all, eps));
  CHECK(is_excellent(k5, all, eps, tg));

  // excellent implies good on random graphs and random sets
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = gen_random_graph(6, rng());
    const auto t = good_opinion_functions(g, Rational(1, 5));
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < 6; ++v) {
      if (rng() & 1u) members.push_back(v);
    }
    if (members.empty()) continue;
    const WeightedSet ws = WeightedSet::uniform(members);
    if (!is_good(g, ws, Rational(1, 5))) continue;
    if (is_excellent(g, ws, Rational(1, 5), t)) CHECK(is_good(g, ws, Rational(1, 5)));
  }
}

TEST_CASE("pair opinions of singletons are edges") {
  const Graph g = gen_halfgraph(4);
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto t = pair_opinion(g, WeightedSet::singleton(u), WeightedSet::singleton(v), Rational(1, 5));
      REQUIRE(t);
      CHECK(*t == g.adjacent(u, v));
    }
  }
}

TEST_CASE("extract_good") {
  const Graph anti = gen_anticlique(6);
  ExtractionResult r = extract_good(anti, range(0, 6), Rational(1, 4), 2);
  REQUIRE(r.set);
  CHECK(*r.set == range(0, 6));
  CHECK(r.depth == 0);

  // only singletons are good here and length 8 has no height-3 tree: the
  // depth-3 pieces cannot host one, so a singleton answers (16/6^3 <= 1)
  const Graph hg = gen_halfgraph(8);
  r = extract_good(hg, range(0, 16), Rational(1, 6), 3);
  REQUIRE(r.set);
  CHECK(r.set->size() == 1);
  CHECK(r.depth == 3);
  // with enough depth the pieces shrink to singletons
  r = extract_good(hg, range(0, 16), Rational(1, 6), 5);
  REQUIRE(r.set);
  CHECK(r.set->size() == 1);
  CHECK(is_good(hg, WeightedSet::uniform(*r.set), Rational(1, 6)));
  CHECK(Rational(static_cast<long>(r.set->size())) >= power(Rational(1, 6), 5) * Rational(16));

  const PlantedTree p = gen_planted_tree(2, 2);
  r = extract_good(p.graph, p.leaf_vertices, Rational(1, 3), 2);
  CHECK(!r.set);
  REQUIRE(r.tree);
  CHECK(r.tree->height == 2);
  CHECK(check_tree(p.graph, *r.tree).empty());

  CHECK_THROWS_AS(extract_good(anti, {}, Rational(1, 4), 1), std::invalid_argument);
  CHECK_THROWS_AS(extract_good(anti, {0}, Rational(1, 2), 1), std::invalid_argument);
}

TEST_CASE("extract_excellent") {
  const Rational eps(1, 5);
  const Graph anti = gen_anticlique(5);
  ExtractionResult r = extract_excellent(anti, range(0, 5), eps, 2);
  REQUIRE(r.set);
  CHECK(*r.set == range(0, 5));

  const Graph k6 = gen_clique(6);
  r = extract_excellent(k6, range(0, 6), eps, 2);
  REQUIRE(r.set);
  CHECK(*r.set == range(0, 6));
  CHECK(is_excellent(k6, WeightedSet::uniform(*r.set), eps, good_opinion_functions(k6, eps)));

  const PlantedTree p = gen_planted_tree(2, 2);
  r = extract_excellent(p.graph, p.leaf_vertices, eps, 2);
  CHECK(!r.set);
  REQUIRE(r.tree);
  CHECK(check_tree(p.graph, *r.tree).empty());

  // a clique with a pendant path: only part of X is excellent
  Graph g(numbered_ids("v", 7), {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  const Rational e2(1, 5);
  r = extract_excellent(g, range(0, 7), e2, 2);
  REQUIRE(r.set);
  CHECK(is_excellent(g, WeightedSet::uniform(*r.set), e2, good_opinion_functions(g, e2)));
  CHECK(Rational(static_cast<long>(r.set->size())) >= power(e2, 2) * Rational(7));
  CHECK_THROWS_AS(extract_excellent(anti, range(0, 5), Rational(1, 4), 2), std::invalid_argument);
}

TEST_CASE("extraction on random stable graphs") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = gen_random_stable_graph(9, 4, seed, Rational(1, 4));
    const std::size_t m = static_cast<std::size_t>(graph_ldim(g)) + 1;
    const Rational eps(1, 3);
    const ExtractionResult r = extract_good(g, range(0, 9), eps, m);
    REQUIRE(r.set);
    CHECK(is_good(g, WeightedSet::uniform(*r.set), eps));
    CHECK(Rational(static_cast<long>(r.set->size())) >= power(eps, m) * Rational(9));
    const Rational ee(1, (1L << m) + 1);
    const ExtractionResult e = extract_excellent(g, range(0, 9), ee, m);
    REQUIRE(e.set);
    CHECK(is_excellent(g, WeightedSet::uniform(*e.set), ee, good_opinion_functions(g, ee)));
    CHECK(Rational(static_cast<long>(e.set->size())) >= power(ee, m) * Rational(9));
  }
}
