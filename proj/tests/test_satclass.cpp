#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "satlab/config.hpp"
#include "satlab/dims.hpp"
#include "satlab/generators.hpp"
#include "satlab/goodness.hpp"
#include "satlab/satclass.hpp"

using namespace satlab;

namespace {

LabelFunction bits(const char* s) { return LabelFunction::from_string(s); }

HypothesisClass power_set(std::size_t n) {
  std::vector<LabelFunction> rows;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    LabelFunction f(n);
    for (std::size_t x = 0; x < n; ++x) f.set(x, m >> x & 1u);
    rows.push_back(f);
  }
  return HypothesisClass(numbered_ids("x", n), rows);
}

std::set<std::string> strings(const std::vector<LabelFunction>& fs) {
  std::set<std::string> s;
  for (const auto& f : fs) s.insert(f.str());
  return s;
}

// Direct check of k-realizability over every subset of at most k points.
bool brute_k_realizable(const HypothesisClass& c, const LabelFunction& f, std::size_t k) {
  const std::size_t n = c.domain_size();
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) > k) continue;
    std::vector<std::size_t> pos;
    for (std::size_t x = 0; x < n; ++x) {
      if (s >> x & 1u) pos.push_back(x);
    }
    const LabelFunction want = f.restrict_to(pos);
    bool found = false;
    for (const auto& h : c.hypotheses()) found = found || h.restrict_to(pos) == want;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("representable: members, matching, singleton types") {
  const HypothesisClass e15 = gen_subsets(4, 2);
  auto w = representable(e15, e15[3], Rational(2, 5));
  REQUIRE(w);
  CHECK(w->size() == 1);
  CHECK(w->weight_of(3) == Rational(1));

  const HypothesisClass m5 = gen_matching(5);
  w = representable(m5, LabelFunction(5), Rational(1, 4));
  REQUIRE(w);
  for (std::size_t i = 0; i < 5; ++i) CHECK(w->weight_of(i) == Rational(1, 5));
  CHECK(!representable(m5, LabelFunction(5), Rational(1, 5)));

  // indicator of x1: the three pairs through x1, uniformly
  w = representable(e15, bits("1000"), Rational(2, 5));
  REQUIRE(w);
  CHECK(w->size() == 3);
  for (std::size_t i = 0; i < e15.size(); ++i) {
    CHECK(w->weight_of(i) == (e15[i][0] ? Rational(1, 3) : Rational(0)));
  }
  CHECK(majority_function(e15, *w, Rational(2, 5)) == bits("1000"));
  CHECK(!representable(e15, LabelFunction(4), Rational(2, 5)));
  CHECK_THROWS_AS(representable(e15, bits("1000"), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("representable_functions") {
  const HypothesisClass all = power_set(3);
  CHECK(HypothesisClass(all.domain(), representable_functions(all, Rational(1, 3))).same_functions(all));

  // the 2-subsets of 4 points at 2/5: besides the singletons of the worked
  // example, every triple is the majority of its three pairs (minority 1/3)
  const HypothesisClass e15 = gen_subsets(4, 2);
  const auto reps = strings(representable_functions(e15, Rational(2, 5)));
  std::set<std::string> want;
  for (const auto& h : e15.hypotheses()) want.insert(h.str());
  for (const char* s : {"1000", "0100", "0010", "0001", "1110", "1101", "1011", "0111"}) want.insert(s);
  CHECK(reps == want);
  // below 1/3 neither singletons nor triples come in
  CHECK(representable_functions(e15, Rational(1, 3)).size() == 6);

  // the table's witnesses represent their functions
  const auto table = representable_table(e15, Rational(2, 5));
  for (const auto& r : table) CHECK(majority_function(e15, r.witness, Rational(2, 5)) == r.function);

  // matches one LP per function on random classes
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const HypothesisClass c = gen_random_class(2 + seed % 4, 1 + seed % 7, seed);
    const Rational eps = seed % 2 ? Rational(1, 3) : Rational(1, 5);
    std::vector<LabelFunction> direct;
    const HypothesisClass space = power_set(c.domain_size());
    for (const auto& f : space.hypotheses()) {
      if (representable(c, f, eps)) direct.push_back(f);
    }
    CHECK(strings(representable_functions(c, eps)) == strings(direct));
  }
}

TEST_CASE("saturation steps and traces") {
  const HypothesisClass m5 = gen_matching(5);
  const HypothesisClass s = saturation_step(m5, Rational(1, 4));
  CHECK(s.size() == 6);
  CHECK(s[5].none());
  CHECK(saturation_step(s, Rational(1, 4)).same_functions(s));

  const SaturationTrace t = saturate(gen_subsets(4, 2), Rational(2, 5), 10);
  CHECK(t.fixpoint);
  std::vector<std::size_t> sizes;
  for (const auto& l : t.levels) sizes.push_back(l.size());
  CHECK(sizes == std::vector<std::size_t>{6, 14, 16, 16});
  for (std::size_t n = 1; n < t.levels.size(); ++n) {
    CHECK(t.levels[n - 1].subset_of(t.levels[n]));
    for (const auto& [idx, ws] : t.provenance[n]) {
      CHECK(majority_function(t.levels[n - 1], ws, Rational(2, 5)) == t.levels[n][idx]);
    }
  }
  CHECK(t.levels[1].index_of(bits("1000")).has_value());
  CHECK(!t.levels[1].contains(LabelFunction(4)));
  CHECK(t.levels[2].contains(LabelFunction(4)));
  CHECK(t.birth_level(*t.levels.back().index_of(LabelFunction(4))) == 2);

  const SaturationTrace capped = saturate(gen_subsets(4, 2), Rational(2, 5), 1);
  CHECK(!capped.fixpoint);
  CHECK(capped.cap_reached);
}

TEST_CASE("is_saturated") {
  CHECK(is_saturated(power_set(3), Rational(1, 3)));
  CHECK(!is_saturated(gen_subsets(4, 2), Rational(2, 5)));
  const SaturationTrace t = saturate(gen_random_class(5, 7, 3), Rational(1, 4), 40);
  REQUIRE(t.fixpoint);
  CHECK(is_saturated(t.levels.back(), Rational(1, 4)));
}

TEST_CASE("k_realizable") {
  const HypothesisClass m5 = gen_matching(5);
  CHECK(k_realizable(m5, LabelFunction(5), 4));
  CHECK(!k_realizable(m5, LabelFunction(5), 5));
  CHECK(k_realizable(m5, m5[1], 5));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const HypothesisClass c = gen_random_class(5, 1 + seed % 9, seed);
    std::mt19937_64 rng(seed);
    LabelFunction f(5);
    for (std::size_t x = 0; x < 5; ++x) f.set(x, rng() & 1u);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(k_realizable(c, f, k) == brute_k_realizable(c, f, k));
  }
}

TEST_CASE("maj_p") {
  const HypothesisClass m5 = gen_matching(5);
  CHECK(maj_p(m5, 1).same_functions(m5));
  const HypothesisClass m3 = maj_p(m5, 3);
  CHECK(m3.size() == 6);
  CHECK(m3.contains(LabelFunction(5)));
  CHECK_THROWS_AS(maj_p(m5, 2), std::invalid_argument);

  // three pairs always cover some point twice, so the 3-majorities of the
  // 2-subsets of 4 points are the pairs, the singletons and the triples
  const HypothesisClass e3 = maj_p(gen_subsets(4, 2), 3);
  CHECK(e3.size() == 14);
  CHECK(!e3.contains(LabelFunction(4)));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HypothesisClass c = gen_random_class(4, 5, seed);
    CHECK(c.subset_of(maj_p(c, 3)));
  }
}

TEST_CASE("game_value and duality") {
  const HypothesisClass m5 = gen_matching(5);
  CHECK(game_value(m5, m5[0]) == Rational(0));
  CHECK(game_value(m5, LabelFunction(5)) == Rational(1, 5));
  const HypothesisClass e15 = gen_subsets(4, 2);
  CHECK(game_value(e15, bits("1000")) == Rational(1, 3));
  CHECK(game_value(e15, LabelFunction(4)) == Rational(1, 2));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const HypothesisClass c = gen_random_class(2 + seed % 4, 1 + seed % 8, seed);
    std::mt19937_64 rng(seed);
    LabelFunction f(c.domain_size());
    for (std::size_t x = 0; x < f.size(); ++x) f.set(x, rng() & 1u);
    const Rational v = game_value(c, f);
    for (const Rational& eps : {Rational(1, 5), Rational(1, 3), Rational(2, 5)}) {
      CHECK(representable(c, f, eps).has_value() == (v < eps));
    }
  }
}

TEST_CASE("de-virtualization on the two-step chain") {
  const ChainParameters p = pick_chain_parameters(2);
  REQUIRE(p.n == 5);
  const SaturationTrace t = saturate(gen_subsets(p.n, 2), p.eps, 5);
  REQUIRE(t.levels.size() >= 3);
  const HypothesisClass& l1 = t.levels[1];
  const std::size_t s1 = *l1.index_of(bits("10000"));
  const std::size_t s2 = *l1.index_of(bits("01000"));
  const std::size_t s3 = *l1.index_of(bits("00100"));
  const std::size_t p23 = *l1.index_of(bits("01100"));

  SUBCASE("leaves") {
    SpecialTree tree = SpecialTree::empty_shape(1, Side::domain, Side::hypothesis);
    tree.nodes = {0};
    tree.leaves = {p23, s1};
    REQUIRE(check_tree(l1, tree).empty());
    const SpecialTree out = devirtualize_leaves(t, tree, 1);
    CHECK(check_tree(t.levels[0], out).empty());
    CHECK(out.leaves[0] == p23);
    CHECK(out.leaves[1] < t.levels[0].size());
    // already actual: unchanged
    CHECK(devirtualize_leaves(t, out, 1).leaves == out.leaves);
  }
  SUBCASE("nodes") {
    SpecialTree tree = SpecialTree::empty_shape(1, Side::hypothesis, Side::domain);
    tree.nodes = {s1};
    tree.leaves = {1, 0};
    REQUIRE(check_tree(l1, tree).empty());
    const SpecialTree out = devirtualize_nodes(t, tree, 1);
    CHECK(check_tree(t.levels[0], out).empty());
    CHECK(out.nodes[0] < t.levels[0].size());
  }
  SUBCASE("half-graph") {
    HalfGraph hg;
    hg.left_side = Side::hypothesis;
    hg.right_side = Side::domain;
    hg.left = {s2, s3};
    hg.right = {0, 1};
    REQUIRE(check_halfgraph(l1, hg).empty());
    const HalfGraph out = devirtualize_halfgraph(t, hg, 1);
    CHECK(check_halfgraph(t.levels[0], out).empty());
    for (auto h : out.left) CHECK(h < t.levels[0].size());
  }
  SUBCASE("guards") {
    SpecialTree tall = SpecialTree::empty_shape(4, Side::domain, Side::hypothesis);
    CHECK_THROWS_AS(devirtualize_leaves(t, tall, 1), std::invalid_argument);
    CHECK_THROWS_AS(devirtualize_nodes(t, SpecialTree::empty_shape(2, Side::hypothesis, Side::domain), 1),
                    std::invalid_argument);
    HalfGraph wrong;
    wrong.left_side = wrong.right_side = Side::domain;
    CHECK_THROWS_AS(devirtualize_halfgraph(t, wrong, 1), std::invalid_argument);
  }
}

TEST_CASE("enumeration cap") {
  const HypothesisClass wide = gen_random_class(24, 8, 1);
  CHECK_THROWS_AS(representable_functions(wide, Rational(1, 4)), CapExceeded);
  CHECK_NOTHROW(representable_functions(gen_random_class(10, 4, 1), Rational(1, 4), 10));
}
