#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "satlab/dims.hpp"
#include "satlab/generators.hpp"

using namespace satlab;

namespace {

int brute_vc(const HypothesisClass& c) {
  const std::size_t n = c.domain_size();
  int best = c.empty() ? -1 : 0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::vector<std::size_t> pos;
    for (std::size_t x = 0; x < n; ++x) {
      if (s >> x & 1u) pos.push_back(x);
    }
    std::set<LabelFunction> seen;
    for (const auto& h : c.hypotheses()) seen.insert(h.restrict_to(pos));
    if (seen.size() == (std::size_t{1} << pos.size())) best = std::max(best, static_cast<int>(pos.size()));
  }
  return best;
}

int brute_ldim(const std::vector<LabelFunction>& hs, std::size_t n) {
  if (hs.empty()) return -1;
  int best = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<LabelFunction> a, b;
    for (const auto& h : hs) (h[x] ? b : a).push_back(h);
    if (a.empty() || b.empty()) continue;
    best = std::max(best, 1 + std::min(brute_ldim(a, n), brute_ldim(b, n)));
  }
  return best;
}

int brute_thr(const HypothesisClass& c) {
  int best = 0;
  std::vector<std::size_t> hs, xs;
  std::function<void()> rec = [&] {
    best = std::max(best, static_cast<int>(hs.size()));
    for (std::size_t h = 0; h < c.size(); ++h) {
      for (std::size_t x = 0; x < c.domain_size(); ++x) {
        bool ok = !c.label(h, x);
        for (std::size_t i = 0; ok && i < hs.size(); ++i) ok = c.label(hs[i], x) && !c.label(h, xs[i]);
        if (!ok) continue;
        hs.push_back(h);
        xs.push_back(x);
        rec();
        hs.pop_back();
        xs.pop_back();
      }
    }
  };
  rec();
  return best;
}

// Threshold class h_t(x) = [x < t] over n points.
HypothesisClass thresholds(std::size_t n) {
  std::vector<LabelFunction> rows;
  for (std::size_t t = 0; t <= n; ++t) {
    LabelFunction f(n);
    for (std::size_t x = 0; x < t; ++x) f.set(x);
    rows.push_back(f);
  }
  return HypothesisClass(numbered_ids("x", n), rows);
}

// One hypothesis per branch of a complete tree of the given height, the
// points being the tree nodes; off-branch labels come from the rng.
HypothesisClass branch_class(std::size_t height, std::mt19937_64& rng) {
  const std::size_t nodes = (std::size_t{1} << height) - 1;
  const SpecialTree shape = SpecialTree::empty_shape(height, Side::domain, Side::hypothesis);
  std::vector<LabelFunction> rows;
  for (std::size_t leaf = 0; leaf < (std::size_t{1} << height); ++leaf) {
    LabelFunction f(nodes);
    for (std::size_t x = 0; x < nodes; ++x) f.set(x, rng() & 1u);
    for (auto [slot, bit] : shape.path(leaf)) f.set(slot, bit);
    rows.push_back(f);
  }
  return HypothesisClass(numbered_ids("n", nodes, 0), rows);
}

// h_(n-1-i) and point n-1-j, so that the i-th hypothesis labels the j-th point 1 iff i < j.
HalfGraph threshold_pattern(std::size_t n) {
  HalfGraph hg;
  for (std::size_t i = 0; i < n; ++i) {
    hg.left.push_back(n - 1 - i);
    hg.right.push_back(n - 1 - i);
  }
  return hg;
}

SpecialTree identity_tree(std::size_t height) {
  SpecialTree t = SpecialTree::empty_shape(height, Side::domain, Side::hypothesis);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) t.nodes[i] = i;
  for (std::size_t i = 0; i < t.leaves.size(); ++i) t.leaves[i] = i;
  return t;
}

HalfGraph graph_halfgraph(const Graph&, std::size_t k) {
  HalfGraph hg;
  hg.left_side = hg.right_side = Side::vertex;
  for (std::size_t i = 0; i < k; ++i) {
    hg.left.push_back(i);
    hg.right.push_back(k + i);
  }
  return hg;
}

}  // namespace

TEST_CASE("dimensions of the subset classes") {
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{4, 2}, {6, 3}, {5, 1}, {6, 2}}) {
    const HypothesisClass c = gen_subsets(n, d);
    CHECK(vc_dim(c) == static_cast<int>(d));
    CHECK(ldim(c) == static_cast<int>(d));
  }
  const HypothesisClass one = make_class({"a", "b"}, {{1, 0}});
  CHECK(vc_dim(one) == 0);
  CHECK(ldim(one) == 0);
  // a single 0 label is already a threshold pattern of length 1
  CHECK(thr_dim(one) == 1);
  CHECK(thr_dim(make_class({"a", "b"}, {{1, 1}})) == 0);
  const HypothesisClass none({"a"}, {});
  CHECK(vc_dim(none) == -1);
  CHECK(ldim(none) == -1);
  const HypothesisClass m5 = gen_matching(5);
  CHECK(vc_dim(m5) == 1);
  CHECK(ldim(m5) == 1);
  CHECK(ldim(m5) == brute_ldim(m5.hypotheses(), 5));
}

TEST_CASE("dimensions agree with exhaustive oracles") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t nx = 1 + seed % 6, nh = 1 + (seed * 7) % 10;
    const HypothesisClass c = gen_random_class(nx, nh, seed);
    CAPTURE(seed);
    CHECK(vc_dim(c) == brute_vc(c));
    CHECK(ldim(c) == brute_ldim(c.hypotheses(), nx));
    if (c.size() <= 6) CHECK(thr_dim(c) == brute_thr(c));
    CHECK(ldim(c) >= vc_dim(c));
    const int th = thr_dim(c), ld = ldim(c);
    // thresholds of length 2^(m+1) force ldim >= m, and the converse bound
    for (int m = 0; (2 << m) <= th; ++m) CHECK(ld >= m);
    for (int k = 1; (4 << k) - 2 <= ld; ++k) CHECK(th >= k);

    const auto w = vc_witness(c);
    CHECK(static_cast<int>(w.size()) == std::max(0, vc_dim(c)));
    const HalfGraph hg = thr_witness(c);
    CHECK(static_cast<int>(hg.length()) == th);
    CHECK(check_halfgraph(c, hg).empty());
    auto t = find_mistake_tree(c, static_cast<std::size_t>(std::max(ld, 0)));
    if (ld >= 1) {
      REQUIRE(t);
      CHECK(check_tree(c, *t).empty());
    }
    CHECK(!find_mistake_tree(c, static_cast<std::size_t>(ld + 1)));
  }
}

TEST_CASE("graph-derived classes") {
  const Graph anti = gen_anticlique(4);
  CHECK(thr_dim(class_from_graph(anti)) == 1);
  const Graph hg8 = gen_halfgraph(8);
  CHECK(thr_dim(class_from_graph(hg8)) >= 8);
  CHECK(check_halfgraph(hg8, graph_halfgraph(hg8, 8)).empty());
}

TEST_CASE("mistake trees") {
  auto t = find_mistake_tree(gen_subsets(4, 2), 2);
  REQUIRE(t);
  CHECK(check_tree(gen_subsets(4, 2), *t).empty());
  CHECK(!find_mistake_tree(gen_matching(5), 2));
  CHECK(find_mistake_tree(gen_matching(5), 1));
}

TEST_CASE("half-graph to tree") {
  const Graph g8 = gen_halfgraph(8);
  const SpecialTree t2 = halfgraph_to_tree(graph_halfgraph(g8, 8), 2);
  CHECK(t2.height == 2);
  CHECK(check_tree(g8, t2).empty());

  const Graph g4 = gen_halfgraph(4);
  const SpecialTree t1 = halfgraph_to_tree(graph_halfgraph(g4, 4), 1);
  CHECK(t1.height == 1);
  CHECK(check_tree(g4, t1).empty());
  CHECK_THROWS_AS(halfgraph_to_tree(graph_halfgraph(g4, 4), 2), std::invalid_argument);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph noisy = gen_halfgraph(8, seed, SideNoise::random);
    CHECK(check_tree(noisy, halfgraph_to_tree(graph_halfgraph(noisy, 8), 2)).empty());
  }

  const HypothesisClass th = thresholds(16);
  const HalfGraph w = thr_witness(th);
  CHECK(w.length() == 16);
  CHECK(check_tree(th, halfgraph_to_tree(w, 3)).empty());
}

TEST_CASE("monochromatic subtrees") {
  const SpecialTree t = identity_tree(4);
  const std::size_t nodes = t.nodes.size();
  auto verify = [&](const std::vector<bool>& colours, std::size_t want) {
    const MonochromaticResult r = monochromatic_subtree(t, colours);
    CHECK(r.subtree.height >= want);
    CHECK(r.node_slots.size() == r.subtree.nodes.size());
    for (std::size_t s : r.node_slots) CHECK(colours[s] == r.colour);
  };
  verify(std::vector<bool>(nodes, true), 4);
  verify(std::vector<bool>(nodes, false), 4);
  std::vector<bool> by_level(nodes);
  for (std::size_t s = 0; s < nodes; ++s) by_level[s] = SpecialTree::depth_of(s) % 2 == 0;
  verify(by_level, 2);

  const SpecialTree t6 = identity_tree(6);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<bool> colours(t6.nodes.size());
    for (std::size_t s = 0; s < colours.size(); ++s) colours[s] = rng() & 1u;
    const MonochromaticResult r = monochromatic_subtree(t6, colours);
    CHECK(r.subtree.height >= 3);
    for (std::size_t s : r.node_slots) CHECK(colours[s] == r.colour);
  }
}

TEST_CASE("tree to half-graph") {
  std::mt19937_64 rng(17);
  const HypothesisClass c6 = branch_class(6, rng);
  const SpecialTree t6 = identity_tree(6);
  REQUIRE(check_tree(c6, t6).empty());
  const HalfGraph h1 = tree_to_halfgraph(c6, t6, 1);
  CHECK(h1.length() == 1);
  CHECK(check_halfgraph(c6, h1).empty());
  CHECK_THROWS_AS(tree_to_halfgraph(c6, identity_tree(5), 1), std::invalid_argument);

  // a tree that came out of a long threshold pattern
  const HypothesisClass th = thresholds(128);
  const SpecialTree t_ext = halfgraph_to_tree(threshold_pattern(128), 6);
  REQUIRE(check_tree(th, t_ext).empty());
  const HalfGraph back = tree_to_halfgraph(th, t_ext, 1);
  CHECK(check_halfgraph(th, back).empty());

  const HalfGraph r = reversed(h1);
  CHECK(r.left_side == h1.right_side);
  CHECK(check_halfgraph(c6, r).empty());
}
