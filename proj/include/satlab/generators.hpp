#ifndef SATLAB_GENERATORS_HPP_
#define SATLAB_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>

#include "satlab/core.hpp"

namespace satlab {

// Loop-free, vertices v1..vn.
Graph gen_clique(std::size_t n);
Graph gen_anticlique(std::size_t n);

// h_i(x_j) = 1 iff i == j.
HypothesisClass gen_matching(std::size_t n);

enum class SideNoise { none, random };

// Vertices a1..ak then b1..bk with a_i ~ b_j iff i < j. With random noise,
// each pair inside A and inside B becomes an edge with probability 1/2.
Graph gen_halfgraph(std::size_t k, std::uint64_t seed = 0, SideNoise noise = SideNoise::none);

// Indicators of the k-subsets of x1..xn, lexicographic.
HypothesisClass gen_subsets(std::size_t n, std::size_t k);

struct ChainParameters {
  std::size_t n = 0;
  Rational eps;
};

// Smallest n >= 2k (so that a k-set is shattered) whose window
// (1/(n-k+1), min(2/n, 1/(k+1))) is nonempty; eps is its midpoint.
ChainParameters pick_chain_parameters(std::size_t k);

// nh distinct uniformly random rows over x1..xnx (nh is clipped at 2^nx).
HypothesisClass gen_random_class(std::size_t nx, std::size_t nh, std::uint64_t seed);

// Random loop-free graph, each edge present with probability `density`,
// resampled until its row class has threshold dimension below
// `forbidden_halfgraph`. Throws std::runtime_error after max_attempts.
Graph gen_random_stable_graph(std::size_t n, std::size_t forbidden_halfgraph, std::uint64_t seed,
                              const Rational& density = Rational(1, 2), std::size_t max_attempts = 10000);

// Random loop-free graph, no filtering.
Graph gen_random_graph(std::size_t n, std::uint64_t seed, const Rational& density = Rational(1, 2));

// Nodes n0.. (heap order) come first, then one cluster of `cluster` twin
// leaves per branch; a leaf is adjacent to exactly the nodes on its
// branch where it turns right. No other edges.
struct PlantedTree {
  Graph graph;
  SpecialTree tree;                   // nodes and first leaf of each cluster
  std::vector<std::size_t> leaf_vertices;
};
PlantedTree gen_planted_tree(std::size_t m, std::size_t cluster);

struct GoodNotExcellent {
  Graph graph;        // a1..a6 then b1..b6
  WeightedSet a;      // uniform over A
  WeightedSet b;      // uniform over B
  std::size_t tried;  // complete candidate graphs examined
};

// Seeded depth-first search over graphs on two sides of `side` vertices in
// which every vertex has 0, 1 or 5 neighbours in A and 0, 2 or 4 in B, until
// both uniform sides are good, neither is excellent and both pair opinions
// are undefined. Only side = 6 matches those degree sets. Throws
// std::runtime_error when the space is exhausted.
GoodNotExcellent search_good_not_excellent(const Rational& eps = Rational(21, 60), std::size_t side = 6,
                                           std::uint64_t seed = 0);

}  // namespace satlab

#endif  // SATLAB_GENERATORS_HPP_
