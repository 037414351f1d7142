#ifndef SATLAB_DIMS_HPP_
#define SATLAB_DIMS_HPP_

#include <optional>
#include <vector>

#include "satlab/core.hpp"

namespace satlab {

// Largest shattered subset of the domain; -1 for the empty class.
int vc_dim(const HypothesisClass& c);
// A shattered set of size vc_dim (lowest indices first), empty if none.
std::vector<std::size_t> vc_witness(const HypothesisClass& c);

// Littlestone dimension; -1 for the empty class, 0 for a single function.
int ldim(const HypothesisClass& c);

// Longest threshold pattern h_i(x_j) = 1 iff i < j. 0 for the empty class.
int thr_dim(const HypothesisClass& c);
// Witness with hypotheses on the left and points on the right.
HalfGraph thr_witness(const HypothesisClass& c);

// Mistake tree (points as nodes, hypotheses as leaves) of the given height,
// or nullopt when ldim < height.
std::optional<SpecialTree> find_mistake_tree(const HypothesisClass& c, std::size_t height);

// Midpoint construction: a half-graph of length >= 2^(m+1) gives a special
// tree of height m whose nodes come from the left side and leaves from the
// right side. Throws std::invalid_argument when the half-graph is too short.
SpecialTree halfgraph_to_tree(const HalfGraph& hg, std::size_t m);

struct MonochromaticResult {
  SpecialTree subtree;
  bool colour = false;
  // Original node slots used by the subtree, in the subtree's heap order.
  std::vector<std::size_t> node_slots;
};

// colours[slot] for every internal node. Returns a subtree in the
// "two distinct extensions" sense whose nodes all share one colour, of
// height at least ceil(height / 2). Ties prefer colour true.
MonochromaticResult monochromatic_subtree(const SpecialTree& tree, const std::vector<bool>& colours);

// Peeling construction: a special tree of height >= 2^(k+2) - 2 gives a
// half-graph of length k (nodes on the left, leaves on the right). The
// relation is read from the host. Throws std::invalid_argument when the
// tree is too short.
HalfGraph tree_to_halfgraph(const HypothesisClass& host, const SpecialTree& tree, std::size_t k);
HalfGraph tree_to_halfgraph(const Graph& host, const SpecialTree& tree, std::size_t k);

// Subtree of `tree` rooted at node slot `slot`.
SpecialTree subtree_at(const SpecialTree& tree, std::size_t slot);

// Swaps the two sides and reverses both sequences; the result is again a
// half-graph (e.g. points-left becomes hypotheses-left).
HalfGraph reversed(const HalfGraph& hg);

// Littlestone dimension of the class of adjacency rows of g.
int graph_ldim(const Graph& g);

}  // namespace satlab

#endif  // SATLAB_DIMS_HPP_
