#ifndef SATLAB_SATGRAPH_HPP_
#define SATLAB_SATGRAPH_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "satlab/core.hpp"

namespace satlab {

// Goodness-realizable opinion functions on V with one witness each
// (weights over vertices). Singleton rows come with their lowest vertex.
struct GoodOpinions {
  std::vector<LabelFunction> functions;
  std::vector<WeightedSet> witnesses;
  std::optional<std::size_t> index_of(const LabelFunction& tau) const;
};

GoodOpinions good_opinion_table(const Graph& g, const Rational& eps, std::size_t cap = 0);
std::vector<LabelFunction> good_opinion_functions(const Graph& g, const Rational& eps, std::size_t cap = 0);

struct SignatureEntry {
  Signature signature;
  WeightedSet witness;  // over vertices
};

// Signature of the singleton {v} against t_good.
Signature singleton_signature(const Graph& g, std::size_t v, const std::vector<LabelFunction>& t_good);

// All signatures over V followed by t_good that a weighted excellent set
// realizes, found as representable functions of the class whose
// hypotheses are the vertices read on V and on t_good.
std::vector<SignatureEntry> excellent_signature_table(const Graph& g, const Rational& eps,
                                                      const std::vector<LabelFunction>& t_good, std::size_t cap = 0);
std::vector<Signature> excellent_signatures(const Graph& g, const Rational& eps);

// One saturation step. New vertices are the excellent signatures no
// existing vertex already has, named w<index>. Requires 0 < eps <= 1/4.
Graph graph_saturation_step(const Graph& g, const Rational& eps);

// Iterates for at most max_levels steps; on fixpoint the last level is
// repeated once, as for classes.
GraphSaturationTrace graph_saturate(const Graph& g, const Rational& eps, std::size_t max_levels);

bool graph_is_saturated(const Graph& g, const Rational& eps);

// partial has one entry per vertex then one per t_good function (in
// good_opinion_functions order). Fills the gaps greedily, trying 1 first.
// Throws std::invalid_argument when no excellent signature extends it.
Signature extend_partial_type(const Graph& g, const Rational& eps, const std::vector<std::optional<bool>>& partial);

// Moves a special tree of levels[level] to levels[level - 1]: leaves first,
// against the (possibly virtual) nodes, then nodes against the chosen
// leaves. Requires eps < 1/2^height.
SpecialTree graph_devirtualize_tree(const GraphSaturationTrace& trace, const SpecialTree& tree, std::size_t level);

}  // namespace satlab

#endif  // SATLAB_SATGRAPH_HPP_
