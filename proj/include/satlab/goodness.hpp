#ifndef SATLAB_GOODNESS_HPP_
#define SATLAB_GOODNESS_HPP_

#include <optional>
#include <vector>

#include "satlab/core.hpp"

namespace satlab {

// 1 when the weight on f's ones is > 1 - eps, 0 when it is < eps, nullopt
// in between. The minority side must be strictly below eps.
std::optional<bool> opinion_on(const WeightedSet& ws, const LabelFunction& f, const Rational& eps);

// Majority labelling over the class domain (members index hypotheses), or
// nullopt if some point is not decided.
std::optional<LabelFunction> majority_function(const HypothesisClass& c, const WeightedSet& ws, const Rational& eps);
// Majority opinion over all vertices (members index vertices).
std::optional<LabelFunction> majority_function(const Graph& g, const WeightedSet& ws, const Rational& eps);

bool is_good(const HypothesisClass& c, const WeightedSet& ws, const Rational& eps);
bool is_good(const Graph& g, const WeightedSet& ws, const Rational& eps);

// ws must be good; t_good is the full table of goodness-realizable opinion
// functions on V. Excellent iff ws has a decided opinion on every one.
bool is_excellent(const Graph& g, const WeightedSet& ws, const Rational& eps, const std::vector<LabelFunction>& t_good);

// t(B, A): the weight b puts on the opinion function of a, read as a
// majority. nullopt when a is not good or b is balanced on it.
std::optional<bool> pair_opinion(const Graph& g, const WeightedSet& a, const WeightedSet& b, const Rational& eps);

struct ExtractionResult {
  std::optional<std::vector<std::size_t>> set;  // found subset, ascending
  std::optional<SpecialTree> tree;              // height-m witness otherwise
  std::size_t depth = 0;                        // level of the returned piece
};

// Tree-partition search for an unweighted good piece of X. Requires
// 0 < eps < 1/2 and X nonempty. When a depth-m partition cannot host an
// actual tree (leaves would coincide with nodes), a singleton is returned
// if eps^m |X| <= 1, otherwise std::runtime_error.
ExtractionResult extract_good(const Graph& g, const std::vector<std::size_t>& x, const Rational& eps, std::size_t m);

// Same search for an excellent piece, splitting by goodness-realizable
// opinion functions; at depth m the virtual tree is turned into an actual
// one. Requires 0 < eps < 1/2^m.
ExtractionResult extract_excellent(const Graph& g, const std::vector<std::size_t>& x, const Rational& eps,
                                   std::size_t m);

}  // namespace satlab

#endif  // SATLAB_GOODNESS_HPP_
