#ifndef SATLAB_SATCLASS_HPP_
#define SATLAB_SATCLASS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "satlab/core.hpp"

namespace satlab {

// Weighted set over the class whose majority function is f with every
// minority mass strictly below eps; nullopt when none exists.
// Requires 0 < eps < 1/2.
std::optional<WeightedSet> representable(const HypothesisClass& c, const LabelFunction& f, const Rational& eps);

struct Representation {
  LabelFunction function;
  WeightedSet witness;  // over the class's hypotheses
};

// All representable functions with one witness each. Members of the class
// get their singleton; others get the LP optimum over the full domain.
// Order: depth-first over distinct domain columns, label 0 before 1.
// Throws CapExceeded when the distinct columns exceed the cap.
std::vector<Representation> representable_table(const HypothesisClass& c, const Rational& eps,
                                                std::size_t cap = 0);
std::vector<LabelFunction> representable_functions(const HypothesisClass& c, const Rational& eps,
                                                   std::size_t cap = 0);

HypothesisClass saturation_step(const HypothesisClass& c, const Rational& eps);

// Iterates saturation_step for at most max_levels steps. On fixpoint the
// last level is repeated once, so levels[n] == levels[n+1] marks it.
SaturationTrace saturate(const HypothesisClass& c, const Rational& eps, std::size_t max_levels);

bool is_saturated(const HypothesisClass& c, const Rational& eps);

// Every restriction of f to at most k points agrees with some hypothesis.
bool k_realizable(const HypothesisClass& c, const LabelFunction& f, std::size_t k);

// Majority votes of all length-p sequences (with repetition); p odd.
// The class comes first, new functions follow in ascending order.
HypothesisClass maj_p(const HypothesisClass& c, std::size_t p, std::size_t max_sequences = 5'000'000);

// max over point distributions of min over hypotheses of the weighted
// disagreement with g, solved as its own LP. Class must be nonempty.
Rational game_value(const HypothesisClass& c, const LabelFunction& g);

// One step down a trace. Hypothesis-side entries of the input index
// levels[level]; the result indexes levels[level - 1]. Entries already in
// the lower level are kept. Throws std::invalid_argument when the eps
// bound of the construction fails or the tree has the wrong sides, and
// std::logic_error if no member survives the error set.
SpecialTree devirtualize_leaves(const SaturationTrace& trace, const SpecialTree& tree, std::size_t level);
SpecialTree devirtualize_nodes(const SaturationTrace& trace, const SpecialTree& tree, std::size_t level);
HalfGraph devirtualize_halfgraph(const SaturationTrace& trace, const HalfGraph& hg, std::size_t level);

}  // namespace satlab

#endif  // SATLAB_SATCLASS_HPP_
