#ifndef SATLAB_EXACTLP_HPP_
#define SATLAB_EXACTLP_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "satlab/core.hpp"
#include "satlab/label_function.hpp"
#include "satlab/rational.hpp"

namespace satlab {

enum class Relation { less_equal, equal };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::less_equal;
  Rational bound;
};

// maximize objective . x  subject to constraints, x >= 0
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<Constraint> constraints;
  std::vector<Rational> objective;
};

enum class LPStatus { optimal, infeasible, unbounded };
const char* status_name(LPStatus s);

struct LPOutcome {
  LPStatus status = LPStatus::infeasible;
  Rational value;
  std::vector<Rational> solution;
};

// Two-phase dense simplex over exact rationals with Bland's rule. Throws
// std::invalid_argument on dimension mismatch.
LPOutcome solve(const LinearProgram& lp);

// True when x >= 0 satisfies every constraint of lp exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

struct SlackResult {
  Rational slack;
  std::optional<WeightedSet> weights;
};

// rows[r] is the set of members that disagree at point r (a function over
// `members` indices). Maximises t subject to gamma >= 0, sum gamma = 1 and
// mass(rows[r]) <= eps - t for every r. weights is set iff t > 0, with
// zero-weight members dropped.
SlackResult max_slack(const std::vector<LabelFunction>& rows, std::size_t members, const Rational& eps);

// min over distributions gamma of max_r mass(rows[r]); the value behind
// max_slack, returned with an optimal gamma.
struct MinMaxResult {
  Rational value;
  WeightedSet weights;
};
MinMaxResult min_max_mass(const std::vector<LabelFunction>& rows, std::size_t members);

}  // namespace satlab

#endif  // SATLAB_EXACTLP_HPP_
