#include "satlab/exactlp.hpp"

#include <algorithm>
#include <stdexcept>

namespace satlab {

const char* status_name(LPStatus s) {
  switch (s) {
    case LPStatus::optimal:
      return "optimal";
    case LPStatus::infeasible:
      return "infeasible";
    case LPStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1)), basis_(rows, 0) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  Rational& rhs(std::size_t i) { return at(i, n_); }
  Rational& obj(std::size_t j) { return at(m_, j); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = at(r, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (!at(r, j).is_zero()) {
        at(r, j) /= piv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const Rational f = at(i, c);
      if (f.is_zero()) continue;
      for (auto j : nz) at(i, j).sub_mul(f, at(r, j));
    }
    basis_[r] = c;
  }

  // Bland's rule on columns [0, limit). Returns false when unbounded.
  bool optimise(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj(j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = at(i, enter);
        if (a.sign() <= 0) continue;
        Rational ratio = rhs(i) / a;
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> t_;
  std::vector<std::size_t> basis_;
};

void check_dimensions(const LinearProgram& lp) {
  if (lp.objective.size() != lp.variables) throw std::invalid_argument("objective length differs from variable count");
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (lp.constraints[k].coeffs.size() != lp.variables) {
      throw std::invalid_argument("constraint " + std::to_string(k) + " has wrong length");
    }
  }
}

}  // namespace

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.variables; ++j) {
      if (!c.coeffs[j].is_zero() && !x[j].is_zero()) lhs += c.coeffs[j] * x[j];
    }
    if (c.relation == Relation::equal ? lhs != c.bound : lhs > c.bound) return false;
  }
  return true;
}

LPOutcome solve(const LinearProgram& lp) {
  check_dimensions(lp);
  const std::size_t n = lp.variables;
  const std::size_t m = lp.constraints.size();

  // Normalise to nonnegative right-hand sides.
  enum class Kind { le, ge, eq };
  std::vector<Kind> kind(m);
  std::vector<int> flip(m, 1);
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    if (c.bound.sign() < 0) flip[i] = -1;
    if (c.relation == Relation::equal) {
      kind[i] = Kind::eq;
    } else {
      kind[i] = flip[i] > 0 ? Kind::le : Kind::ge;
    }
    if (kind[i] != Kind::eq) ++n_slack;
    if (kind[i] != Kind::le) ++n_art;
  }
  const std::size_t art_start = n + n_slack;
  Tableau tab(m, art_start + n_art);
  std::size_t next_slack = n;
  std::size_t next_art = art_start;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (!c.coeffs[j].is_zero()) tab.at(i, j) = flip[i] > 0 ? c.coeffs[j] : -c.coeffs[j];
    }
    tab.rhs(i) = flip[i] > 0 ? c.bound : -c.bound;
    if (kind[i] == Kind::le) {
      tab.at(i, next_slack) = 1;
      tab.basis()[i] = next_slack++;
    } else {
      if (kind[i] == Kind::ge) tab.at(i, next_slack++) = -1;
      tab.at(i, next_art) = 1;
      tab.basis()[i] = next_art++;
    }
  }

  // Phase 1: maximise -(sum of artificials).
  if (n_art > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_start) continue;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (!tab.at(i, j).is_zero()) tab.obj(j) -= tab.at(i, j);
      }
      tab.obj(tab.cols()) -= tab.rhs(i);
    }
    tab.optimise(tab.cols());
    if (!tab.obj(tab.cols()).is_zero()) return LPOutcome{LPStatus::infeasible, Rational(0), {}};
    // Drive remaining (zero-valued) artificials out of the basis; rows
    // where that is impossible are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < art_start) continue;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (!tab.at(i, j).is_zero()) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 objective row: z_j - c_j.
  for (std::size_t j = 0; j <= tab.cols(); ++j) tab.obj(j) = 0;
  for (std::size_t j = 0; j < n; ++j) tab.obj(j) = -lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis()[i];
    if (b >= n || lp.objective[b].is_zero()) continue;
    const Rational cb = lp.objective[b];
    for (std::size_t j = 0; j <= tab.cols(); ++j) {
      if (!tab.at(i, j).is_zero()) tab.obj(j) += cb * tab.at(i, j);
    }
  }
  if (!tab.optimise(art_start)) return LPOutcome{LPStatus::unbounded, Rational(0), {}};

  LPOutcome out;
  out.status = LPStatus::optimal;
  out.solution.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) out.solution[tab.basis()[i]] = tab.rhs(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.objective[j].is_zero()) out.value += lp.objective[j] * out.solution[j];
  }
  if (!satisfies(lp, out.solution) || out.value != tab.obj(tab.cols())) {
    throw std::logic_error("simplex certificate failed exact verification");
  }
  return out;
}

namespace {

struct Reduced {
  std::vector<std::size_t> members;         // kept member ids
  std::vector<std::vector<std::size_t>> rows;  // positions into members
  std::optional<std::size_t> free_member;   // lies in no row
};

// Drops members whose row set contains another member's, and rows
// contained in other rows; neither changes the min-max value.
Reduced reduce(const std::vector<LabelFunction>& rows, std::size_t members) {
  Reduced red;
  const std::size_t r = rows.size();
  std::vector<LabelFunction> member_rows(members, LabelFunction(r));
  for (std::size_t k = 0; k < r; ++k) {
    if (rows[k].size() != members) throw std::invalid_argument("row length differs from member count");
    for (auto i : rows[k].ones()) member_rows[i].set(k);
  }
  for (std::size_t i = 0; i < members; ++i) {
    if (member_rows[i].none()) {
      red.free_member = i;
      return red;
    }
  }
  for (std::size_t i = 0; i < members; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < members && !dominated; ++j) {
      if (i == j || !member_rows[j].is_subset_of(member_rows[i])) continue;
      // strict subset, or equal with a lower index
      dominated = member_rows[j] != member_rows[i] || j < i;
    }
    if (!dominated) red.members.push_back(i);
  }
  std::vector<LabelFunction> kept_rows;
  for (std::size_t k = 0; k < r; ++k) {
    LabelFunction kr(red.members.size());
    for (std::size_t p = 0; p < red.members.size(); ++p) {
      if (rows[k][red.members[p]]) kr.set(p);
    }
    kept_rows.push_back(std::move(kr));
  }
  for (std::size_t k = 0; k < r; ++k) {
    if (kept_rows[k].none()) continue;
    bool implied = false;
    for (std::size_t l = 0; l < r && !implied; ++l) {
      if (l == k || !kept_rows[k].is_subset_of(kept_rows[l])) continue;
      implied = kept_rows[k] != kept_rows[l] || l < k;
    }
    if (implied) continue;
    std::vector<std::size_t> pos;
    for (auto p : kept_rows[k].ones()) pos.push_back(p);
    red.rows.push_back(std::move(pos));
  }
  return red;
}

}  // namespace

MinMaxResult min_max_mass(const std::vector<LabelFunction>& rows, std::size_t members) {
  if (members == 0) throw std::invalid_argument("no members to weigh");
  Reduced red = reduce(rows, members);
  if (red.free_member) return MinMaxResult{Rational(0), WeightedSet::singleton(*red.free_member)};
  // variables: gamma_0..gamma_{k-1}, s ; maximise -s
  const std::size_t k = red.members.size();
  LinearProgram lp;
  lp.variables = k + 1;
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = -1;
  for (const auto& row : red.rows) {
    Constraint c;
    c.coeffs.assign(k + 1, Rational(0));
    for (auto p : row) c.coeffs[p] = 1;
    c.coeffs[k] = -1;
    c.relation = Relation::less_equal;
    c.bound = 0;
    lp.constraints.push_back(std::move(c));
  }
  Constraint total;
  total.coeffs.assign(k + 1, Rational(1));
  total.coeffs[k] = 0;
  total.relation = Relation::equal;
  total.bound = 1;
  lp.constraints.push_back(std::move(total));
  LPOutcome out = solve(lp);
  if (out.status != LPStatus::optimal) throw std::logic_error("min-max program not optimal");
  std::vector<WeightedSet::Member> ms;
  for (std::size_t p = 0; p < k; ++p) {
    if (out.solution[p].sign() > 0) ms.push_back({red.members[p], out.solution[p]});
  }
  return MinMaxResult{-out.value, WeightedSet(std::move(ms))};
}

SlackResult max_slack(const std::vector<LabelFunction>& rows, std::size_t members, const Rational& eps) {
  MinMaxResult mm = min_max_mass(rows, members);
  SlackResult res;
  res.slack = eps - mm.value;
  if (res.slack.sign() > 0) res.weights = std::move(mm.weights);
  return res;
}

}  // namespace satlab
