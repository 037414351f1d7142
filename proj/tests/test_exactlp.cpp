#include <functional>
#include <optional>
#include <random>

#include "doctest.h"
#include "satlab/exactlp.hpp"

using namespace satlab;

namespace {

Constraint le(std::vector<Rational> row, Rational bound) { return {std::move(row), Relation::less_equal, bound}; }
Constraint eq(std::vector<Rational> row, Rational bound) { return {std::move(row), Relation::equal, bound}; }

// Solves the square system m x = rhs exactly, nullopt when singular.
std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Best objective over all basic feasible points; nullopt when none.
std::optional<Rational> vertex_oracle(const LinearProgram& lp) {
  // every constraint and every bound x_i >= 0 as a candidate tight row
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : lp.constraints) {
    rows.push_back(c.coeffs);
    rhs.push_back(c.bound);
  }
  for (std::size_t i = 0; i < lp.variables; ++i) {
    std::vector<Rational> r(lp.variables, Rational(0));
    r[i] = Rational(1);
    rows.push_back(r);
    rhs.push_back(Rational(0));
  }
  std::optional<Rational> best;
  const std::size_t n = lp.variables, total = rows.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> b;
      for (std::size_t i : pick) {
        m.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      auto x = gauss(m, b);
      if (!x || !satisfies(lp, *x)) return;
      Rational v(0);
      for (std::size_t i = 0; i < n; ++i) v += lp.objective[i] * (*x)[i];
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t i = from; i < total; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("solve: small fixed programs") {
  LinearProgram lp{1, {le({Rational(1)}, Rational(1, 3))}, {Rational(1)}};
  LPOutcome r = solve(lp);
  CHECK(r.status == LPStatus::optimal);
  CHECK(r.value == Rational(1, 3));

  LinearProgram bad{1, {le({Rational(1)}, Rational(0)), le({Rational(-1)}, Rational(-1))}, {Rational(1)}};
  CHECK(solve(bad).status == LPStatus::infeasible);

  LinearProgram unb{2, {le({Rational(1), Rational(-1)}, Rational(1))}, {Rational(0), Rational(1)}};
  CHECK(solve(unb).status == LPStatus::unbounded);

  LinearProgram mismatch{2, {le({Rational(1)}, Rational(1))}, {Rational(1), Rational(1)}};
  CHECK_THROWS_AS(solve(mismatch), std::invalid_argument);

  // equality with a negative right-hand side
  LinearProgram e{2, {eq({Rational(-1), Rational(-1)}, Rational(-1))}, {Rational(2), Rational(1)}};
  r = solve(e);
  CHECK(r.status == LPStatus::optimal);
  CHECK(r.value == Rational(2));
  CHECK(satisfies(e, r.solution));
}

TEST_CASE("solve agrees with vertex enumeration") {
  std::mt19937_64 rng(5);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 250; ++trial) {
    LinearProgram lp;
    lp.variables = 1 + rng() % 4;
    const std::size_t m = 1 + rng() % 5;
    auto coeff = [&] { return Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)); };
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(lp.variables);
      for (auto& x : row) x = coeff();
      const Relation rel = rng() % 4 == 0 ? Relation::equal : Relation::less_equal;
      lp.constraints.push_back({row, rel, coeff()});
    }
    // keep it bounded: sum x <= 10
    lp.constraints.push_back(le(std::vector<Rational>(lp.variables, Rational(1)), Rational(10)));
    for (std::size_t i = 0; i < lp.variables; ++i) lp.objective.push_back(coeff());
    const LPOutcome r = solve(lp);
    const auto oracle = vertex_oracle(lp);
    if (oracle) {
      ++optimal;
      REQUIRE(r.status == LPStatus::optimal);
      CHECK(r.value == *oracle);
      CHECK(satisfies(lp, r.solution));
    } else {
      ++infeasible;
      CHECK(r.status == LPStatus::infeasible);
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
}

TEST_CASE("max_slack fixed cases") {
  // no rows: slack is eps itself
  SlackResult s = max_slack({}, 3, Rational(1, 4));
  CHECK(s.slack == Rational(1, 4));
  REQUIRE(s.weights);
  CHECK(s.weights->size() >= 1);

  // a row containing every member
  s = max_slack({LabelFunction(3, true)}, 3, Rational(1, 4));
  CHECK(s.slack == Rational(1, 4) - Rational(1));
  CHECK(!s.weights);

  // constant-zero over the 5-matching at 1/4: uniform, slack 1/20
  std::vector<LabelFunction> rows;
  for (std::size_t x = 0; x < 5; ++x) {
    LabelFunction r(5);
    r.set(x);
    rows.push_back(r);
  }
  s = max_slack(rows, 5, Rational(1, 4));
  CHECK(s.slack == Rational(1, 20));
  REQUIRE(s.weights);
  for (std::size_t i = 0; i < 5; ++i) CHECK(s.weights->weight_of(i) == Rational(1, 5));

  // singleton type of the 2-subsets of 4 points, from the three pairs through x1:
  // every other point is hit by one of the three
  std::vector<LabelFunction> srows{LabelFunction::from_string("000"), LabelFunction::from_string("100"),
                                   LabelFunction::from_string("010"), LabelFunction::from_string("001")};
  s = max_slack(srows, 3, Rational(2, 5));
  CHECK(s.slack == Rational(2, 5) - Rational(1, 3));
  CHECK(s.slack == Rational(1, 15));

  const MinMaxResult mm = min_max_mass(rows, 5);
  CHECK(mm.value == Rational(1, 5));
}

TEST_CASE("max_slack sign agrees with a grid search") {
  std::mt19937_64 rng(9);
  const Rational eps_list[] = {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(3, 7)};
  constexpr long grid = 60;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t members = 1 + rng() % 3;
    std::vector<LabelFunction> rows(1 + rng() % 4, LabelFunction(members));
    for (auto& r : rows) {
      for (std::size_t i = 0; i < members; ++i) r.set(i, rng() % 2);
    }
    const Rational eps = eps_list[trial % 5];
    bool grid_positive = false;
    for (long a = 0; a <= grid && !grid_positive; ++a) {
      for (long b = 0; a + b <= grid && !grid_positive; ++b) {
        if (members < 2 && b > 0) break;
        const long c = grid - a - b;
        if (members < 3 && c > 0) continue;
        const Rational w[3] = {Rational(a, grid), Rational(b, grid), Rational(c, grid)};
        bool ok = true;
        for (const auto& r : rows) {
          Rational m(0);
          for (std::size_t i = 0; i < members; ++i) {
            if (r[i]) m += w[i];
          }
          if (m >= eps) ok = false;
        }
        grid_positive = ok;
      }
    }
    const SlackResult s = max_slack(rows, members, eps);
    CHECK((s.slack.sign() > 0) == grid_positive);
    CHECK(s.weights.has_value() == (s.slack.sign() > 0));
    if (s.weights) {
      for (const auto& r : rows) CHECK(s.weights->mass_on(r) <= eps - s.slack);
    }
  }
}
