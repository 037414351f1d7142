#include "satlab/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "satlab/dims.hpp"
#include "satlab/goodness.hpp"
#include "satlab/satgraph.hpp"

namespace satlab {

namespace {

using Rng = std::mt19937_64;

// Raw-bit helpers so results do not depend on the standard library's
// distribution algorithms.
std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

bool coin(Rng& rng, const Rational& p) {
  const std::uint64_t den = p.denominator().get_ui();
  const std::uint64_t num = p.numerator().get_ui();
  return below(rng, den) < num;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

void check_density(const Rational& d) {
  if (d.sign() < 0 || d > Rational(1)) throw std::invalid_argument("density must lie in [0, 1]");
}

}  // namespace

Graph gen_clique(std::size_t n) {
  if (n == 0) throw std::invalid_argument("clique needs at least one vertex");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(numbered_ids("v", n), edges);
}

Graph gen_anticlique(std::size_t n) {
  if (n == 0) throw std::invalid_argument("anticlique needs at least one vertex");
  return Graph(numbered_ids("v", n), {});
}

HypothesisClass gen_matching(std::size_t n) {
  if (n == 0) throw std::invalid_argument("matching needs at least one point");
  std::vector<LabelFunction> rows;
  for (std::size_t i = 0; i < n; ++i) {
    LabelFunction h(n);
    h.set(i);
    rows.push_back(std::move(h));
  }
  return HypothesisClass(numbered_ids("x", n), std::move(rows));
}

Graph gen_halfgraph(std::size_t k, std::uint64_t seed, SideNoise noise) {
  if (k == 0) throw std::invalid_argument("half-graph needs k >= 1");
  std::vector<std::string> ids = numbered_ids("a", k);
  for (const auto& id : numbered_ids("b", k)) ids.push_back(id);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(i, k + j);
  }
  if (noise == SideNoise::random) {
    Rng rng(seed);
    for (std::size_t side = 0; side < 2; ++side) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (rng() & 1u) edges.emplace_back(side * k + i, side * k + j);
        }
      }
    }
  }
  return Graph(std::move(ids), edges);
}

HypothesisClass gen_subsets(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw std::invalid_argument("need n >= k >= 1");
  std::vector<LabelFunction> rows;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    LabelFunction h(n);
    for (auto i : s) h.set(i);
    rows.push_back(std::move(h));
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return HypothesisClass(numbered_ids("x", n), std::move(rows));
}

ChainParameters pick_chain_parameters(std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  // Above 1/(k+1), k+1 of the k-sets already realize a (k+1)-set and the
  // class grows upward, so the window is also capped there.
  for (std::size_t n = 2 * k;; ++n) {
    const Rational lo(1, static_cast<long>(n - k + 1));
    const Rational hi = std::min({Rational(2, static_cast<long>(n)), Rational(1, static_cast<long>(k + 1)), Rational(1, 2)});
    if (lo < hi) return {n, (lo + hi) / Rational(2)};
  }
}

HypothesisClass gen_random_class(std::size_t nx, std::size_t nh, std::uint64_t seed) {
  if (nx < 63) nh = std::min<std::size_t>(nh, std::size_t{1} << nx);
  Rng rng(seed);
  std::set<LabelFunction> seen;
  std::vector<LabelFunction> rows;
  while (rows.size() < nh) {
    LabelFunction h(nx);
    std::uint64_t word = 0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (x % 64 == 0) word = rng();
      h.set(x, (word >> (x % 64)) & 1u);
    }
    if (seen.insert(h).second) rows.push_back(std::move(h));
  }
  return HypothesisClass(numbered_ids("x", nx), std::move(rows));
}

Graph gen_random_graph(std::size_t n, std::uint64_t seed, const Rational& density) {
  check_density(density);
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng, density)) edges.emplace_back(u, v);
    }
  }
  return Graph(numbered_ids("v", n), edges);
}

Graph gen_random_stable_graph(std::size_t n, std::size_t forbidden_halfgraph, std::uint64_t seed,
                              const Rational& density, std::size_t max_attempts) {
  check_density(density);
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g = gen_random_graph(n, rng(), density);
    if (static_cast<std::size_t>(std::max(0, thr_dim(class_from_graph(g)))) < forbidden_halfgraph) return g;
  }
  throw std::runtime_error("no graph without a " + std::to_string(forbidden_halfgraph) + "-half-graph in " +
                           std::to_string(max_attempts) + " samples");
}

PlantedTree gen_planted_tree(std::size_t m, std::size_t cluster) {
  if (m == 0 || m > 10) throw std::invalid_argument("planted height must lie in 1..10");
  if (cluster == 0) throw std::invalid_argument("clusters must be nonempty");
  const std::size_t nodes = (std::size_t{1} << m) - 1;
  const std::size_t leaves = std::size_t{1} << m;
  std::vector<std::string> ids = numbered_ids("n", nodes, 0);
  PlantedTree out;
  out.tree = SpecialTree::empty_shape(m, Side::vertex, Side::vertex);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t rho = 0; rho < leaves; ++rho) {
    for (std::size_t c = 0; c < cluster; ++c) {
      const std::size_t v = ids.size();
      ids.push_back("l" + std::to_string(rho) + "." + std::to_string(c));
      out.leaf_vertices.push_back(v);
      if (c == 0) out.tree.leaves[rho] = v;
      for (auto [slot, bit] : out.tree.path(rho)) {
        if (bit) edges.emplace_back(slot, v);
      }
    }
  }
  for (std::size_t s = 0; s < nodes; ++s) out.tree.nodes[s] = s;
  out.graph = Graph(std::move(ids), edges);
  return out;
}

GoodNotExcellent search_good_not_excellent(const Rational& eps, std::size_t side, std::uint64_t seed) {
  if (side != 6) throw std::invalid_argument("the degree pattern is defined for sides of 6");
  constexpr std::size_t k = 6;
  const std::set<int> deg_a{0, 1, 5};
  const std::set<int> deg_b{0, 2, 4};
  Rng rng(seed);

  // inner graphs on one side: 15 possible edges
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  auto inner = [&](const std::set<int>& allowed) {
    std::vector<std::uint32_t> ok;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      int deg[k] = {};
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if ((mask >> p) & 1u) {
          ++deg[pairs[p].first];
          ++deg[pairs[p].second];
        }
      }
      if (std::all_of(deg, deg + k, [&](int d) { return allowed.count(d); })) ok.push_back(mask);
    }
    return ok;
  };
  const std::vector<std::uint32_t> inner_a = inner(deg_a);
  const std::vector<std::uint32_t> inner_b = inner(deg_b);

  // cross rows: a_i's neighbours in B
  std::vector<std::uint32_t> row_choices;
  for (std::uint32_t r = 0; r < (1u << k); ++r) {
    if (deg_b.count(__builtin_popcount(r))) row_choices.push_back(r);
  }
  shuffle(row_choices, rng);

  GoodNotExcellent result{Graph(), WeightedSet::singleton(0), WeightedSet::singleton(0), 0};
  std::vector<std::size_t> a_idx(k), b_idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    a_idx[i] = i;
    b_idx[i] = k + i;
  }
  const WeightedSet a_set = WeightedSet::uniform(a_idx);
  const WeightedSet b_set = WeightedSet::uniform(b_idx);

  auto build = [&](const std::vector<std::uint32_t>& cross) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const std::uint32_t ma = inner_a[below(rng, inner_a.size())];
    const std::uint32_t mb = inner_b[below(rng, inner_b.size())];
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if ((ma >> p) & 1u) edges.emplace_back(pairs[p].first, pairs[p].second);
      if ((mb >> p) & 1u) edges.emplace_back(k + pairs[p].first, k + pairs[p].second);
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if ((cross[i] >> j) & 1u) edges.emplace_back(i, k + j);
      }
    }
    std::vector<std::string> ids = numbered_ids("a", k);
    for (const auto& id : numbered_ids("b", k)) ids.push_back(id);
    return Graph(std::move(ids), edges);
  };

  auto accept = [&](const Graph& g) {
    if (!is_good(g, a_set, eps) || !is_good(g, b_set, eps)) return false;
    const std::vector<LabelFunction> tg = good_opinion_functions(g, eps);
    if (is_excellent(g, a_set, eps, tg) || is_excellent(g, b_set, eps, tg)) return false;
    return !pair_opinion(g, a_set, b_set, eps) && !pair_opinion(g, b_set, a_set, eps);
  };

  std::vector<std::uint32_t> cross(k, 0);
  std::vector<int> col(k, 0);
  bool found = false;
  // half of A must see 4 of B, and half of B must see 5 of A
  std::function<void(std::size_t, int)> dfs = [&](std::size_t i, int fours) {
    if (found) return;
    if (i == k) {
      int fives = 0;
      for (int c : col) {
        if (!deg_a.count(c)) return;
        fives += c == 5 ? 1 : 0;
      }
      if (fours != 3 || fives != 3) return;
      ++result.tried;
      Graph g = build(cross);
      if (accept(g)) {
        result.graph = std::move(g);
        found = true;
      }
      return;
    }
    const int rows_left = static_cast<int>(k - i);
    for (auto r : row_choices) {
      const int f = fours + (__builtin_popcount(r) == 4 ? 1 : 0);
      if (f > 3 || f + rows_left - 1 < 3) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const int c = col[j] + static_cast<int>((r >> j) & 1u);
        // some allowed final count must stay reachable
        ok = std::any_of(deg_a.begin(), deg_a.end(), [&](int t) { return c <= t && t <= c + rows_left - 1; });
      }
      if (!ok) continue;
      cross[i] = r;
      for (std::size_t j = 0; j < k; ++j) col[j] += static_cast<int>((r >> j) & 1u);
      dfs(i + 1, f);
      for (std::size_t j = 0; j < k; ++j) col[j] -= static_cast<int>((r >> j) & 1u);
      if (found) return;
    }
  };
  dfs(0, 0);
  if (!found) {
    throw std::runtime_error("search exhausted after " + std::to_string(result.tried) + " candidate graphs");
  }
  result.a = a_set;
  result.b = b_set;
  return result;
}

}  // namespace satlab
