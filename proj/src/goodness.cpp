#include "satlab/goodness.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "satlab/satgraph.hpp"

namespace satlab {

namespace {

std::optional<bool> decide(const Rational& ones, const Rational& eps) {
  if (ones < eps) return false;
  if (Rational(1) - ones < eps) return true;
  return std::nullopt;
}

template <class RowOf>
std::optional<LabelFunction> majority_over(std::size_t n, const WeightedSet& ws, const Rational& eps, RowOf row_of) {
  std::vector<Rational> ones(n, Rational(0));
  for (const auto& m : ws.members()) {
    for (auto x : row_of(m.index).ones()) ones[x] += m.weight;
  }
  LabelFunction t(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto d = decide(ones[x], eps);
    if (!d) return std::nullopt;
    t.set(x, *d);
  }
  return t;
}

std::vector<std::size_t> normalized(const Graph& g, const std::vector<std::size_t>& x) {
  if (x.empty()) throw std::invalid_argument("extraction needs a nonempty vertex set");
  std::vector<std::size_t> s = x;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.back() >= g.size()) throw std::invalid_argument("vertex index out of range");
  return s;
}

// Both parts of the piece under `side` have at least eps * |piece| members.
bool balanced(const LabelFunction& side, const std::vector<std::size_t>& piece, const Rational& eps) {
  std::size_t ones = 0;
  for (auto v : piece) ones += side[v] ? 1 : 0;
  const Rational bound = eps * Rational(static_cast<long>(piece.size()));
  return Rational(static_cast<long>(ones)) >= bound && Rational(static_cast<long>(piece.size() - ones)) >= bound;
}

struct Partition {
  std::optional<std::vector<std::size_t>> found;
  std::size_t depth = 0;
  std::vector<std::size_t> splitters;               // per node slot, in heap order
  std::vector<std::vector<std::size_t>> leaf_sets;  // per leaf slot
};

// Breadth-first tree partition of X. `splitter` returns the index of a
// balanced side for a piece, or nullopt when the piece is accepted;
// side_of maps that index to its 0/1 labelling of V.
template <class Splitter, class SideOf>
Partition partition(const std::vector<std::size_t>& x, std::size_t m, Splitter splitter, SideOf side_of) {
  Partition out;
  out.splitters.assign((std::size_t{1} << m) - 1, 0);
  std::vector<std::vector<std::size_t>> level{x};
  for (std::size_t depth = 0; depth < m; ++depth) {
    std::vector<std::vector<std::size_t>> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      auto s = splitter(level[i]);
      if (!s) {
        out.found = std::move(level[i]);
        out.depth = depth;
        return out;
      }
      out.splitters[(std::size_t{1} << depth) - 1 + i] = *s;
      const LabelFunction& side = side_of(*s);
      std::vector<std::size_t> zero, one;
      for (auto v : level[i]) (side[v] ? one : zero).push_back(v);
      next.push_back(std::move(zero));
      next.push_back(std::move(one));
    }
    level = std::move(next);
  }
  out.depth = m;
  out.leaf_sets = std::move(level);
  return out;
}

// The partition reached depth m but the pieces cannot host an actual tree
// (a leaf piece made only of node vertices, say). Small X only.
struct NoActualTree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lowest member of each leaf set that is not in `avoid`.
std::vector<std::size_t> pick_leaves(const std::vector<std::vector<std::size_t>>& sets,
                                     const std::set<std::size_t>& avoid) {
  std::vector<std::size_t> leaves;
  for (const auto& s : sets) {
    auto it = std::find_if(s.begin(), s.end(), [&](std::size_t v) { return !avoid.count(v); });
    if (it == s.end()) throw NoActualTree("a leaf piece holds only node vertices");
    leaves.push_back(*it);
  }
  return leaves;
}

bool contains(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Without an actual tree a singleton still answers when it is large enough,
// which is the case for |X| < 1/eps^m.
ExtractionResult singleton_fallback(const std::vector<std::size_t>& xs, const Rational& eps, std::size_t m,
                                    const NoActualTree& why) {
  Rational bound(static_cast<long>(xs.size()));
  for (std::size_t i = 0; i < m; ++i) bound *= eps;
  if (bound > Rational(1)) throw std::runtime_error(std::string("extraction failed: ") + why.what());
  ExtractionResult r;
  r.set = std::vector<std::size_t>{xs.front()};
  r.depth = m;
  return r;
}

void require_valid(const Graph& g, const SpecialTree& t) {
  std::string why = check_tree(g, t);
  if (!why.empty()) throw std::logic_error("extracted tree is invalid: " + why);
}

}  // namespace

std::optional<bool> opinion_on(const WeightedSet& ws, const LabelFunction& f, const Rational& eps) {
  return decide(ws.mass_on(f), eps);
}

std::optional<LabelFunction> majority_function(const HypothesisClass& c, const WeightedSet& ws, const Rational& eps) {
  if (ws.max_index() >= c.size()) throw std::invalid_argument("weighted set member outside the class");
  return majority_over(c.domain_size(), ws, eps, [&](std::size_t h) -> const LabelFunction& { return c[h]; });
}

std::optional<LabelFunction> majority_function(const Graph& g, const WeightedSet& ws, const Rational& eps) {
  if (ws.max_index() >= g.size()) throw std::invalid_argument("weighted set member outside the graph");
  return majority_over(g.size(), ws, eps, [&](std::size_t v) -> const LabelFunction& { return g.row(v); });
}

bool is_good(const HypothesisClass& c, const WeightedSet& ws, const Rational& eps) {
  return majority_function(c, ws, eps).has_value();
}

bool is_good(const Graph& g, const WeightedSet& ws, const Rational& eps) {
  return majority_function(g, ws, eps).has_value();
}

bool is_excellent(const Graph& g, const WeightedSet& ws, const Rational& eps, const std::vector<LabelFunction>& t_good) {
  if (!is_good(g, ws, eps)) return false;
  for (const auto& tau : t_good) {
    if (!opinion_on(ws, tau, eps)) return false;
  }
  return true;
}

std::optional<bool> pair_opinion(const Graph& g, const WeightedSet& a, const WeightedSet& b, const Rational& eps) {
  auto tau_a = majority_function(g, a, eps);
  if (!tau_a) return std::nullopt;
  return opinion_on(b, *tau_a, eps);
}

ExtractionResult extract_good(const Graph& g, const std::vector<std::size_t>& x, const Rational& eps, std::size_t m) {
  if (eps.sign() <= 0 || eps >= Rational(1, 2)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (m >= 31) throw std::invalid_argument("depth too large");
  const std::vector<std::size_t> xs = normalized(g, x);
  // splitters from outside the piece first, so leaves stay clear of nodes
  auto splitter = [&](const std::vector<std::size_t>& piece) -> std::optional<std::size_t> {
    std::optional<std::size_t> inside;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!balanced(g.row(v), piece, eps)) continue;
      if (!contains(piece, v)) return v;
      if (!inside) inside = v;
    }
    return inside;
  };
  Partition p = partition(xs, m, splitter, [&](std::size_t v) -> const LabelFunction& { return g.row(v); });
  ExtractionResult r;
  r.depth = p.depth;
  if (p.found) {
    r.set = std::move(p.found);
    return r;
  }
  SpecialTree t = SpecialTree::empty_shape(m, Side::vertex, Side::vertex);
  t.nodes = p.splitters;
  try {
    t.leaves = pick_leaves(p.leaf_sets, std::set<std::size_t>(t.nodes.begin(), t.nodes.end()));
  } catch (const NoActualTree& e) {
    return singleton_fallback(xs, eps, m, e);
  }
  require_valid(g, t);
  r.tree = std::move(t);
  return r;
}

ExtractionResult extract_excellent(const Graph& g, const std::vector<std::size_t>& x, const Rational& eps,
                                   std::size_t m) {
  if (m >= 31) throw std::invalid_argument("depth too large");
  if (eps.sign() <= 0 || eps >= inverse_power_of_two(static_cast<unsigned>(m)) || eps >= Rational(1, 2)) {
    throw std::invalid_argument("eps must lie in (0, 1/2^m) and below 1/2");
  }
  const std::vector<std::size_t> xs = normalized(g, x);
  const GoodOpinions tg = good_opinion_table(g, eps);
  // Splitting sides: vertex rows first (lowest vertex), then the other
  // opinion functions in table order.
  std::vector<LabelFunction> sides;
  std::vector<std::optional<std::size_t>> side_vertex;  // actual vertex, if any
  std::vector<const WeightedSet*> side_witness;
  for (std::size_t v = 0; v < g.size(); ++v) {
    sides.push_back(g.row(v));
    side_vertex.push_back(v);
    side_witness.push_back(nullptr);
  }
  for (std::size_t j = 0; j < tg.functions.size(); ++j) {
    if (tg.witnesses[j].size() == 1) continue;  // a vertex row, already listed
    sides.push_back(tg.functions[j]);
    side_vertex.push_back(std::nullopt);
    side_witness.push_back(&tg.witnesses[j]);
  }
  auto splitter = [&](const std::vector<std::size_t>& piece) -> std::optional<std::size_t> {
    std::optional<std::size_t> inside;
    for (std::size_t s = 0; s < sides.size(); ++s) {
      if (!balanced(sides[s], piece, eps)) continue;
      if (!side_vertex[s] || !contains(piece, *side_vertex[s])) return s;
      if (!inside) inside = s;
    }
    return inside;
  };
  Partition p = partition(xs, m, splitter, [&](std::size_t s) -> const LabelFunction& { return sides[s]; });
  ExtractionResult r;
  r.depth = p.depth;
  if (p.found) {
    r.set = std::move(p.found);
    return r;
  }
  // Virtual tree to actual tree: leaves avoid actual node vertices, then
  // each virtual node takes its lowest witness member that agrees with its
  // opinion on every leaf below and is not a leaf.
  SpecialTree t = SpecialTree::empty_shape(m, Side::vertex, Side::vertex);
  std::set<std::size_t> actual_nodes;
  for (auto s : p.splitters) {
    if (side_vertex[s]) actual_nodes.insert(*side_vertex[s]);
  }
  try {
    t.leaves = pick_leaves(p.leaf_sets, actual_nodes);
    const std::set<std::size_t> leaf_set(t.leaves.begin(), t.leaves.end());
    for (std::size_t slot = 0; slot < t.nodes.size(); ++slot) {
      const std::size_t s = p.splitters[slot];
      if (side_vertex[s]) {
        t.nodes[slot] = *side_vertex[s];
        continue;
      }
      const LabelFunction& tau = sides[s];
      const std::vector<std::size_t> below = t.leaves_below(slot);
      std::vector<std::size_t> members = side_witness[s]->indices();
      std::sort(members.begin(), members.end());
      auto it = std::find_if(members.begin(), members.end(), [&](std::size_t a) {
        if (leaf_set.count(a)) return false;
        for (auto leaf : below) {
          if (g.adjacent(a, t.leaves[leaf]) != tau[t.leaves[leaf]]) return false;
        }
        return true;
      });
      if (it == members.end()) throw NoActualTree("no witness member survives the error sets");
      t.nodes[slot] = *it;
    }
  } catch (const NoActualTree& e) {
    return singleton_fallback(xs, eps, m, e);
  }
  require_valid(g, t);
  r.tree = std::move(t);
  return r;
}

}  // namespace satlab
