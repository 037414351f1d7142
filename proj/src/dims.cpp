#include "satlab/dims.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "satlab/kernels.hpp"

namespace satlab {

namespace {

int floor_log2(std::size_t n) { return n == 0 ? -1 : static_cast<int>(std::bit_width(n)) - 1; }

// ---- VC

class ShatterTester {
 public:
  explicit ShatterTester(const HypothesisClass& c) : c_(c), codes_(c.size()) {}

  bool shattered(const std::vector<std::size_t>& set) {
    const std::size_t s = set.size();
    if (s >= 63 || c_.size() < (std::size_t{1} << s)) return false;
    std::vector<char> seen(std::size_t{1} << s, 0);
    std::size_t distinct = 0;
    if (c_.words() == 1) {
      std::uint64_t mask = 0;
      for (auto x : set) mask |= std::uint64_t{1} << x;
      kernels::active().project(c_.packed().data(), c_.size(), mask, codes_.data());
      for (auto code : codes_) {
        if (!seen[code]) {
          seen[code] = 1;
          ++distinct;
        }
      }
    } else {
      for (std::size_t h = 0; h < c_.size(); ++h) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < s; ++i) {
          if (c_.label(h, set[i])) code |= std::uint64_t{1} << i;
        }
        if (!seen[code]) {
          seen[code] = 1;
          ++distinct;
        }
      }
    }
    return distinct == seen.size();
  }

 private:
  const HypothesisClass& c_;
  std::vector<std::uint64_t> codes_;
};

// Levels of shattered sets, built apriori-style (every subset of a
// shattered set is shattered).
std::vector<std::size_t> largest_shattered(const HypothesisClass& c) {
  ShatterTester tester(c);
  std::set<std::vector<std::size_t>> level;
  for (std::size_t x = 0; x < c.domain_size(); ++x) {
    if (tester.shattered({x})) level.insert({x});
  }
  std::vector<std::size_t> best;
  while (!level.empty()) {
    best = *level.begin();
    std::set<std::vector<std::size_t>> next;
    for (const auto& s : level) {
      for (std::size_t x = s.back() + 1; x < c.domain_size(); ++x) {
        std::vector<std::size_t> cand = s;
        cand.push_back(x);
        bool ok = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && ok; ++drop) {
          std::vector<std::size_t> sub;
          for (std::size_t i = 0; i < cand.size(); ++i) {
            if (i != drop) sub.push_back(cand[i]);
          }
          ok = level.count(sub) != 0;
        }
        if (ok && tester.shattered(cand)) next.insert(std::move(cand));
      }
    }
    level = std::move(next);
  }
  return best;
}

// ---- Littlestone

class LdimSolver {
 public:
  explicit LdimSolver(const HypothesisClass& c) : c_(c) {
    for (std::size_t x = 0; x < c.domain_size(); ++x) cols_.push_back(c.column(x));
  }

  LabelFunction everything() const { return LabelFunction(c_.size(), true); }

  int solve(const LabelFunction& s) {
    const std::size_t n = s.count();
    if (n == 0) return -1;
    if (n == 1) return 0;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const int upper = floor_log2(n);
    int best = 0;
    for (std::size_t x = 0; x < cols_.size() && best < upper; ++x) {
      LabelFunction s1 = s & cols_[x];
      const std::size_t n1 = s1.count();
      if (n1 == 0 || n1 == n) continue;
      const std::size_t small = std::min(n1, n - n1);
      if (1 + floor_log2(small) <= best) continue;
      LabelFunction s0 = s & ~cols_[x];
      const LabelFunction& first = n1 <= n - n1 ? s1 : s0;
      const LabelFunction& second = n1 <= n - n1 ? s0 : s1;
      const int a = solve(first);
      if (1 + a <= best) continue;
      const int b = solve(second);
      best = std::max(best, 1 + std::min(a, b));
    }
    memo_.emplace(s, best);
    return best;
  }

  // Lowest x whose two restrictions both have ldim >= h - 1.
  void build(const LabelFunction& s, std::size_t h, std::size_t slot, SpecialTree& t) {
    if (h == 0) {
      t.leaves[slot - t.nodes.size()] = s.ones().front();
      return;
    }
    for (std::size_t x = 0; x < cols_.size(); ++x) {
      LabelFunction s1 = s & cols_[x];
      LabelFunction s0 = s & ~cols_[x];
      if (s1.none() || s0.none()) continue;
      if (solve(s0) >= static_cast<int>(h) - 1 && solve(s1) >= static_cast<int>(h) - 1) {
        t.nodes[slot] = x;
        build(s0, h - 1, 2 * slot + 1, t);
        build(s1, h - 1, 2 * slot + 2, t);
        return;
      }
    }
    throw std::logic_error("mistake tree construction lost its invariant");
  }

 private:
  const HypothesisClass& c_;
  std::vector<LabelFunction> cols_;
  std::unordered_map<LabelFunction, int> memo_;
};

// ---- thresholds
//
// After choosing x_1..x_j, C_i (i <= j) holds the hypotheses that are 0 on
// x_1..x_i and 1 on x_{i+1}..x_j, and Z those that are 0 on all of them.
// Only the inclusion-minimal C's matter for the future.

struct ThrState {
  std::vector<LabelFunction> cs;  // minimal, sorted
  LabelFunction z;
  bool started = false;
  bool operator<(const ThrState& o) const {
    if (started != o.started) return started < o.started;
    if (z != o.z) return z < o.z;
    return cs < o.cs;
  }
};

class ThrSolver {
 public:
  explicit ThrSolver(const HypothesisClass& c) : c_(c) {
    for (std::size_t x = 0; x < c.domain_size(); ++x) cols_.push_back(c.column(x));
  }

  ThrState initial() const {
    ThrState s;
    s.z = LabelFunction(c_.size(), true);
    return s;
  }

  // Returns false when some constraint set becomes empty.
  bool step(const ThrState& s, std::size_t x, ThrState& out) const {
    LabelFunction z1 = s.z & ~cols_[x];
    if (z1.none()) return false;
    std::vector<LabelFunction> cs;
    cs.reserve(s.cs.size() + 1);
    for (const auto& c : s.cs) {
      LabelFunction r = c & cols_[x];
      if (r.none()) return false;
      cs.push_back(std::move(r));
    }
    cs.push_back(z1);
    out.cs = minimal(std::move(cs));
    out.z = std::move(z1);
    out.started = true;
    return true;
  }

  int best(const ThrState& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const std::size_t zc = s.z.count();
    const int cap = static_cast<int>(s.started ? zc - 1 : zc);
    int result = 0;
    ThrState next;
    for (std::size_t x = 0; x < cols_.size() && result < cap; ++x) {
      if (step(s, x, next)) result = std::max(result, 1 + best(next));
    }
    memo_.emplace(s, result);
    return result;
  }

  HalfGraph witness() {
    HalfGraph hg;
    hg.left_side = Side::hypothesis;
    hg.right_side = Side::domain;
    ThrState s = initial();
    int remaining = best(s);
    std::vector<std::size_t> xs;
    while (remaining > 0) {
      ThrState next;
      bool moved = false;
      for (std::size_t x = 0; x < cols_.size(); ++x) {
        if (step(s, x, next) && 1 + best(next) == remaining) {
          xs.push_back(x);
          s = std::move(next);
          --remaining;
          moved = true;
          break;
        }
      }
      if (!moved) throw std::logic_error("threshold witness reconstruction failed");
    }
    // h_i: 0 on x_1..x_i, 1 on x_{i+1}..x_l; take the lowest such index.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      LabelFunction cand(c_.size(), true);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        cand &= j <= i ? ~cols_[xs[j]] : cols_[xs[j]];
      }
      hg.left.push_back(cand.ones().front());
      hg.right.push_back(xs[i]);
    }
    return hg;
  }

 private:
  static std::vector<LabelFunction> minimal(std::vector<LabelFunction> cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<LabelFunction> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      bool has_smaller = false;
      for (std::size_t j = 0; j < cs.size() && !has_smaller; ++j) {
        has_smaller = j != i && cs[j].is_subset_of(cs[i]);
      }
      if (!has_smaller) out.push_back(cs[i]);
    }
    return out;
  }

  const HypothesisClass& c_;
  std::vector<LabelFunction> cols_;
  std::map<ThrState, int> memo_;
};

// ---- Ramsey step

struct Ramsey {
  const SpecialTree& tree;
  const std::vector<bool>& colours;
  std::size_t internal;           // 2^h - 1
  std::vector<int> r[2];          // per heap position, both colours

  Ramsey(const SpecialTree& t, const std::vector<bool>& c) : tree(t), colours(c) {
    internal = t.nodes.size();
    const std::size_t total = 2 * internal + 1;
    for (int col = 0; col < 2; ++col) {
      r[col].assign(total, 0);
      for (std::size_t p = internal; p-- > 0;) {
        const int a = r[col][2 * p + 1];
        const int b = r[col][2 * p + 2];
        int v = std::max(a, b);
        if (colours[p] == static_cast<bool>(col)) v = std::max(v, 1 + std::min(a, b));
        r[col][p] = v;
      }
    }
  }

  std::size_t leftmost_leaf(std::size_t pos) const {
    while (pos < internal) pos = 2 * pos + 1;
    return pos - internal;
  }

  void build(std::size_t pos, int t, bool col, std::size_t out_slot, MonochromaticResult& out) const {
    SpecialTree& sub = out.subtree;
    if (t == 0) {
      sub.leaves[out_slot - sub.nodes.size()] = tree.leaves[leftmost_leaf(pos)];
      return;
    }
    const std::size_t left = 2 * pos + 1;
    const std::size_t right = 2 * pos + 2;
    const auto& rc = r[col ? 1 : 0];
    if (colours[pos] == col && 1 + std::min(rc[left], rc[right]) >= t) {
      sub.nodes[out_slot] = tree.nodes[pos];
      out.node_slots[out_slot] = pos;
      build(left, t - 1, col, 2 * out_slot + 1, out);
      build(right, t - 1, col, 2 * out_slot + 2, out);
    } else if (rc[left] >= t) {
      build(left, t, col, out_slot, out);
    } else {
      build(right, t, col, out_slot, out);
    }
  }
};

template <class Host>
HalfGraph tree_to_halfgraph_impl(const Host& host, const SpecialTree& tree, std::size_t k) {
  const std::size_t need = (std::size_t{1} << (k + 2)) - 2;
  if (k > 28 || tree.height < need) {
    throw std::invalid_argument("tree of height " + std::to_string(tree.height) + " is too short for a half-graph of length " +
                                std::to_string(k) + " (needs " + std::to_string(need) + ")");
  }
  struct Step {
    std::size_t a;
    std::size_t b;
    bool top;
  };
  std::vector<Step> steps;
  SpecialTree cur = tree;
  while (cur.height >= 1) {
    const std::size_t b = cur.leaves.front();
    std::vector<bool> colours(cur.nodes.size());
    for (std::size_t p = 0; p < cur.nodes.size(); ++p) {
      colours[p] = related(host, cur.node_side, cur.nodes[p], cur.leaf_side, b);
    }
    MonochromaticResult mono = monochromatic_subtree(cur, colours);
    steps.push_back({mono.subtree.nodes.front(), b, mono.colour});
    if (mono.subtree.height < 2) break;
    // related colour: keep the side the root is not related to, and vice versa
    cur = subtree_at(mono.subtree, mono.colour ? 1 : 2);
  }
  // Bottom steps read b a from the front, top steps a b from the back.
  std::vector<std::pair<bool, std::size_t>> line;  // (is_a, element)
  for (const auto& s : steps) {
    if (!s.top) {
      line.emplace_back(false, s.b);
      line.emplace_back(true, s.a);
    }
  }
  std::vector<std::pair<bool, std::size_t>> tail;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->top) {
      tail.emplace_back(true, it->a);
      tail.emplace_back(false, it->b);
    }
  }
  if (!tail.empty()) {
    // drop the lone a at the start of the tail and the final b
    line.insert(line.end(), tail.begin() + 1, tail.end() - 1);
  }
  HalfGraph hg;
  hg.left_side = tree.node_side;
  hg.right_side = tree.leaf_side;
  for (std::size_t i = 0; i + 1 < line.size() && hg.length() < k; i += 2) {
    hg.right.push_back(line[i].second);
    hg.left.push_back(line[i + 1].second);
  }
  if (hg.length() < k) throw std::logic_error("peeling produced a half-graph that is too short");
  const std::string why = check_halfgraph(host, hg);
  if (!why.empty()) throw std::logic_error("peeling produced an invalid half-graph: " + why);
  return hg;
}

}  // namespace

int vc_dim(const HypothesisClass& c) {
  if (c.empty()) return -1;
  return static_cast<int>(largest_shattered(c).size());
}

std::vector<std::size_t> vc_witness(const HypothesisClass& c) {
  if (c.empty()) return {};
  return largest_shattered(c);
}

int ldim(const HypothesisClass& c) {
  if (c.empty()) return -1;
  LdimSolver solver(c);
  return solver.solve(solver.everything());
}

int thr_dim(const HypothesisClass& c) {
  if (c.empty()) return 0;
  ThrSolver solver(c);
  return solver.best(solver.initial());
}

HalfGraph thr_witness(const HypothesisClass& c) {
  if (c.empty()) return HalfGraph{};
  ThrSolver solver(c);
  return solver.witness();
}

std::optional<SpecialTree> find_mistake_tree(const HypothesisClass& c, std::size_t height) {
  if (c.empty() || height > 30) return std::nullopt;
  LdimSolver solver(c);
  const LabelFunction all = solver.everything();
  if (solver.solve(all) < static_cast<int>(height)) return std::nullopt;
  SpecialTree t = SpecialTree::empty_shape(height, Side::domain, Side::hypothesis);
  solver.build(all, height, 0, t);
  return t;
}

SpecialTree halfgraph_to_tree(const HalfGraph& hg, std::size_t m) {
  if (m > 28 || hg.length() < (std::size_t{1} << (m + 1))) {
    throw std::invalid_argument("half-graph of length " + std::to_string(hg.length()) +
                                " is too short for a tree of height " + std::to_string(m));
  }
  SpecialTree t = SpecialTree::empty_shape(m, hg.left_side, hg.right_side);
  // segment [lo, hi] of the b's; its node is the midpoint a
  std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> rec =
      [&](std::size_t lo, std::size_t hi, std::size_t depth, std::size_t slot) {
        if (depth == m) {
          t.leaves[slot - t.nodes.size()] = hg.right[lo];
          return;
        }
        const std::size_t len = hi - lo + 1;
        const std::size_t mid = lo + (len + 1) / 2 - 1;
        t.nodes[slot] = hg.left[mid];
        rec(lo, mid, depth + 1, 2 * slot + 1);
        rec(mid + 1, hi, depth + 1, 2 * slot + 2);
      };
  rec(0, hg.length() - 1, 0, 0);
  return t;
}

MonochromaticResult monochromatic_subtree(const SpecialTree& tree, const std::vector<bool>& colours) {
  if (colours.size() != tree.nodes.size()) throw std::invalid_argument("colouring must cover every internal node");
  Ramsey ramsey(tree, colours);
  MonochromaticResult out;
  out.colour = ramsey.r[1][0] >= ramsey.r[0][0];
  const int h = ramsey.r[out.colour ? 1 : 0][0];
  out.subtree = SpecialTree::empty_shape(static_cast<std::size_t>(h), tree.node_side, tree.leaf_side);
  out.node_slots.assign(out.subtree.nodes.size(), 0);
  ramsey.build(0, h, out.colour, 0, out);
  return out;
}

SpecialTree subtree_at(const SpecialTree& tree, std::size_t slot) {
  if (slot >= tree.nodes.size()) throw std::invalid_argument("subtree root must be an internal node");
  const std::size_t d = SpecialTree::depth_of(slot);
  const std::size_t off = slot + 1 - (std::size_t{1} << d);
  const std::size_t h = tree.height - d;
  SpecialTree out = SpecialTree::empty_shape(h, tree.node_side, tree.leaf_side);
  for (std::size_t e = 0; e < h; ++e) {
    for (std::size_t o = 0; o < (std::size_t{1} << e); ++o) {
      const std::size_t src = (std::size_t{1} << (d + e)) - 1 + (off << e) + o;
      out.nodes[(std::size_t{1} << e) - 1 + o] = tree.nodes[src];
    }
  }
  for (std::size_t o = 0; o < (std::size_t{1} << h); ++o) out.leaves[o] = tree.leaves[(off << h) + o];
  return out;
}

HalfGraph tree_to_halfgraph(const HypothesisClass& host, const SpecialTree& tree, std::size_t k) {
  return tree_to_halfgraph_impl(host, tree, k);
}

HalfGraph tree_to_halfgraph(const Graph& host, const SpecialTree& tree, std::size_t k) {
  return tree_to_halfgraph_impl(host, tree, k);
}

HalfGraph reversed(const HalfGraph& hg) {
  HalfGraph out;
  out.left_side = hg.right_side;
  out.right_side = hg.left_side;
  out.left.assign(hg.right.rbegin(), hg.right.rend());
  out.right.assign(hg.left.rbegin(), hg.left.rend());
  return out;
}

int graph_ldim(const Graph& g) { return ldim(class_from_graph(g)); }

}  // namespace satlab
