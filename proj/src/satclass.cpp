#include "satlab/satclass.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "satlab/config.hpp"
#include "satlab/exactlp.hpp"
#include "satlab/parallel.hpp"

namespace satlab {

namespace {

void check_eps(const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1, 2)) throw std::invalid_argument("eps must lie in (0, 1/2)");
}

// Disagreement rows for f: row x holds the hypotheses with h(x) != f(x).
std::vector<LabelFunction> disagreement_rows(const HypothesisClass& c, const LabelFunction& f,
                                             const std::vector<std::size_t>& points) {
  std::vector<LabelFunction> rows;
  rows.reserve(points.size());
  for (auto x : points) {
    LabelFunction col = c.column(x);
    rows.push_back(f[x] ? ~col : col);
  }
  return rows;
}

std::vector<std::size_t> all_points(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Depth-first search over labellings of the distinct domain columns.
class Enumerator {
 public:
  using Visit = std::function<bool(const LabelFunction&, const WeightedSet&)>;

  Enumerator(const HypothesisClass& c, const Rational& eps, std::size_t cap) : c_(c), eps_(eps) {
    check_eps(eps);
    const std::size_t n = c.domain_size();
    std::map<LabelFunction, std::size_t> seen;
    group_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      LabelFunction col = c.column(x);
      auto [it, fresh] = seen.emplace(col, reps_.size());
      if (fresh) {
        reps_.push_back(x);
        agree_.push_back({~col, col});
      }
      group_[x] = it->second;
    }
    if (cap == 0) cap = config::class_cap();
    if (reps_.size() > cap) {
      throw CapExceeded("class has " + std::to_string(reps_.size()) + " distinct domain columns, cap is " +
                        std::to_string(cap));
    }
    const long k = (Rational(1) / eps).floor();
    subset_limit_ = static_cast<std::size_t>(std::min<long>(k, 4));
  }

  std::size_t columns() const { return reps_.size(); }

  // Runs the search with the first prefix.size() columns forced. Stops
  // early once visit returns false.
  void run(const std::vector<bool>& prefix, const Visit& visit) {
    if (c_.empty()) return;
    bits_.assign(reps_.size(), false);
    prefix_ = prefix;
    visit_ = &visit;
    stop_ = false;
    LabelFunction all(c_.size(), true);
    dfs(0, all, WeightedSet::singleton(0));
  }

  // Expands a labelling of distinct columns to the full domain.
  LabelFunction expand(const std::vector<bool>& bits) const {
    LabelFunction f(c_.domain_size());
    for (std::size_t x = 0; x < group_.size(); ++x) f.set(x, bits[group_[x]]);
    return f;
  }

  const std::vector<std::size_t>& reps() const { return reps_; }

 private:
  // Some hypothesis agrees with the current labels on every set made of
  // column i plus up to subset_limit_-1 earlier columns.
  bool partially_realizable(std::size_t i, const LabelFunction& base, std::size_t from, std::size_t left) const {
    if (base.none()) return false;
    if (left == 0) return true;
    for (std::size_t j = from; j < i; ++j) {
      if (!partially_realizable(i, base & agree_[j][bits_[j]], j + 1, left - 1)) return false;
    }
    return true;
  }

  void dfs(std::size_t i, const LabelFunction& agree, const WeightedSet& witness) {
    if (stop_) return;
    if (i == reps_.size()) {
      if (!(*visit_)(expand(bits_), witness)) stop_ = true;
      return;
    }
    for (int b = 0; b < 2 && !stop_; ++b) {
      if (i < prefix_.size() && prefix_[i] != (b == 1)) continue;
      bits_[i] = b == 1;
      const LabelFunction& here = agree_[i][b];
      const std::size_t left = std::min(subset_limit_ - 1, i);
      if (!partially_realizable(i, here, 0, left)) continue;
      LabelFunction next = agree & here;
      if (!next.none()) {
        dfs(i + 1, next, WeightedSet::singleton(next.ones().front()));
        continue;
      }
      if (witness.mass_on(agree_[i][1 - b]) < eps_) {
        dfs(i + 1, next, witness);
        continue;
      }
      std::vector<LabelFunction> rows;
      for (std::size_t j = 0; j <= i; ++j) rows.push_back(agree_[j][bits_[j] ? 0 : 1]);
      SlackResult r = max_slack(rows, c_.size(), eps_);
      if (r.weights) dfs(i + 1, next, *r.weights);
    }
  }

  const HypothesisClass& c_;
  Rational eps_;
  std::vector<std::size_t> reps_;
  std::vector<std::size_t> group_;
  std::vector<std::array<LabelFunction, 2>> agree_;  // [col][b]: h(col) == b
  std::size_t subset_limit_ = 1;

  std::vector<bool> bits_;
  std::vector<bool> prefix_;
  const Visit* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

std::optional<WeightedSet> representable(const HypothesisClass& c, const LabelFunction& f, const Rational& eps) {
  check_eps(eps);
  if (f.size() != c.domain_size()) throw std::invalid_argument("function length differs from domain size");
  if (auto idx = c.index_of(f)) return WeightedSet::singleton(*idx);
  if (c.empty()) return std::nullopt;
  SlackResult r = max_slack(disagreement_rows(c, f, all_points(c.domain_size())), c.size(), eps);
  return r.weights;
}

std::vector<Representation> representable_table(const HypothesisClass& c, const Rational& eps, std::size_t cap) {
  Enumerator probe(c, eps, cap);
  const std::size_t split = std::min<std::size_t>(probe.columns(), 3);
  const std::size_t tasks = std::size_t{1} << split;
  std::vector<std::vector<LabelFunction>> found(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    Enumerator e(c, eps, cap);
    std::vector<bool> prefix(split);
    for (std::size_t i = 0; i < split; ++i) prefix[i] = (t >> (split - 1 - i)) & 1u;
    Enumerator::Visit visit = [&](const LabelFunction& f, const WeightedSet&) {
      found[t].push_back(f);
      return true;
    };
    e.run(prefix, visit);
  });
  // Leaf witnesses are path dependent; the stored one is the LP optimum.
  std::vector<Representation> out;
  for (auto& part : found) {
    for (auto& f : part) {
      if (auto idx = c.index_of(f)) {
        out.push_back({std::move(f), WeightedSet::singleton(*idx)});
      } else {
        SlackResult r = max_slack(disagreement_rows(c, f, probe.reps()), c.size(), eps);
        if (!r.weights) throw std::logic_error("search accepted a function the LP rejects");
        out.push_back({std::move(f), std::move(*r.weights)});
      }
    }
  }
  return out;
}

std::vector<LabelFunction> representable_functions(const HypothesisClass& c, const Rational& eps, std::size_t cap) {
  std::vector<LabelFunction> out;
  for (auto& r : representable_table(c, eps, cap)) out.push_back(std::move(r.function));
  return out;
}

HypothesisClass saturation_step(const HypothesisClass& c, const Rational& eps) {
  return c.with_appended(representable_functions(c, eps));
}

SaturationTrace saturate(const HypothesisClass& c, const Rational& eps, std::size_t max_levels) {
  if (max_levels == 0) throw std::invalid_argument("max_levels must be at least 1");
  SaturationTrace trace;
  trace.epsilon = eps;
  trace.levels.push_back(c);
  trace.provenance.emplace_back();
  for (std::size_t step = 0; step < max_levels; ++step) {
    const HypothesisClass& cur = trace.levels.back();
    std::vector<LabelFunction> added;
    std::vector<WeightedSet> witnesses;
    for (auto& r : representable_table(cur, eps)) {
      if (cur.contains(r.function)) continue;
      added.push_back(std::move(r.function));
      witnesses.push_back(std::move(r.witness));
    }
    HypothesisClass next = cur.with_appended(added);
    std::map<std::size_t, WeightedSet> prov;
    for (std::size_t i = 0; i < added.size(); ++i) prov.emplace(cur.size() + i, std::move(witnesses[i]));
    trace.levels.push_back(std::move(next));
    trace.provenance.push_back(std::move(prov));
    if (added.empty()) {
      trace.fixpoint = true;
      return trace;
    }
  }
  trace.cap_reached = true;
  return trace;
}

bool is_saturated(const HypothesisClass& c, const Rational& eps) {
  Enumerator e(c, eps, 0);
  bool saturated = true;
  Enumerator::Visit visit = [&](const LabelFunction& f, const WeightedSet&) {
    if (!c.contains(f)) saturated = false;
    return saturated;
  };
  e.run({}, visit);
  return saturated;
}

namespace {

// True when no set of at most `left` further points (from `from` on) has
// disagreements covering every hypothesis.
bool realizable_below(const std::vector<LabelFunction>& dis, const LabelFunction& covered, std::size_t from,
                      std::size_t left) {
  if (covered.all()) return false;
  if (left == 0) return true;
  for (std::size_t x = from; x < dis.size(); ++x) {
    if (!realizable_below(dis, covered | dis[x], x + 1, left - 1)) return false;
  }
  return true;
}

}  // namespace

bool k_realizable(const HypothesisClass& c, const LabelFunction& f, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (f.size() != c.domain_size()) throw std::invalid_argument("function length differs from domain size");
  if (c.contains(f)) return true;
  if (c.empty()) return false;
  // identical disagreement rows add nothing to a subset
  std::vector<LabelFunction> dis = disagreement_rows(c, f, all_points(c.domain_size()));
  std::sort(dis.begin(), dis.end());
  dis.erase(std::unique(dis.begin(), dis.end()), dis.end());
  return realizable_below(dis, LabelFunction(c.size()), 0, k);
}

HypothesisClass maj_p(const HypothesisClass& c, std::size_t p, std::size_t max_sequences) {
  if (p % 2 == 0) throw std::invalid_argument("p must be odd");
  const std::size_t m = c.size();
  if (m == 0) return c;
  // C(m+p-1, p), stopping once over the cap
  double count = 1;
  for (std::size_t i = 1; i <= p; ++i) count = count * static_cast<double>(m + i - 1) / static_cast<double>(i);
  if (count > static_cast<double>(max_sequences)) {
    throw CapExceeded("maj_p would enumerate " + std::to_string(static_cast<long long>(count)) + " multisets");
  }
  const std::size_t n = c.domain_size();
  std::unordered_set<LabelFunction> seen;
  std::vector<int> votes(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      LabelFunction f(n);
      for (std::size_t x = 0; x < n; ++x) f.set(x, 2 * static_cast<std::size_t>(votes[x]) > p);
      seen.insert(std::move(f));
      return;
    }
    for (std::size_t h = from; h < m; ++h) {
      for (auto x : c[h].ones()) ++votes[x];
      rec(h, left - 1);
      for (auto x : c[h].ones()) --votes[x];
    }
  };
  rec(0, p);
  std::vector<LabelFunction> extra;
  for (const auto& f : seen) {
    if (!c.contains(f)) extra.push_back(f);
  }
  std::sort(extra.begin(), extra.end());
  return c.with_appended(extra);
}

Rational game_value(const HypothesisClass& c, const LabelFunction& g) {
  if (c.empty()) throw std::invalid_argument("game value needs a nonempty class");
  if (g.size() != c.domain_size()) throw std::invalid_argument("function length differs from domain size");
  const std::size_t n = c.domain_size();
  if (n == 0 || c.contains(g)) return Rational(0);
  // a hypothesis whose error set contains another's never attains the min
  std::vector<LabelFunction> errors;
  for (const auto& h : c.hypotheses()) errors.push_back(h ^ g);
  std::sort(errors.begin(), errors.end());
  errors.erase(std::unique(errors.begin(), errors.end()), errors.end());
  std::vector<LabelFunction> keep;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < errors.size() && !dominated; ++j) {
      dominated = j != i && errors[j].is_subset_of(errors[i]);
    }
    if (!dominated) keep.push_back(errors[i]);
  }
  // variables p_0..p_{n-1}, v; maximise v
  LinearProgram lp;
  lp.variables = n + 1;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = Rational(1);
  for (const auto& e : keep) {
    Constraint row;
    row.coeffs.assign(n + 1, Rational(0));
    for (auto x : e.ones()) row.coeffs[x] = Rational(-1);
    row.coeffs[n] = Rational(1);
    row.relation = Relation::less_equal;
    row.bound = Rational(0);
    lp.constraints.push_back(std::move(row));
  }
  Constraint total;
  total.coeffs.assign(n + 1, Rational(1));
  total.coeffs[n] = Rational(0);
  total.relation = Relation::equal;
  total.bound = Rational(1);
  lp.constraints.push_back(std::move(total));
  LPOutcome out = solve(lp);
  if (out.status != LPStatus::optimal) throw std::logic_error("game LP did not reach an optimum");
  return out.value;
}

namespace {

struct LevelView {
  const HypothesisClass& upper;
  const HypothesisClass& lower;
  const std::map<std::size_t, WeightedSet>& provenance;
};

LevelView view_of(const SaturationTrace& trace, std::size_t level) {
  if (level == 0 || level >= trace.levels.size()) throw std::invalid_argument("level out of range for the trace");
  return {trace.levels[level], trace.levels[level - 1], trace.provenance[level]};
}

const WeightedSet& witness_of(const LevelView& v, std::size_t idx) {
  auto it = v.provenance.find(idx);
  if (it == v.provenance.end()) throw std::invalid_argument("missing provenance for function " + std::to_string(idx));
  return it->second;
}

// Lowest witness member that agrees with `target` on every point listed.
std::size_t pick_member(const LevelView& v, const WeightedSet& ws, const LabelFunction& target,
                        const std::vector<std::size_t>& points) {
  std::vector<std::size_t> members = ws.indices();
  std::sort(members.begin(), members.end());
  for (auto h : members) {
    bool clean = true;
    for (auto x : points) {
      if (v.lower[h][x] != target[x]) {
        clean = false;
        break;
      }
    }
    if (clean) return h;
  }
  throw std::logic_error("every witness member lies in the error set");
}

void require_bound(const Rational& eps, std::size_t count, const char* what) {
  if (eps * Rational(static_cast<long>(count)) > Rational(1)) {
    throw std::invalid_argument(std::string("eps too large: need eps * ") + what + " <= 1");
  }
}

void require_valid(const HypothesisClass& c, const SpecialTree& t, const char* stage) {
  std::string why = check_tree(c, t);
  if (!why.empty()) throw std::logic_error(std::string(stage) + ": " + why);
}

}  // namespace

SpecialTree devirtualize_leaves(const SaturationTrace& trace, const SpecialTree& tree, std::size_t level) {
  LevelView v = view_of(trace, level);
  if (tree.node_side != Side::domain || tree.leaf_side != Side::hypothesis) {
    throw std::invalid_argument("leaf de-virtualization needs domain nodes and hypothesis leaves");
  }
  require_bound(trace.epsilon, tree.height, "height");
  if (std::string why = check_tree(v.upper, tree); !why.empty()) throw std::invalid_argument("input tree: " + why);
  SpecialTree out = tree;
  for (std::size_t leaf = 0; leaf < tree.leaves.size(); ++leaf) {
    const std::size_t idx = tree.leaves[leaf];
    if (idx < v.lower.size()) continue;
    std::vector<std::size_t> points;
    for (auto [slot, bit] : tree.path(leaf)) points.push_back(tree.nodes[slot]);
    out.leaves[leaf] = pick_member(v, witness_of(v, idx), v.upper[idx], points);
  }
  require_valid(v.lower, out, "leaf de-virtualization");
  return out;
}

SpecialTree devirtualize_nodes(const SaturationTrace& trace, const SpecialTree& tree, std::size_t level) {
  LevelView v = view_of(trace, level);
  if (tree.node_side != Side::hypothesis || tree.leaf_side != Side::domain) {
    throw std::invalid_argument("node de-virtualization needs hypothesis nodes and domain leaves");
  }
  if (tree.height >= 31) throw std::invalid_argument("tree too tall");
  require_bound(trace.epsilon, std::size_t{1} << tree.height, "2^height");
  if (std::string why = check_tree(v.upper, tree); !why.empty()) throw std::invalid_argument("input tree: " + why);
  // Every leaf votes against every node, so equal nodes get equal choices.
  SpecialTree out = tree;
  for (std::size_t slot = 0; slot < tree.nodes.size(); ++slot) {
    const std::size_t idx = tree.nodes[slot];
    if (idx < v.lower.size()) continue;
    out.nodes[slot] = pick_member(v, witness_of(v, idx), v.upper[idx], tree.leaves);
  }
  require_valid(v.lower, out, "node de-virtualization");
  return out;
}

HalfGraph devirtualize_halfgraph(const SaturationTrace& trace, const HalfGraph& hg, std::size_t level) {
  LevelView v = view_of(trace, level);
  const bool left_hyp = hg.left_side == Side::hypothesis && hg.right_side == Side::domain;
  const bool right_hyp = hg.right_side == Side::hypothesis && hg.left_side == Side::domain;
  if (!left_hyp && !right_hyp) throw std::invalid_argument("half-graph needs one domain side and one hypothesis side");
  require_bound(trace.epsilon, hg.length(), "length");
  if (std::string why = check_halfgraph(v.upper, hg); !why.empty()) {
    throw std::invalid_argument("input half-graph: " + why);
  }
  HalfGraph out = hg;
  std::vector<std::size_t>& hyps = left_hyp ? out.left : out.right;
  const std::vector<std::size_t>& points = left_hyp ? hg.right : hg.left;
  for (auto& idx : hyps) {
    if (idx < v.lower.size()) continue;
    idx = pick_member(v, witness_of(v, idx), v.upper[idx], points);
  }
  if (std::string why = check_halfgraph(v.lower, out); !why.empty()) {
    throw std::logic_error("half-graph de-virtualization: " + why);
  }
  return out;
}

}  // namespace satlab
