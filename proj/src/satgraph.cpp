#include "satlab/satgraph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "satlab/config.hpp"
#include "satlab/goodness.hpp"
#include "satlab/satclass.hpp"

namespace satlab {

namespace {

void check_graph_eps(const Rational& eps) {
  if (eps.sign() <= 0 || eps > Rational(1, 4)) throw std::invalid_argument("graph eps must lie in (0, 1/4]");
}

// Rows as a duplicate-free class; rep[i] is the lowest vertex with row i.
struct RowClass {
  HypothesisClass cls;
  std::vector<std::size_t> rep;
};

RowClass row_class(std::vector<std::string> domain, const std::vector<LabelFunction>& rows) {
  RowClass out;
  std::vector<LabelFunction> unique;
  std::unordered_map<LabelFunction, std::size_t> seen;
  for (std::size_t v = 0; v < rows.size(); ++v) {
    if (seen.emplace(rows[v], unique.size()).second) {
      unique.push_back(rows[v]);
      out.rep.push_back(v);
    }
  }
  out.cls = HypothesisClass(std::move(domain), std::move(unique));
  return out;
}

WeightedSet to_vertices(const WeightedSet& ws, const std::vector<std::size_t>& rep) {
  std::vector<WeightedSet::Member> ms;
  for (const auto& m : ws.members()) ms.push_back({rep[m.index], m.weight});
  return WeightedSet(std::move(ms));
}

LabelFunction extended_row(const Graph& g, std::size_t v, const std::vector<LabelFunction>& t_good) {
  const std::size_t n = g.size();
  LabelFunction r(n + t_good.size());
  for (auto u : g.row(v).ones()) r.set(u);
  for (std::size_t j = 0; j < t_good.size(); ++j) r.set(n + j, t_good[j][v]);
  return r;
}

Signature split_signature(const LabelFunction& f, std::size_t n) {
  Signature s{LabelFunction(n), LabelFunction(f.size() - n)};
  for (auto i : f.ones()) {
    if (i < n) {
      s.on_vertices.set(i);
    } else {
      s.on_tgood.set(i - n);
    }
  }
  return s;
}

struct StepResult {
  Graph next;
  std::map<std::size_t, Signature> signatures;
  std::map<std::size_t, WeightedSet> witnesses;
};

std::string fresh_id(std::size_t index, const std::set<std::string>& taken) {
  std::string id = "w" + std::to_string(index);
  while (taken.count(id)) id += "'";
  return id;
}

StepResult step_with(const Graph& g, const Rational& eps, const GoodOpinions& tg) {
  const std::size_t n = g.size();
  std::set<Signature> existing;
  for (std::size_t v = 0; v < n; ++v) existing.insert(singleton_signature(g, v, tg.functions));
  std::vector<SignatureEntry> added;
  for (auto& e : excellent_signature_table(g, eps, tg.functions)) {
    if (!existing.count(e.signature)) added.push_back(std::move(e));
  }
  const std::size_t k = added.size();
  std::vector<std::size_t> tau_index(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto j = tg.index_of(added[i].signature.on_vertices);
    if (!j) throw std::logic_error("excellent signature restricts to a non-good opinion");
    tau_index[i] = *j;
  }
  std::vector<LabelFunction> rows;
  for (std::size_t v = 0; v < n; ++v) {
    LabelFunction r(n + k);
    for (auto u : g.row(v).ones()) r.set(u);
    for (std::size_t i = 0; i < k; ++i) r.set(n + i, added[i].signature.on_vertices[v]);
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < k; ++i) {
    LabelFunction r(n + k);
    for (auto u : added[i].signature.on_vertices.ones()) r.set(u);
    for (std::size_t j = 0; j < k; ++j) {
      const bool ij = added[j].signature.on_tgood[tau_index[i]];
      const bool ji = added[i].signature.on_tgood[tau_index[j]];
      if (ij != ji) throw std::logic_error("pair opinions of two new vertices disagree");
      r.set(n + j, ij);
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> ids = g.vertices();
  std::set<std::string> taken(ids.begin(), ids.end());
  for (std::size_t i = 0; i < k; ++i) {
    ids.push_back(fresh_id(n + i, taken));
    taken.insert(ids.back());
  }
  StepResult out;
  out.next = Graph::from_rows(std::move(ids), std::move(rows));
  for (std::size_t i = 0; i < k; ++i) {
    out.signatures.emplace(n + i, added[i].signature);
    out.witnesses.emplace(n + i, added[i].witness);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> GoodOpinions::index_of(const LabelFunction& tau) const {
  auto it = std::find(functions.begin(), functions.end(), tau);
  if (it == functions.end()) return std::nullopt;
  return static_cast<std::size_t>(it - functions.begin());
}

GoodOpinions good_opinion_table(const Graph& g, const Rational& eps, std::size_t cap) {
  if (cap == 0) cap = config::graph_cap();
  RowClass rc = row_class(g.vertices(), g.rows());
  GoodOpinions out;
  for (auto& r : representable_table(rc.cls, eps, cap)) {
    out.functions.push_back(std::move(r.function));
    out.witnesses.push_back(to_vertices(r.witness, rc.rep));
  }
  return out;
}

std::vector<LabelFunction> good_opinion_functions(const Graph& g, const Rational& eps, std::size_t cap) {
  return good_opinion_table(g, eps, cap).functions;
}

Signature singleton_signature(const Graph& g, std::size_t v, const std::vector<LabelFunction>& t_good) {
  Signature s{g.row(v), LabelFunction(t_good.size())};
  for (std::size_t j = 0; j < t_good.size(); ++j) s.on_tgood.set(j, t_good[j][v]);
  return s;
}

std::vector<SignatureEntry> excellent_signature_table(const Graph& g, const Rational& eps,
                                                      const std::vector<LabelFunction>& t_good, std::size_t cap) {
  if (cap == 0) cap = config::graph_cap();
  const std::size_t n = g.size();
  std::vector<std::string> domain = g.vertices();
  for (const auto& id : numbered_ids("t", t_good.size(), 0)) domain.push_back(id);
  std::vector<LabelFunction> rows;
  for (std::size_t v = 0; v < n; ++v) rows.push_back(extended_row(g, v, t_good));
  RowClass rc = row_class(std::move(domain), rows);
  std::vector<SignatureEntry> out;
  for (auto& r : representable_table(rc.cls, eps, cap)) {
    out.push_back({split_signature(r.function, n), to_vertices(r.witness, rc.rep)});
  }
  return out;
}

std::vector<Signature> excellent_signatures(const Graph& g, const Rational& eps) {
  std::vector<Signature> out;
  for (auto& e : excellent_signature_table(g, eps, good_opinion_functions(g, eps))) out.push_back(e.signature);
  return out;
}

Graph graph_saturation_step(const Graph& g, const Rational& eps) {
  check_graph_eps(eps);
  return step_with(g, eps, good_opinion_table(g, eps)).next;
}

GraphSaturationTrace graph_saturate(const Graph& g, const Rational& eps, std::size_t max_levels) {
  check_graph_eps(eps);
  if (max_levels == 0) throw std::invalid_argument("max_levels must be at least 1");
  GraphSaturationTrace trace;
  trace.epsilon = eps;
  trace.levels.push_back(g);
  GoodOpinions tg = good_opinion_table(g, eps);
  trace.t_good.push_back(tg.functions);
  trace.signatures.emplace_back();
  trace.witnesses.emplace_back();
  for (std::size_t step = 0; step < max_levels; ++step) {
    StepResult st = step_with(trace.levels.back(), eps, tg);
    const bool grew = !st.signatures.empty();
    trace.levels.push_back(std::move(st.next));
    trace.signatures.push_back(std::move(st.signatures));
    trace.witnesses.push_back(std::move(st.witnesses));
    if (!grew) {
      trace.t_good.push_back(tg.functions);
      trace.fixpoint = true;
      return trace;
    }
    tg = good_opinion_table(trace.levels.back(), eps);
    trace.t_good.push_back(tg.functions);
  }
  trace.cap_reached = true;
  return trace;
}

bool graph_is_saturated(const Graph& g, const Rational& eps) {
  check_graph_eps(eps);
  const GoodOpinions tg = good_opinion_table(g, eps);
  std::set<Signature> existing;
  for (std::size_t v = 0; v < g.size(); ++v) existing.insert(singleton_signature(g, v, tg.functions));
  for (const auto& e : excellent_signature_table(g, eps, tg.functions)) {
    if (!existing.count(e.signature)) return false;
  }
  return true;
}

Signature extend_partial_type(const Graph& g, const Rational& eps, const std::vector<std::optional<bool>>& partial) {
  const std::vector<LabelFunction> tg = good_opinion_functions(g, eps);
  const std::size_t n = g.size();
  if (partial.size() != n + tg.size()) throw std::invalid_argument("partial type has the wrong length");
  std::vector<LabelFunction> full;
  for (const auto& e : excellent_signature_table(g, eps, tg)) {
    LabelFunction f(n + tg.size());
    for (auto i : e.signature.on_vertices.ones()) f.set(i);
    for (auto j : e.signature.on_tgood.ones()) f.set(n + j);
    full.push_back(std::move(f));
  }
  std::vector<std::optional<bool>> cur = partial;
  auto consistent = [&]() {
    return std::any_of(full.begin(), full.end(), [&](const LabelFunction& f) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] && f[i] != *cur[i]) return false;
      }
      return true;
    });
  };
  if (!consistent()) throw std::invalid_argument("partial type is not realized by any excellent set");
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur[i]) continue;
    cur[i] = true;
    if (!consistent()) cur[i] = false;
  }
  LabelFunction f(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) f.set(i, *cur[i]);
  return split_signature(f, n);
}

SpecialTree graph_devirtualize_tree(const GraphSaturationTrace& trace, const SpecialTree& tree, std::size_t level) {
  if (level == 0 || level >= trace.levels.size()) throw std::invalid_argument("level out of range for the trace");
  if (tree.height >= 31) throw std::invalid_argument("tree too tall");
  const Rational& eps = trace.epsilon;
  if (eps >= inverse_power_of_two(static_cast<unsigned>(tree.height))) {
    throw std::invalid_argument("eps too large: need eps < 1/2^height");
  }
  const Graph& upper = trace.levels[level];
  const Graph& lower = trace.levels[level - 1];
  if (std::string why = check_tree(upper, tree); !why.empty()) throw std::invalid_argument("input tree: " + why);
  const std::size_t n = lower.size();
  const auto& wits = trace.witnesses[level];
  auto witness_of = [&](std::size_t v) -> const WeightedSet& {
    auto it = wits.find(v);
    if (it == wits.end()) throw std::invalid_argument("missing witness for vertex " + std::to_string(v));
    return it->second;
  };
  // opinion functions of virtual nodes over the lower level
  std::vector<std::optional<LabelFunction>> node_tau(tree.nodes.size());
  std::set<std::size_t> actual_nodes;
  for (std::size_t slot = 0; slot < tree.nodes.size(); ++slot) {
    const std::size_t a = tree.nodes[slot];
    if (a < n) {
      actual_nodes.insert(a);
      continue;
    }
    node_tau[slot] = majority_function(lower, witness_of(a), eps);
    if (!node_tau[slot]) throw std::logic_error("witness of a new vertex is not good");
  }
  auto opinion = [&](std::size_t slot, std::size_t b) {
    return node_tau[slot] ? (*node_tau[slot])[b] : lower.adjacent(tree.nodes[slot], b);
  };
  SpecialTree out = tree;
  // step 1: leaves
  for (std::size_t leaf = 0; leaf < tree.leaves.size(); ++leaf) {
    const std::size_t b = tree.leaves[leaf];
    if (b < n) continue;
    std::vector<std::size_t> members = witness_of(b).indices();
    std::sort(members.begin(), members.end());
    const auto path = tree.path(leaf);
    auto it = std::find_if(members.begin(), members.end(), [&](std::size_t bi) {
      if (actual_nodes.count(bi)) return false;
      for (auto [slot, bit] : path) {
        if (opinion(slot, bi) != bit) return false;
      }
      return true;
    });
    if (it == members.end()) throw std::logic_error("no leaf witness member survives the error set");
    out.leaves[leaf] = *it;
  }
  // step 2: nodes, voted on by every chosen leaf
  const std::set<std::size_t> leaf_set(out.leaves.begin(), out.leaves.end());
  for (std::size_t slot = 0; slot < tree.nodes.size(); ++slot) {
    if (!node_tau[slot]) continue;
    std::vector<std::size_t> members = witness_of(tree.nodes[slot]).indices();
    std::sort(members.begin(), members.end());
    auto it = std::find_if(members.begin(), members.end(), [&](std::size_t ai) {
      if (leaf_set.count(ai)) return false;
      for (auto b : out.leaves) {
        if (lower.adjacent(ai, b) != (*node_tau[slot])[b]) return false;
      }
      return true;
    });
    if (it == members.end()) throw std::logic_error("no node witness member survives the error set");
    out.nodes[slot] = *it;
  }
  if (std::string why = check_tree(lower, out); !why.empty()) {
    throw std::logic_error("graph de-virtualization produced an invalid tree: " + why);
  }
  return out;
}

}  // namespace satlab
