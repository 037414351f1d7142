#include "satlab/suites.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "satlab/dims.hpp"
#include "satlab/generators.hpp"
#include "satlab/goodness.hpp"
#include "satlab/parallel.hpp"
#include "satlab/satclass.hpp"
#include "satlab/satgraph.hpp"

namespace satlab {

namespace {

using Rng = std::mt19937_64;
using Row = std::vector<std::string>;

// Enough steps to reach the fixpoint on any domain of at most 6 points.
constexpr std::size_t full_levels = 65;

struct TrialOutput {
  std::vector<Row> rows;
  std::size_t checks = 0;
  std::size_t violations = 0;

  bool check(bool ok) {
    ++checks;
    if (!ok) ++violations;
    return ok;
  }
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(salt)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

template <class Fn>
SuiteReport run_trials(const std::string& name, std::vector<std::string> columns, std::size_t trials, Fn fn) {
  std::vector<TrialOutput> outs(trials);
  parallel_for(trials, [&](std::size_t t) { outs[t] = fn(t); });
  SuiteReport r;
  r.name = name;
  r.columns = std::move(columns);
  r.trials = trials;
  for (auto& o : outs) {
    for (auto& row : o.rows) r.rows.push_back(std::move(row));
    r.checks += o.checks;
    r.violations += o.violations;
  }
  return r;
}

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(bool v) { return v ? "1" : "0"; }

Rational pow(const Rational& x, std::size_t m) {
  Rational r(1);
  for (std::size_t i = 0; i < m; ++i) r *= x;
  return r;
}

const HypothesisClass& last(const SaturationTrace& t) { return t.levels.back(); }

LabelFunction random_function(std::size_t n, Rng& rng) {
  LabelFunction f(n);
  const std::uint64_t w = rng();
  for (std::size_t x = 0; x < n; ++x) f.set(x, (w >> x) & 1u);
  return f;
}

}  // namespace

HypothesisClass suite_class(std::uint64_t seed, std::size_t trial) {
  Rng rng(trial_seed(seed, trial, 1));
  const std::size_t nx = 2 + rng() % 5;
  const std::size_t nh = 1 + rng() % 12;
  return gen_random_class(nx, nh, rng());
}

Rational eps_at_most(const Rational& bound) { return bound < Rational(1, 2) ? bound : Rational(2, 5); }

SuiteReport preservation_suite(std::uint64_t seed, std::size_t trials) {
  return run_trials(
      "preservation",
      {"trial", "nx", "nh", "ldim0", "eps_ldim", "ldim_inf", "vc0", "eps_vc", "vc_inf", "eps_small", "thr0", "thr_inf",
       "dual_vc0", "dual_vc_inf", "dual_ldim0", "dual_ldim_inf", "violations"},
      trials, [&](std::size_t t) {
        TrialOutput out;
        const HypothesisClass c = suite_class(seed, t);
        const int l = ldim(c);
        const int d = vc_dim(c);
        const Rational eps_l = eps_at_most(Rational(1, l + 1));
        const Rational eps_v = eps_at_most(Rational(1, d + 1));
        const Rational eps_s(1, (1L << (l + 2)) + 1);
        const HypothesisClass fl = last(saturate(c, eps_l, full_levels));
        const HypothesisClass fv = last(saturate(c, eps_v, full_levels));
        const HypothesisClass fs = last(saturate(c, eps_s, full_levels));
        const int l_inf = ldim(fl);
        const int v_inf = vc_dim(fv);
        const int thr0 = thr_dim(c), thr_inf = thr_dim(fs);
        const HypothesisClass d0 = dual(c), ds = dual(fs);
        const int dv0 = vc_dim(d0), dv_inf = vc_dim(ds);
        const int dl0 = ldim(d0), dl_inf = ldim(ds);
        const std::size_t before = out.violations;
        out.check(l_inf == l);
        out.check(v_inf == d);
        out.check(thr_inf == thr0);
        out.check(dv_inf == dv0);
        out.check(dl_inf == dl0);
        out.rows.push_back({str(t), str(c.domain_size()), str(c.size()), str(l), eps_l.str(), str(l_inf), str(d),
                            eps_v.str(), str(v_inf), eps_s.str(), str(thr0), str(thr_inf), str(dv0), str(dv_inf),
                            str(dl0), str(dl_inf), str(out.violations - before)});
        return out;
      });
}

SuiteReport backtrack_suite(std::uint64_t seed, std::size_t trials) {
  static const Rational eps_list[] = {Rational(1, 5), Rational(1, 4), Rational(2, 7), Rational(1, 3), Rational(2, 5)};
  return run_trials(
      "backtrack",
      {"trial", "nx", "nh", "eps", "levels", "fixpoint_size", "k", "unrealizable", "saturated", "minimal",
       "violations"},
      trials, [&](std::size_t t) {
        TrialOutput out;
        Rng rng(trial_seed(seed, t, 2));
        const HypothesisClass c = suite_class(seed, t);
        const Rational eps = eps_list[t % 5];
        const SaturationTrace trace = saturate(c, eps, full_levels);
        const HypothesisClass& fix = last(trace);
        // k-realizability is monotone in k, so the largest k decides
        const long k = (Rational(1) / eps).floor() - 1;
        std::size_t bad = 0;
        if (k >= 1) {
          for (const auto& f : fix.hypotheses()) {
            if (!out.check(k_realizable(c, f, static_cast<std::size_t>(k)))) ++bad;
          }
        }
        const bool saturated = out.check(trace.fixpoint && is_saturated(fix, eps));
        // a saturated superclass of H contains the fixpoint of H
        const HypothesisClass bigger = c.with_appended({random_function(c.domain_size(), rng)});
        const bool minimal = out.check(fix.subset_of(last(saturate(bigger, eps, full_levels))));
        out.rows.push_back({str(t), str(c.domain_size()), str(c.size()), eps.str(), str(trace.levels.size()),
                            str(fix.size()), std::to_string(k), str(bad), str(saturated), str(minimal),
                            str(out.violations)});
        return out;
      });
}

SuiteReport duality_suite(std::uint64_t seed, std::size_t trials) {
  static const Rational eps_list[] = {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(3, 7),
                                      Rational(2, 7)};
  return run_trials("duality", {"trial", "nx", "nh", "eps", "f", "representable", "game_value", "agree"}, trials,
                    [&](std::size_t t) {
                      TrialOutput out;
                      Rng rng(trial_seed(seed, t, 3));
                      const HypothesisClass c = suite_class(seed, t);
                      const Rational eps = eps_list[t % 6];
                      LabelFunction f = random_function(c.domain_size(), rng);
                      if (t % 2 == 1) {
                        // draw from the representable side as well
                        const auto reps = representable_functions(c, eps);
                        f = reps[rng() % reps.size()];
                      }
                      const bool rep = representable(c, f, eps).has_value();
                      const Rational v = game_value(c, f);
                      const bool agree = out.check(rep == (v < eps));
                      out.rows.push_back({str(t), str(c.domain_size()), str(c.size()), eps.str(), f.str(), str(rep),
                                          v.str(), str(agree)});
                      return out;
                    });
}

SuiteReport symmetry_suite(std::uint64_t seed, std::size_t trials) {
  static const Rational eps_list[] = {Rational(1, 5), Rational(1, 6), Rational(2, 9), Rational(1, 8)};
  return run_trials(
      "symmetry", {"trial", "n", "eps", "excellent_sets", "pairs", "undefined", "asymmetric", "not_excellent"},
      trials, [&](std::size_t t) {
        TrialOutput out;
        Rng rng(trial_seed(seed, t, 4));
        const std::size_t n = 5 + rng() % 3;
        const Graph g = gen_random_graph(n, rng());
        const Rational eps = eps_list[t % 4];
        const GoodOpinions tg = good_opinion_table(g, eps);
        const auto table = excellent_signature_table(g, eps, tg.functions);
        std::size_t undefined = 0, asymmetric = 0, not_excellent = 0, pairs = 0;
        for (const auto& e : table) {
          if (!out.check(is_excellent(g, e.witness, eps, tg.functions))) ++not_excellent;
        }
        for (std::size_t i = 0; i < table.size(); ++i) {
          for (std::size_t j = i; j < table.size(); ++j) {
            ++pairs;
            const auto ab = pair_opinion(g, table[i].witness, table[j].witness, eps);
            const auto ba = pair_opinion(g, table[j].witness, table[i].witness, eps);
            if (!out.check(ab && ba)) {
              ++undefined;
            } else if (!out.check(*ab == *ba)) {
              ++asymmetric;
            }
          }
        }
        out.rows.push_back({str(t), str(n), eps.str(), str(table.size()), str(pairs), str(undefined),
                            str(asymmetric), str(not_excellent)});
        return out;
      });
}

SuiteReport regimes_suite(std::uint64_t seed, std::size_t trials) {
  constexpr std::size_t levels = 6;
  return run_trials(
      "regimes",
      {"trial", "regime", "eps", "ldim0", "vc0", "levels", "fixpoint", "ldim_last", "vc_last", "claim", "holds"},
      trials, [&](std::size_t t) {
        TrialOutput out;
        const HypothesisClass c = suite_class(seed, t);
        const int l = ldim(c);
        const int d = vc_dim(c);
        struct Regime {
          const char* name;
          Rational eps;
          const char* claim;
        };
        std::vector<Regime> regimes{{"a", eps_at_most(Rational(1, l + 1)), "ldim_kept"},
                                    {"b", eps_at_most(Rational(1, d + 1)), "vc_kept"},
                                    {"c", Rational(1, 13 * std::max(d, 1)), "ldim_finite"}};
        if (d >= 2) regimes.push_back({"d", (Rational(1, d + 1) + Rational(1, 2)) / Rational(2), "none"});
        for (const auto& r : regimes) {
          const SaturationTrace trace = saturate(c, r.eps, levels);
          const int ll = ldim(last(trace));
          const int vl = vc_dim(last(trace));
          std::string holds = "n/a";
          if (std::string(r.name) == "a") holds = str(out.check(ll == l));
          if (std::string(r.name) == "b") holds = str(out.check(vl == d));
          if (std::string(r.name) == "c") holds = "1";
          out.rows.push_back({str(t), r.name, r.eps.str(), str(l), str(d), str(trace.levels.size() - 1),
                              str(trace.fixpoint), str(ll), str(vl), r.claim, holds});
        }
        return out;
      });
}

SuiteReport extraction_suite(std::uint64_t seed, std::size_t trials) {
  static const Rational good_eps[] = {Rational(1, 3), Rational(1, 4), Rational(2, 5)};
  return run_trials(
      "extraction", {"trial", "kind", "n", "m", "eps", "result", "size", "bound", "passes", "violations"}, trials,
      [&](std::size_t t) {
        TrialOutput out;
        Rng rng(trial_seed(seed, t, 5));
        auto record = [&](const char* kind, const Graph& g, std::size_t m, const Rational& eps,
                          const ExtractionResult& r, bool want_tree, bool excellent) {
          const std::size_t before = out.violations;
          std::string result = r.set ? "set" : "tree";
          std::string size = "-", bound = "-";
          bool passes = false;
          if (r.set) {
            const WeightedSet ws = WeightedSet::uniform(*r.set);
            const Rational need = pow(eps, m) * Rational(static_cast<long>(g.size()));
            size = str(r.set->size());
            bound = need.str();
            passes = Rational(static_cast<long>(r.set->size())) >= need &&
                     (excellent ? is_excellent(g, ws, eps, good_opinion_functions(g, eps)) : is_good(g, ws, eps));
          } else {
            passes = r.tree && check_tree(g, *r.tree).empty() && r.tree->height == m;
          }
          out.check(passes && want_tree == !r.set.has_value());
          out.rows.push_back({str(t), kind, str(g.size()), str(m), eps.str(), result, size, bound, str(passes),
                              str(out.violations - before)});
        };
        std::vector<std::size_t> all;
        // stable side: no special tree of height ldim + 1 can exist
        const std::size_t n = 8 + rng() % 5;
        const Graph g = gen_random_stable_graph(n, 4, rng(), Rational(1, 4));
        for (std::size_t v = 0; v < n; ++v) all.push_back(v);
        const std::size_t m = static_cast<std::size_t>(std::max(0, graph_ldim(g))) + 1;
        const Rational eg = good_eps[t % 3];
        record("stable_good", g, m, eg, extract_good(g, all, eg, m), false, false);
        const Rational ee(1, (1L << m) + 1);
        record("stable_excellent", g, m, ee, extract_excellent(g, all, ee, m), false, true);
        // planted side: the partition survives to depth mp
        const std::size_t mp = 1 + t % 3;
        const PlantedTree p = gen_planted_tree(mp, 1 + rng() % 2);
        record("planted_good", p.graph, mp, Rational(1, 3), extract_good(p.graph, p.leaf_vertices, Rational(1, 3), mp),
               true, false);
        const Rational pe(1, (1L << mp) + 1);
        record("planted_excellent", p.graph, mp, pe, extract_excellent(p.graph, p.leaf_vertices, pe, mp), true, true);
        return out;
      });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"preservation", "backtrack", "duality",
                                              "symmetry",     "regimes",   "extraction"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials) {
  if (name == "preservation") return preservation_suite(seed, trials);
  if (name == "backtrack") return backtrack_suite(seed, trials);
  if (name == "duality") return duality_suite(seed, trials);
  if (name == "symmetry") return symmetry_suite(seed, trials);
  if (name == "regimes") return regimes_suite(seed, trials);
  if (name == "extraction") return extraction_suite(seed, trials);
  throw std::invalid_argument("unknown suite: " + name);
}

std::string to_csv(const SuiteReport& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

Json to_json(const SuiteReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) o[r.columns[i]] = row[i];
    rows.push_back(o);
  }
  return Json{{"suite", r.name},
              {"trials", r.trials},
              {"checks", r.checks},
              {"violations", r.violations},
              {"columns", r.columns},
              {"rows", rows}};
}

}  // namespace satlab
