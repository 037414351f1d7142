// satlab: dimensions, saturation runs, verification suites and example
// instances from the command line.
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "satlab/config.hpp"
#include "satlab/dims.hpp"
#include "satlab/generators.hpp"
#include "satlab/io.hpp"
#include "satlab/satclass.hpp"
#include "satlab/satgraph.hpp"
#include "satlab/suites.hpp"

using namespace satlab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violations = 1;
constexpr int exit_usage = 2;

struct Options {
  std::string input;
  std::string eps = "1/4";
  std::size_t max_levels = 16;
  std::uint64_t seed = 42;
  std::size_t trials = 200;
  std::string out;
  std::string format = "csv";
  std::string suite;
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  bool witness = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

struct DimRow {
  int vc, ldim, thr, dual_vc, dual_ldim;
};

DimRow dims_of(const HypothesisClass& c) {
  const HypothesisClass d = dual(c);
  return {vc_dim(c), ldim(c), thr_dim(c), vc_dim(d), ldim(d)};
}

int cmd_dims(const Options& o) {
  const Instance inst = load_instance(o.input);
  const HypothesisClass c = std::holds_alternative<HypothesisClass>(inst)
                                ? std::get<HypothesisClass>(inst)
                                : class_from_graph(std::get<Graph>(inst));
  const DimRow r = dims_of(c);
  Json j{{"kind", std::holds_alternative<Graph>(inst) ? "graph" : "class"},
         {"vc", r.vc},
         {"ldim", r.ldim},
         {"thr", r.thr},
         {"dual_vc", r.dual_vc},
         {"dual_ldim", r.dual_ldim}};
  if (o.witness) {
    j["vc_witness"] = vc_witness(c);
    j["thr_witness"] = to_json(thr_witness(c));
    if (r.ldim >= 0) {
      if (auto t = find_mistake_tree(c, static_cast<std::size_t>(r.ldim))) j["ldim_witness"] = to_json(*t);
    }
  }
  if (o.format == "json") {
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "vc,ldim,thr,dual_vc,dual_ldim\n"
       << r.vc << "," << r.ldim << "," << r.thr << "," << r.dual_vc << "," << r.dual_ldim << "\n";
    emit(o, os.str());
  }
  return exit_ok;
}

int cmd_saturate(const Options& o) {
  const Instance inst = load_instance(o.input);
  const Rational eps = Rational::parse(o.eps);
  Json trace_json;
  Json summary = Json::array();
  std::ostringstream table;
  table << "level,size,vc,ldim,thr\n";
  auto add_row = [&](std::size_t level, std::size_t size, const HypothesisClass& c) {
    const int vc = vc_dim(c), ld = ldim(c), th = thr_dim(c);
    table << level << "," << size << "," << vc << "," << ld << "," << th << "\n";
    summary.push_back(Json{{"level", level}, {"size", size}, {"vc", vc}, {"ldim", ld}, {"thr", th}});
  };
  bool fixpoint = false;
  if (const auto* c = std::get_if<HypothesisClass>(&inst)) {
    const SaturationTrace t = saturate(*c, eps, o.max_levels);
    for (std::size_t n = 0; n < t.levels.size(); ++n) add_row(n, t.levels[n].size(), t.levels[n]);
    trace_json = to_json(t);
    fixpoint = t.fixpoint;
  } else {
    const GraphSaturationTrace t = graph_saturate(std::get<Graph>(inst), eps, o.max_levels);
    for (std::size_t n = 0; n < t.levels.size(); ++n) add_row(n, t.levels[n].size(), class_from_graph(t.levels[n]));
    trace_json = to_json(t);
    fixpoint = t.fixpoint;
  }
  if (!o.out.empty()) write_text_file(o.out, trace_json.dump(2) + "\n");
  if (o.format == "json") {
    std::cout << Json{{"epsilon", eps.str()}, {"fixpoint", fixpoint}, {"levels", summary}}.dump(2) << "\n";
  } else {
    std::cout << table.str();
    if (!fixpoint) std::cerr << "level cap reached before the fixpoint\n";
  }
  return exit_ok;
}

int cmd_verify(const Options& o) {
  const SuiteReport r = run_suite(o.suite, o.seed, o.trials);
  emit(o, o.format == "json" ? to_json(r).dump(2) + "\n" : to_csv(r));
  std::cerr << r.name << ": " << r.trials << " trials, " << r.checks << " checks, " << r.violations
            << " violations\n";
  return r.violations == 0 ? exit_ok : exit_violations;
}

int cmd_example(const Options& o) {
  Json j;
  if (o.name == "example15") {
    j = to_json(gen_subsets(4, 2));
    j["epsilon"] = "2/5";
  } else if (o.name == "kchain") {
    const ChainParameters p = pick_chain_parameters(o.k ? o.k : 2);
    j = to_json(gen_subsets(p.n, o.k ? o.k : 2));
    j["epsilon"] = p.eps.str();
  } else if (o.name == "vcblowup") {
    j = to_json(gen_subsets(o.n ? o.n : 10, o.k ? o.k : 2));
    j["epsilon"] = "2/5";
  } else if (o.name == "clique") {
    j = to_json(gen_clique(o.n ? o.n : 5));
    j["epsilon"] = "1/4";
  } else if (o.name == "matching") {
    j = to_json(gen_matching(o.n ? o.n : 5));
    j["epsilon"] = "1/4";
  } else if (o.name == "halfgraph") {
    j = to_json(gen_halfgraph(o.k ? o.k : 8, o.seed, o.seed ? SideNoise::random : SideNoise::none));
    j["epsilon"] = "1/6";
  } else if (o.name == "good-not-excellent") {
    const GoodNotExcellent w = search_good_not_excellent(Rational(21, 60), 6, o.seed);
    j = to_json(w.graph);
    j["epsilon"] = "7/20";
    j["A"] = to_json(w.a);
    j["B"] = to_json(w.b);
  } else if (o.name == "random") {
    j = to_json(gen_random_class(o.n ? o.n : 5, o.k ? o.k : 8, o.seed));
  } else {
    throw CLI::ValidationError("--name", "unknown example " + o.name);
  }
  emit(o, j.dump(2) + "\n");
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact epsilon-saturation laboratory for hypothesis classes and graphs"};
  app.require_subcommand(1);
  Options o;

  auto* dims = app.add_subcommand("dims", "VC, Littlestone, threshold and dual dimensions");
  dims->add_option("--input", o.input, "class or graph JSON file")->required();
  dims->add_flag("--witness", o.witness, "include witnesses (json format)");
  dims->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  dims->add_option("--out", o.out);

  auto* sat = app.add_subcommand("saturate", "iterate epsilon-saturation to a fixpoint");
  sat->add_option("--input", o.input, "class or graph JSON file")->required();
  sat->add_option("--eps", o.eps, "epsilon as p/q")->required();
  sat->add_option("--max-levels", o.max_levels)->check(CLI::PositiveNumber);
  sat->add_option("--out", o.out, "trace JSON path");
  sat->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--seed", o.seed);
  ver->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  ver->add_option("--out", o.out, "report path");
  ver->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* ex = app.add_subcommand("example", "emit an example instance");
  ex->add_option("--name", o.name)
      ->required()
      ->check(CLI::IsMember(
          {"example15", "kchain", "vcblowup", "clique", "matching", "halfgraph", "good-not-excellent", "random"}));
  ex->add_option("-n", o.n, "size parameter");
  ex->add_option("-k", o.k, "second size parameter");
  ex->add_option("--seed", o.seed);
  ex->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*dims) return cmd_dims(o);
    if (*sat) return cmd_saturate(o);
    if (*ver) return cmd_verify(o);
    if (*ex) return cmd_example(o);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_usage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (raise SATLAB_CAP)\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
