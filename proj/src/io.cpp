#include "satlab/io.hpp"

#include <fstream>
#include <sstream>

namespace satlab {

namespace {

std::vector<std::string> read_ids(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array \"") + key + "\"");
  std::vector<std::string> ids;
  for (const auto& e : j.at(key)) {
    if (e.is_string()) {
      ids.push_back(e.get<std::string>());
    } else if (e.is_number_integer()) {
      ids.push_back(std::to_string(e.get<long long>()));
    } else {
      throw ParseError(std::string("identifiers in \"") + key + "\" must be strings or integers");
    }
  }
  return ids;
}

std::size_t read_index(const Json& e, std::size_t n, const char* what) {
  if (!e.is_number_integer()) throw ParseError(std::string(what) + " must be an integer index");
  const long long v = e.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw ParseError(std::string(what) + " index out of range");
  return static_cast<std::size_t>(v);
}

Json bits_json(const LabelFunction& f) {
  Json a = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i) a.push_back(f[i] ? 1 : 0);
  return a;
}

}  // namespace

HypothesisClass class_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("class file must be a JSON object");
  std::vector<std::string> domain = read_ids(j, "domain");
  if (!j.contains("hypotheses") || !j.at("hypotheses").is_array()) throw ParseError("missing array \"hypotheses\"");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j.at("hypotheses")) {
    if (!row.is_array()) throw ParseError("each hypothesis must be an array of 0/1");
    std::vector<int> r;
    for (const auto& b : row) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
        throw ParseError("hypothesis entries must be 0 or 1");
      }
      r.push_back(b.get<int>());
    }
    if (r.size() != domain.size()) throw ParseError("hypothesis row length differs from domain size");
    rows.push_back(std::move(r));
  }
  return make_class(std::move(domain), rows);
}

Graph graph_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("graph file must be a JSON object");
  std::vector<std::string> vertices = read_ids(j, "vertices");
  const std::size_t n = vertices.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [i,j]");
      const std::size_t u = read_index(e[0], n, "edge endpoint");
      const std::size_t v = read_index(e[1], n, "edge endpoint");
      edges.emplace_back(u, v);
    }
  }
  std::vector<std::size_t> loops;
  if (j.contains("loops")) {
    if (!j.at("loops").is_array()) throw ParseError("\"loops\" must be an array");
    for (const auto& e : j.at("loops")) loops.push_back(read_index(e, n, "loop"));
  }
  for (auto [u, v] : edges) {
    if (u == v) loops.push_back(u);
  }
  return Graph(std::move(vertices), edges, loops);
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (j.contains("hypotheses")) return class_from_json(j);
  if (j.contains("vertices")) return graph_from_json(j);
  throw ParseError("instance has neither \"hypotheses\" nor \"vertices\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError(path + " is empty");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json to_json(const HypothesisClass& c) {
  Json rows = Json::array();
  for (const auto& h : c.hypotheses()) rows.push_back(bits_json(h));
  return Json{{"domain", c.domain()}, {"hypotheses", rows}};
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return Json{{"vertices", g.vertices()}, {"edges", edges}, {"loops", g.loops()}};
}

Json to_json(const WeightedSet& ws) {
  Json a = Json::array();
  for (const auto& m : ws.members()) a.push_back(Json{{"index", m.index}, {"weight", m.weight.str()}});
  return a;
}

WeightedSet weighted_set_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("weighted set must be an array");
  std::vector<WeightedSet::Member> ms;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("index") || !e.contains("weight")) throw ParseError("bad weighted set member");
    try {
      ms.push_back({e.at("index").get<std::size_t>(), Rational::parse(e.at("weight").get<std::string>())});
    } catch (const std::exception& ex) {
      throw ParseError(std::string("bad weighted set member: ") + ex.what());
    }
  }
  try {
    return WeightedSet(std::move(ms));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

Json to_json(const SpecialTree& t) {
  return Json{{"height", t.height},
              {"node_side", side_name(t.node_side)},
              {"leaf_side", side_name(t.leaf_side)},
              {"nodes", t.nodes},
              {"leaves", t.leaves}};
}

Json to_json(const HalfGraph& hg) {
  return Json{{"left_side", side_name(hg.left_side)},
              {"right_side", side_name(hg.right_side)},
              {"left", hg.left},
              {"right", hg.right}};
}

Json to_json(const SaturationTrace& trace) {
  Json levels = Json::array();
  for (std::size_t n = 0; n < trace.levels.size(); ++n) {
    const auto& c = trace.levels[n];
    Json added = Json::array();
    if (n < trace.provenance.size()) {
      for (const auto& [idx, ws] : trace.provenance[n]) {
        added.push_back(Json{{"index", idx}, {"function", bits_json(c[idx])}, {"witness", to_json(ws)}});
      }
    }
    levels.push_back(Json{{"level", n}, {"size", c.size()}, {"added", added}});
  }
  Json final_class = trace.levels.empty() ? Json() : to_json(trace.levels.back());
  return Json{{"epsilon", trace.epsilon.str()},
              {"fixpoint", trace.fixpoint},
              {"cap_reached", trace.cap_reached},
              {"levels", levels},
              {"final", final_class}};
}

Json to_json(const GraphSaturationTrace& trace) {
  Json levels = Json::array();
  for (std::size_t n = 0; n < trace.levels.size(); ++n) {
    Json tg = Json::array();
    if (n < trace.t_good.size()) {
      for (const auto& t : trace.t_good[n]) tg.push_back(t.str());
    }
    Json added = Json::array();
    if (n < trace.signatures.size()) {
      for (const auto& [v, sig] : trace.signatures[n]) {
        Json entry{{"vertex", v}, {"on_vertices", sig.on_vertices.str()}, {"on_tgood", sig.on_tgood.str()}};
        if (n < trace.witnesses.size()) {
          auto it = trace.witnesses[n].find(v);
          if (it != trace.witnesses[n].end()) entry["witness"] = to_json(it->second);
        }
        added.push_back(entry);
      }
    }
    levels.push_back(Json{{"level", n}, {"graph", to_json(trace.levels[n])}, {"t_good", tg}, {"added", added}});
  }
  return Json{{"epsilon", trace.epsilon.str()},
              {"fixpoint", trace.fixpoint},
              {"cap_reached", trace.cap_reached},
              {"levels", levels}};
}

}  // namespace satlab
