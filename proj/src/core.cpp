#include "satlab/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace satlab {

// ---- HypothesisClass

HypothesisClass::HypothesisClass(std::vector<std::string> domain, std::vector<LabelFunction> hypotheses)
    : domain_(std::move(domain)), hypotheses_(std::move(hypotheses)) {
  const std::size_t w = words();
  packed_.reserve(hypotheses_.size() * w);
  for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
    const auto& h = hypotheses_[i];
    if (h.size() != domain_.size()) {
      throw std::invalid_argument("hypothesis " + std::to_string(i) + " has length " + std::to_string(h.size()) +
                                  ", domain has " + std::to_string(domain_.size()));
    }
    if (!index_.emplace(h, i).second) throw std::invalid_argument("duplicate hypothesis " + h.str());
    packed_.insert(packed_.end(), h.words(), h.words() + w);
  }
}

std::optional<std::size_t> HypothesisClass::index_of(const LabelFunction& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelFunction HypothesisClass::column(std::size_t x) const {
  LabelFunction col(hypotheses_.size());
  for (std::size_t h = 0; h < hypotheses_.size(); ++h) {
    if (hypotheses_[h][x]) col.set(h);
  }
  return col;
}

HypothesisClass HypothesisClass::with_appended(const std::vector<LabelFunction>& extra) const {
  std::vector<LabelFunction> rows = hypotheses_;
  std::unordered_map<LabelFunction, std::size_t> seen = index_;
  for (const auto& f : extra) {
    if (seen.emplace(f, rows.size()).second) rows.push_back(f);
  }
  return HypothesisClass(domain_, std::move(rows));
}

bool HypothesisClass::same_functions(const HypothesisClass& other) const {
  return size() == other.size() && subset_of(other);
}

bool HypothesisClass::subset_of(const HypothesisClass& other) const {
  if (domain_size() != other.domain_size()) return false;
  for (const auto& h : hypotheses_) {
    if (!other.contains(h)) return false;
  }
  return true;
}

HypothesisClass class_from_rows(std::vector<std::string> domain, std::vector<LabelFunction> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != domain.size()) {
      throw std::invalid_argument("row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
                                  ", domain has " + std::to_string(domain.size()));
    }
  }
  // first occurrence wins
  std::vector<LabelFunction> kept;
  std::unordered_set<LabelFunction> seen;
  for (auto& r : rows) {
    if (seen.insert(r).second) kept.push_back(std::move(r));
  }
  return HypothesisClass(std::move(domain), std::move(kept));
}

HypothesisClass make_class(std::vector<std::string> domain, const std::vector<std::vector<int>>& rows) {
  std::vector<LabelFunction> fs;
  fs.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != domain.size()) {
      throw std::invalid_argument("row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
                                  ", domain has " + std::to_string(domain.size()));
    }
    fs.push_back(LabelFunction::from_vector(rows[i]));
  }
  std::sort(fs.begin(), fs.end());
  return class_from_rows(std::move(domain), std::move(fs));
}

HypothesisClass dual(const HypothesisClass& c) {
  std::vector<LabelFunction> rows;
  rows.reserve(c.domain_size());
  for (std::size_t x = 0; x < c.domain_size(); ++x) rows.push_back(c.column(x));
  return class_from_rows(numbered_ids("h", c.size(), 0), std::move(rows));
}

HypothesisClass class_from_graph(const Graph& g) { return class_from_rows(g.vertices(), g.rows()); }

std::vector<std::string> numbered_ids(const std::string& prefix, std::size_t n, std::size_t first) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(first + i));
  return ids;
}

// ---- Graph

Graph::Graph(std::vector<std::string> vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
             const std::vector<std::size_t>& loops)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  rows_.assign(n, LabelFunction(n));
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    rows_[u].set(v);
    rows_[v].set(u);
  }
  for (auto v : loops) {
    if (v >= n) throw std::invalid_argument("loop vertex out of range");
    rows_[v].set(v);
  }
  rebuild_packed();
}

Graph Graph::from_rows(std::vector<std::string> vertices, std::vector<LabelFunction> rows) {
  const std::size_t n = vertices.size();
  if (rows.size() != n) throw std::invalid_argument("adjacency row count differs from vertex count");
  for (std::size_t u = 0; u < n; ++u) {
    if (rows[u].size() != n) throw std::invalid_argument("adjacency row of wrong length");
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rows[u][v] != rows[v][u]) {
        throw std::invalid_argument("adjacency not symmetric at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  Graph g;
  g.vertices_ = std::move(vertices);
  g.rows_ = std::move(rows);
  g.rebuild_packed();
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u) {
    for (auto v : rows_[u].ones()) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> Graph::loops() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (has_loop(v)) out.push_back(v);
  }
  return out;
}

Graph Graph::induced(const std::vector<std::size_t>& keep) const {
  std::vector<std::string> ids;
  std::vector<LabelFunction> rows;
  for (auto v : keep) {
    ids.push_back(vertices_.at(v));
    rows.push_back(rows_[v].restrict_to(keep));
  }
  return from_rows(std::move(ids), std::move(rows));
}

void Graph::rebuild_packed() {
  const std::size_t w = words();
  packed_.clear();
  packed_.reserve(rows_.size() * w);
  for (const auto& r : rows_) packed_.insert(packed_.end(), r.words(), r.words() + w);
}

// ---- WeightedSet

WeightedSet::WeightedSet(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("weighted set must be nonempty");
  std::set<std::size_t> seen;
  Rational total = 0;
  for (const auto& m : members_) {
    if (!seen.insert(m.index).second) throw std::invalid_argument("weighted set repeats member " + std::to_string(m.index));
    if (m.weight.sign() <= 0) throw std::invalid_argument("weighted set member with non-positive weight");
    total += m.weight;
  }
  if (total != Rational(1)) throw std::invalid_argument("weights sum to " + total.str() + ", not 1");
}

WeightedSet WeightedSet::singleton(std::size_t index) { return WeightedSet({{index, Rational(1)}}); }

WeightedSet WeightedSet::uniform(const std::vector<std::size_t>& indices) {
  std::vector<Member> ms;
  const Rational w(1, static_cast<long>(indices.size() == 0 ? 1 : indices.size()));
  for (auto i : indices) ms.push_back({i, w});
  return WeightedSet(std::move(ms));
}

std::vector<std::size_t> WeightedSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.index);
  return out;
}

Rational WeightedSet::weight_of(std::size_t index) const {
  for (const auto& m : members_) {
    if (m.index == index) return m.weight;
  }
  return Rational(0);
}

std::size_t WeightedSet::max_index() const {
  std::size_t mx = 0;
  for (const auto& m : members_) mx = std::max(mx, m.index);
  return mx;
}

Rational WeightedSet::mass_on(const LabelFunction& f) const {
  Rational s = 0;
  for (const auto& m : members_) {
    if (f.get(m.index)) s += m.weight;
  }
  return s;
}

std::string WeightedSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ", ";
    os << members_[i].index << ':' << members_[i].weight;
  }
  os << '}';
  return os.str();
}

// ---- trees and half-graphs

const char* side_name(Side s) {
  switch (s) {
    case Side::domain:
      return "domain";
    case Side::hypothesis:
      return "hypothesis";
    case Side::vertex:
      return "vertex";
  }
  return "?";
}

SpecialTree SpecialTree::empty_shape(std::size_t height, Side node_side, Side leaf_side) {
  if (height > 30) throw std::invalid_argument("tree height too large");
  SpecialTree t;
  t.height = height;
  t.node_side = node_side;
  t.leaf_side = leaf_side;
  t.nodes.assign((std::size_t{1} << height) - 1, 0);
  t.leaves.assign(std::size_t{1} << height, 0);
  return t;
}

std::vector<std::pair<std::size_t, bool>> SpecialTree::path(std::size_t leaf) const {
  std::vector<std::pair<std::size_t, bool>> out;
  out.reserve(height);
  std::size_t cur = 0;
  for (std::size_t d = 0; d < height; ++d) {
    const bool bit = (leaf >> (height - 1 - d)) & 1u;
    out.emplace_back(cur, bit);
    cur = 2 * cur + 1 + (bit ? 1 : 0);
  }
  return out;
}

std::size_t SpecialTree::depth_of(std::size_t node_slot) {
  std::size_t d = 0;
  while (node_slot + 1 >= (std::size_t{2} << d)) ++d;
  return d;
}

std::vector<std::size_t> SpecialTree::leaves_below(std::size_t node) const {
  // heap slot -> (depth, offset within depth)
  const std::size_t d = depth_of(node);
  const std::size_t offset = node + 1 - (std::size_t{1} << d);
  const std::size_t span = std::size_t{1} << (height - d);
  std::vector<std::size_t> out;
  out.reserve(span);
  for (std::size_t i = 0; i < span; ++i) out.push_back(offset * span + i);
  return out;
}

bool related(const HypothesisClass& c, Side sa, std::size_t a, Side sb, std::size_t b) {
  if (sa == Side::hypothesis && sb == Side::domain) return c.label(a, b);
  if (sa == Side::domain && sb == Side::hypothesis) return c.label(b, a);
  throw std::invalid_argument("class relation needs one hypothesis and one domain point");
}

bool related(const Graph& g, Side sa, std::size_t a, Side sb, std::size_t b) {
  if (sa != Side::vertex || sb != Side::vertex) throw std::invalid_argument("graph relation needs vertices");
  return g.adjacent(a, b);
}

namespace {

std::size_t side_size(const HypothesisClass& c, Side s) {
  if (s == Side::domain) return c.domain_size();
  if (s == Side::hypothesis) return c.size();
  return 0;
}

std::size_t side_size(const Graph& g, Side s) { return s == Side::vertex ? g.size() : 0; }

template <class Host>
std::string check_tree_impl(const Host& host, const SpecialTree& t) {
  const std::size_t m = t.height;
  if (m > 30) return "height too large";
  if (t.nodes.size() != (std::size_t{1} << m) - 1) return "wrong node count";
  if (t.leaves.size() != (std::size_t{1} << m)) return "wrong leaf count";
  const std::size_t nn = side_size(host, t.node_side);
  const std::size_t nl = side_size(host, t.leaf_side);
  for (auto v : t.nodes) {
    if (v >= nn) return "node index out of range";
  }
  for (auto v : t.leaves) {
    if (v >= nl) return "leaf index out of range";
  }
  for (std::size_t leaf = 0; leaf < t.leaves.size(); ++leaf) {
    for (auto [slot, bit] : t.path(leaf)) {
      if (related(host, t.node_side, t.nodes[slot], t.leaf_side, t.leaves[leaf]) != bit) {
        std::ostringstream os;
        os << "node slot " << slot << " and leaf slot " << leaf << " should be " << (bit ? "related" : "unrelated");
        return os.str();
      }
    }
  }
  return "";
}

template <class Host>
std::string check_halfgraph_impl(const Host& host, const HalfGraph& hg) {
  if (hg.left.size() != hg.right.size()) return "sides of different length";
  const std::size_t nl = side_size(host, hg.left_side);
  const std::size_t nr = side_size(host, hg.right_side);
  for (auto v : hg.left) {
    if (v >= nl) return "left index out of range";
  }
  for (auto v : hg.right) {
    if (v >= nr) return "right index out of range";
  }
  for (std::size_t i = 0; i < hg.left.size(); ++i) {
    for (std::size_t j = 0; j < hg.right.size(); ++j) {
      if (related(host, hg.left_side, hg.left[i], hg.right_side, hg.right[j]) != (i < j)) {
        std::ostringstream os;
        os << "pair (a" << i + 1 << ", b" << j + 1 << ") breaks the pattern";
        return os.str();
      }
    }
  }
  return "";
}

}  // namespace

std::string check_tree(const HypothesisClass& c, const SpecialTree& t) {
  if (t.node_side == t.leaf_side || t.node_side == Side::vertex || t.leaf_side == Side::vertex) {
    return "class trees need one domain side and one hypothesis side";
  }
  return check_tree_impl(c, t);
}

std::string check_tree(const Graph& g, const SpecialTree& t) {
  if (t.node_side != Side::vertex || t.leaf_side != Side::vertex) return "graph trees need vertex sides";
  std::string why = check_tree_impl(g, t);
  if (!why.empty()) return why;
  std::set<std::size_t> node_set(t.nodes.begin(), t.nodes.end());
  for (auto v : t.leaves) {
    if (node_set.count(v)) return "vertex " + std::to_string(v) + " is both a node and a leaf";
  }
  return "";
}

std::string check_halfgraph(const HypothesisClass& c, const HalfGraph& hg) {
  if (hg.left_side == hg.right_side || hg.left_side == Side::vertex || hg.right_side == Side::vertex) {
    return "class half-graphs need one domain side and one hypothesis side";
  }
  return check_halfgraph_impl(c, hg);
}

std::string check_halfgraph(const Graph& g, const HalfGraph& hg) {
  if (hg.left_side != Side::vertex || hg.right_side != Side::vertex) return "graph half-graphs need vertex sides";
  std::string why = check_halfgraph_impl(g, hg);
  if (!why.empty()) return why;
  std::set<std::size_t> left(hg.left.begin(), hg.left.end());
  for (auto v : hg.right) {
    if (left.count(v)) return "vertex " + std::to_string(v) + " on both sides";
  }
  return "";
}

std::size_t SaturationTrace::birth_level(std::size_t index) const {
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (index < levels[n].size()) return n;
  }
  throw std::out_of_range("function index beyond the last level");
}

}  // namespace satlab
