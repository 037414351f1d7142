#ifndef SATLAB_CORE_HPP_
#define SATLAB_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "satlab/label_function.hpp"
#include "satlab/rational.hpp"

namespace satlab {

// Domain X plus a duplicate-free list of label functions over X.
// The list order is part of the value: saturation levels keep the previous
// level as a prefix so indices stay valid across levels.
class HypothesisClass {
 public:
  HypothesisClass() = default;
  // Rows must have length |domain| and be pairwise distinct; order is kept.
  HypothesisClass(std::vector<std::string> domain, std::vector<LabelFunction> hypotheses);

  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  std::size_t size() const { return hypotheses_.size(); }
  bool empty() const { return hypotheses_.empty(); }

  const LabelFunction& operator[](std::size_t i) const { return hypotheses_[i]; }
  const std::vector<LabelFunction>& hypotheses() const { return hypotheses_; }
  bool label(std::size_t h, std::size_t x) const { return hypotheses_[h][x]; }

  std::optional<std::size_t> index_of(const LabelFunction& f) const;
  bool contains(const LabelFunction& f) const { return index_.count(f) != 0; }

  // Row-major packed copy of the hypotheses for the bit kernels.
  const std::vector<std::uint64_t>& packed() const { return packed_; }
  std::size_t words() const { return (domain_.size() + 63) / 64; }

  // Column x as a function over hypothesis indices.
  LabelFunction column(std::size_t x) const;

  // This class followed by those of `extra` not already present, in the
  // order given.
  HypothesisClass with_appended(const std::vector<LabelFunction>& extra) const;

  // Set comparisons (same domain size required).
  bool same_functions(const HypothesisClass& other) const;
  bool subset_of(const HypothesisClass& other) const;

 private:
  std::vector<std::string> domain_;
  std::vector<LabelFunction> hypotheses_;
  std::unordered_map<LabelFunction, std::size_t> index_;
  std::vector<std::uint64_t> packed_;
};

// Finite symmetric graph; loops are the diagonal of the adjacency matrix.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
        const std::vector<std::size_t>& loops = {});
  // Rows must form a symmetric matrix.
  static Graph from_rows(std::vector<std::string> vertices, std::vector<LabelFunction> rows);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& id(std::size_t v) const { return vertices_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return rows_[u][v]; }
  bool has_loop(std::size_t v) const { return rows_[v][v]; }
  const LabelFunction& row(std::size_t v) const { return rows_[v]; }
  const std::vector<LabelFunction>& rows() const { return rows_; }

  // Edges with u < v, lexicographic.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> loops() const;
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }

  const std::vector<std::uint64_t>& packed() const { return packed_; }
  std::size_t words() const { return (vertices_.size() + 63) / 64; }

  // Induced on `keep`, in that order.
  Graph induced(const std::vector<std::size_t>& keep) const;

 private:
  void rebuild_packed();

  std::vector<std::string> vertices_;
  std::vector<LabelFunction> rows_;
  std::vector<std::uint64_t> packed_;
};

// Distinct members with positive weights summing to exactly 1.
class WeightedSet {
 public:
  struct Member {
    std::size_t index;
    Rational weight;
  };

  explicit WeightedSet(std::vector<Member> members);
  static WeightedSet singleton(std::size_t index);
  static WeightedSet uniform(const std::vector<std::size_t>& indices);

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::vector<std::size_t> indices() const;
  Rational weight_of(std::size_t index) const;
  std::size_t max_index() const;

  // Total weight of members whose label in `f` is 1.
  Rational mass_on(const LabelFunction& f) const;

  std::string str() const;

 private:
  std::vector<Member> members_;
};

enum class Side { domain, hypothesis, vertex };
const char* side_name(Side s);

// Special tree of height m. nodes[] is in heap order (root 0, children of i
// at 2i+1 for bit 0 and 2i+2 for bit 1); leaves[] is indexed by the branch
// read as a binary number, most significant bit first.
struct SpecialTree {
  std::size_t height = 0;
  Side node_side = Side::domain;
  Side leaf_side = Side::hypothesis;
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> leaves;

  static SpecialTree empty_shape(std::size_t height, Side node_side, Side leaf_side);
  // (node slot, direction bit) pairs along the branch of leaf slot `leaf`.
  std::vector<std::pair<std::size_t, bool>> path(std::size_t leaf) const;
  // Leaf slots below node slot `node`.
  std::vector<std::size_t> leaves_below(std::size_t node) const;
  static std::size_t depth_of(std::size_t node_slot);
};

// a_1..a_k, b_1..b_k with related(a_i, b_j) iff i < j.
struct HalfGraph {
  Side left_side = Side::hypothesis;
  Side right_side = Side::domain;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::size_t length() const { return left.size(); }
};

// The relation a tree or half-graph is checked against. For a class, a
// hypothesis h and a point x are related iff h(x) = 1; for a graph, u and v
// are related iff adjacent.
bool related(const HypothesisClass& c, Side sa, std::size_t a, Side sb, std::size_t b);
bool related(const Graph& g, Side sa, std::size_t a, Side sb, std::size_t b);

// Empty string when valid, otherwise the first violation found.
std::string check_tree(const HypothesisClass& c, const SpecialTree& t);
std::string check_tree(const Graph& g, const SpecialTree& t);
std::string check_halfgraph(const HypothesisClass& c, const HalfGraph& hg);
std::string check_halfgraph(const Graph& g, const HalfGraph& hg);

struct SaturationTrace {
  Rational epsilon;
  std::vector<HypothesisClass> levels;
  // provenance[n] maps the index (in levels[n]) of each function first
  // added at level n to a witness over levels[n-1]. provenance[0] is empty.
  std::vector<std::map<std::size_t, WeightedSet>> provenance;
  bool fixpoint = false;
  bool cap_reached = false;

  // Level where function `index` of the last level first appears.
  std::size_t birth_level(std::size_t index) const;
};

struct Signature {
  LabelFunction on_vertices;
  LabelFunction on_tgood;
  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature& a, const Signature& b) {
    if (auto c = a.on_vertices <=> b.on_vertices; c != 0) return c;
    return a.on_tgood <=> b.on_tgood;
  }
};

struct GraphSaturationTrace {
  Rational epsilon;
  std::vector<Graph> levels;
  // t_good[n]: goodness-realizable opinion functions over levels[n].
  std::vector<std::vector<LabelFunction>> t_good;
  // For n >= 1, per vertex first added at level n: its signature over
  // levels[n-1] (against t_good[n-1]) and an excellent witness set over the
  // vertices of levels[n-1].
  std::vector<std::map<std::size_t, Signature>> signatures;
  std::vector<std::map<std::size_t, WeightedSet>> witnesses;
  bool fixpoint = false;
  bool cap_reached = false;
};

// Rows sorted and deduplicated, so the result does not depend on input order.
HypothesisClass make_class(std::vector<std::string> domain, const std::vector<std::vector<int>>& rows);
// Keeps row order, dropping repeats; throws when a row length differs from the domain.
HypothesisClass class_from_rows(std::vector<std::string> domain, std::vector<LabelFunction> rows);

// Points become hypotheses and hypotheses become points ("h0", "h1", ...).
HypothesisClass dual(const HypothesisClass& c);

// Adjacency rows (loops included) as hypotheses over the vertex set.
HypothesisClass class_from_graph(const Graph& g);

// Default identifiers x1..xn.
std::vector<std::string> numbered_ids(const std::string& prefix, std::size_t n, std::size_t first = 1);

}  // namespace satlab

#endif  // SATLAB_CORE_HPP_
