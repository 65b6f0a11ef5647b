#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamperm {

// Undirected graphs keep each edge as a pair of symmetric arcs, so out(v) == in(v).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, bool directed = false);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  // Idempotent; loops and out-of-range ids are rejected.
  void add_edge(int u, int v);
  bool remove_edge(int u, int v);
  bool has_arc(int u, int v) const;
  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return directed_ ? in_[v] : out_[v]; }
  int degree(int v) const { return static_cast<int>(out_[v].size()); }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in(v).size()); }
  // Graph: minimum degree. Digraph: minimum over all in- and out-degrees.
  int min_degree() const;
  // Graph edges are reported once with u < v.
  std::vector<std::pair<int, int>> edges() const;
  std::size_t edge_count() const;
  bool operator==(const Graph& o) const;

 private:
  void check(int v) const;
  int n_ = 0;
  bool directed_ = false;
  std::vector<std::vector<int>> out_, in_;
};

// File format: header "graph n" or "digraph n", then "v: a, b, c" lines or "u v" lines.
// '#' starts a comment. Hyphenated tokens such as 4-6-9 denote paths: the path's own
// edges are added, a listed head attaches at the path's last vertex and a path used as
// a neighbour attaches at its first vertex.
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);
std::string format_graph(const Graph& g);

struct NotHamiltonian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contracted vertex is a path of base vertices; single-vertex paths are plain vertices.
// Sign +1 traverses the path as stored, -1 traverses it reversed.
class ContractedGraph {
 public:
  // Collapses forced paths to a fixed point. Throws NotHamiltonian when the reduction
  // proves no hamilton circuit exists (including a forced cycle that misses vertices).
  static ContractedGraph contract(const Graph& g);
  // Each base vertex becomes its own contracted vertex.
  static ContractedGraph trivial(const Graph& g);

  const Graph& base() const { return base_; }
  const Graph& reduced() const { return reduced_; }
  bool directed() const { return base_.directed(); }
  int m() const { return static_cast<int>(paths_.size()) - 1; }
  const std::vector<int>& path(int x) const { return paths_[x]; }
  bool is_r(int x) const { return paths_[x].size() > 1; }
  int first(int x) const { return paths_[x].front(); }
  int last(int x) const { return paths_[x].back(); }
  int exit(int x, int sign) const { return sign > 0 ? last(x) : first(x); }
  int entry(int x, int sign) const { return sign > 0 ? first(x) : last(x); }
  int owner(int base_vertex) const { return owner_[base_vertex]; }
  bool arc(int x, int sx, int y, int sy) const;
  // Contracted vertices joined to x through any endpoint (out-neighbours for digraphs).
  const std::vector<int>& neighbors(int x) const { return nbr_out_[x]; }
  const std::vector<int>& in_neighbors(int x) const { return nbr_in_[x]; }
  // Arcs usable out of x in orientation `sign`.
  int degree(int x, int sign) const;
  std::string label(int x, int sign = 1) const;
  // Looks up "4-6-9" or "9-6-4"; returns (id, sign).
  std::pair<int, int> find_label(const std::string& token) const;
  // Set when the forced structure is itself a hamilton circuit of the base graph.
  const std::optional<std::vector<int>>& forced_circuit() const { return forced_circuit_; }

 private:
  void index();
  Graph base_, reduced_;
  std::vector<std::vector<int>> paths_{{}};
  std::vector<int> owner_;
  std::vector<std::vector<int>> nbr_out_, nbr_in_;
  std::optional<std::vector<int>> forced_circuit_;
};

struct OrientedVertex {
  int id = 0;
  int sign = 1;
  bool operator==(const OrientedVertex& o) const { return id == o.id && sign == o.sign; }
};

// Parses "(1 20 24 5 11-12-2 ...)" against cg's labels.
std::vector<OrientedVertex> parse_contracted_circuit(const ContractedGraph& cg, const std::string& text);
// Canonical text: starts at contracted vertex 1, r-vertices in their orientation.
std::string format_contracted_circuit(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit);

// Replaces every contracted vertex by its path in the given orientation. No edge checks.
std::vector<int> expand_sequence(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit);

struct MissingEdge {
  int u = 0, v = 0;
};
// Checks that seq visits every vertex of g exactly once and consecutive pairs are arcs.
// Returns the first missing arc, if any; throws std::invalid_argument if seq is not a
// permutation of the vertex set.
std::optional<MissingEdge> verify_circuit(const Graph& g, const std::vector<int>& seq);

// Expands and verifies against the base graph; throws std::runtime_error naming the
// first missing edge.
std::vector<int> expand_circuit(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit);

}  // namespace hamperm
