#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamperm/graph.hpp"
#include "hamperm/perm.hpp"
#include "hamperm/random.hpp"

namespace hamperm {

// Pseudo-hamilton circuit over the vertices of a contracted graph.
//
// The circuit is kept as h_base (the last materialised circuit, addressed by 0-based
// ordinals) plus an ordered list of splice segments of h_base, each traversed forwards
// or backwards. A vertex's orientation is its sign in h_base times the direction of the
// segment holding it, so reversing a segment reorients every r-vertex inside it.
class HamState {
 public:
  struct Undo {
    enum class Kind { Move, Rotation };
    Kind kind = Kind::Move;
    MoveSet forward;      // the move that was applied
    int a = 0, x = 0;     // rotation anchor and chord end
    int old_succ = 0;     // successor of a before the rotation
    std::vector<int> flips;  // r-vertices reoriented after the step
  };

  // rebuild_interval: 0 means ceil(sqrt(n)), negative disables automatic rebuilds.
  HamState(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit, int rebuild_interval = 0);
  // Random circuit. With forced_complement, tries to use only non-arcs of the graph;
  // `fell_back` reports that some arcs of the graph remained.
  static HamState random(const ContractedGraph& cg, Rng& rng, bool forced_complement = false,
                         bool* fell_back = nullptr, int rebuild_interval = 0);

  const ContractedGraph& graph() const { return *cg_; }
  int n() const { return n_; }
  int succ(int v) const;
  int pred(int v) const;
  int sign(int v) const;
  bool clockwise(int a, int b, int c) const;
  // Arc v -> succ(v) lies in the contracted graph under the current orientations.
  bool arc_real(int v) const { return !pseudo_[v]; }
  bool arc_real(int u, int w) const { return cg_->arc(u, sign(u), w, sign(w)); }

  int pseudo_count() const { return pseudo_count_; }
  bool is_pseudo(int v) const { return pseudo_[v]; }
  // Pseudo-arc vertices ordered by usable degree (descending), then id.
  std::vector<int> pseudo_vertices() const;
  // A pseudo-arc vertex of greatest usable degree, ties broken by rng; 0 if none.
  int top_pseudo(Rng& rng) const;
  int usable_degree(int v) const { return cg_->degree(v, sign(v)); }

  bool admissible(const MoveSet& m) const;
  std::vector<std::pair<int, int>> witness_arcs(const MoveSet& m) const;
  // Witness arcs present in the graph minus moved vertices that are arc vertices.
  int score(const MoveSet& m) const;
  // Rejects inadmissible moves without touching the state.
  bool apply_move(const MoveSet& m, bool record = true);

  // Exact change in the number of pseudo-arc vertices (undirected graphs).
  int rotation_score(int a, int x) const;
  // The two sufficient conditions stated for a positive rotation score.
  bool rotation_score_positive(int a, int b) const;
  // Reverses the subpath from succ(a) through x. x must be adjacent to a.
  bool apply_rotation(int a, int x, bool record = true);

  // Reverses the orientation of an r-vertex in place.
  void flip(int v);
  // Greedily reorients the given r-vertices while that lowers the pseudo count; the flips
  // are appended to the newest BACKTRACK entry. Returns the reduction achieved.
  int orient(const std::vector<int>& vs);

  void rebuild();
  void tick();  // counts an iteration and rebuilds when due
  int iterations() const { return iter_count_; }
  int rebuild_interval() const { return rebuild_interval_; }

  const std::vector<Undo>& backtrack() const { return backtrack_; }
  void set_backtrack_limit(std::size_t limit) { backtrack_limit_ = limit; }
  void clear_backtrack() { backtrack_.clear(); }
  // Pops the newest entry and restores the circuit it replaced.
  bool undo();

  std::vector<OrientedVertex> circuit() const;  // starts at contracted vertex 1
  NCycle ncycle() const;
  std::string str() const;
  // Ordinal form: runs of consecutive ordinals of h_base, "x ... y" for three or more.
  std::string abbreviation() const;
  int ord(int v) const { return ord_[v] + 1; }
  int ord_inv(int i) const { return base_[i - 1]; }
  // Current clockwise position (0-based, relative to the first segment) and its inverse.
  int position(int v) const { return pos(v); }
  int at(int p) const;
  int segment_count() const { return static_cast<int>(segs_.size()); }

  // Recomputes PSEUDO from scratch and checks it and the circuit structure.
  bool check_integrity(std::string* why = nullptr) const;

 private:
  struct Seg {
    int lo, hi;
    bool rev;
    int len() const { return hi - lo + 1; }
  };
  int locate(int o) const;
  int pos(int v) const;
  int seg_first(const Seg& s) const { return base_[s.rev ? s.hi : s.lo]; }
  int seg_last(const Seg& s) const { return base_[s.rev ? s.lo : s.hi]; }
  void cut_after(int v);
  // Segments rotated to begin just after v (v must end a segment).
  std::vector<Seg> rotated_after(int v) const;
  static std::size_t block_end(const std::vector<Seg>& list, std::size_t from, int last_vertex, const std::vector<int>& base);
  void set_segments(std::vector<Seg> segs);
  void refresh(int v);
  void push_undo(Undo u);

  const ContractedGraph* cg_;
  int n_;
  std::vector<int> base_;       // ordinal -> vertex
  std::vector<int> ord_;        // vertex -> ordinal
  std::vector<int> base_sign_;  // vertex -> sign within h_base
  std::vector<Seg> segs_;
  std::vector<int> seg_start_;  // circuit position where each segment begins
  std::vector<char> pseudo_;
  std::vector<int> key_deg_;
  std::set<std::pair<int, int>> pseudo_order_;  // (-degree, vertex)
  int pseudo_count_ = 0;
  std::vector<Undo> backtrack_;
  std::size_t backtrack_limit_ = 0;  // 0 = unbounded
  int iter_count_ = 0;
  int rebuild_interval_;
};

}  // namespace hamperm
