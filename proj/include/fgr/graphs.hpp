#pragma once

// Pointed labeled Serre graphs: folding, trimming, core graphs, Whitehead
// graphs and morphisms between folded graphs.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fgr/words.hpp"

namespace fgr {

/// An unordered pair of distinct letters (an edge of a Whitehead graph).
/// Stored with first < second in raw letter order.
class LetterPair {
 public:
  LetterPair() = default;
  LetterPair(Letter a, Letter b);

  Letter first() const { return a_; }
  Letter second() const { return b_; }
  bool contains(Letter l) const { return a_ == l || b_ == l; }
  /// The member that is not `l`; `l` must be a member.
  Letter other(Letter l) const { return a_ == l ? b_ : a_; }

  friend bool operator==(const LetterPair&, const LetterPair&) = default;
  friend auto operator<=>(const LetterPair&, const LetterPair&) = default;

 private:
  Letter a_, b_;
};

/// "x.~y" with members in name order.
std::string to_string(const LetterPair& p);
/// Inverse of to_string: two letter tokens joined by '.'.
LetterPair parse_pair(std::string_view text);

using WhiteheadSet = std::set<LetterPair>;

/// Members of the set sorted by name order, for stable output.
std::vector<LetterPair> sorted_by_name(const WhiteheadSet& s);
std::string to_string(const WhiteheadSet& s);

struct GraphEdge {
  int from = 0;
  int to = 0;
  Letter label;  // always a positive letter
};

/// A pointed graph labeled over free generators. Positive edges are stored
/// explicitly; each edge i has half-edges 2i (from -> to, reading label) and
/// 2i+1 (to -> from, reading label^-1).
class LabeledGraph {
 public:
  LabeledGraph() : LabeledGraph(1, 0, {}) {}
  /// Edges whose label is inverted are flipped to positive orientation.
  LabeledGraph(int vertex_count, int basepoint, std::vector<GraphEdge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int half_edge_count() const { return 2 * edge_count(); }
  int basepoint() const { return basepoint_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  int origin(int h) const;
  int terminus(int h) const { return origin(h ^ 1); }
  Letter label(int h) const;
  static int partner(int h) { return h ^ 1; }

  /// Half-edges leaving v.
  const std::vector<int>& outgoing(int v) const { return out_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(outgoing(v).size()); }

  /// Generators (positive letters) labeling some edge.
  std::vector<Letter> alphabet() const;

  /// Half-edge leaving v with label l, if any (first one for unfolded graphs).
  std::optional<int> step(int v, Letter l) const;

  bool is_folded() const;
  bool is_connected() const;

  /// Same graph with a different basepoint.
  LabeledGraph with_basepoint(int v) const;

 private:
  int vertex_count_ = 1;
  int basepoint_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<int>> out_;
};

LabeledGraph graph_of_word(const Word& w);
LabeledGraph bouquet_of_subgroup(const std::vector<Word>& generators);

/// Folds half-edges e and f (same origin, same label).
LabeledGraph fold_step(const LabeledGraph& g, int e, int f);

/// Fully folds g (union-find with a merge worklist). Vertex ids are compacted.
LabeledGraph fold(const LabeledGraph& g);

/// Repeatedly removes non-basepoint vertices of degree <= 1.
LabeledGraph trim(const LabeledGraph& g);

LabeledGraph core(const LabeledGraph& g);

/// Folds without trimming; throws if the input violates the hypothesis that
/// every non-basepoint vertex has two incident edges with distinct labels,
/// or if trimming would still be needed.
LabeledGraph core_by_folding_only(const LabeledGraph& g);

LabeledGraph subgroup_graph(const std::vector<Word>& generators);

/// Vertex reached by reading w from the basepoint of a folded graph.
std::optional<int> trace_word(const LabeledGraph& g, const Word& w);
bool contains_word(const LabeledGraph& g, const Word& w);

/// Free basis of pi_1(g, basepoint) read off a BFS spanning tree.
std::vector<Word> pi1_basis(const LabeledGraph& g);

/// Label of the tree path from the basepoint to each vertex (BFS tree).
std::vector<Word> tree_words(const LabeledGraph& g);

struct GraphMorphism {
  std::vector<int> vertex_map;
  std::vector<int> half_edge_map;
  int target_vertices = 0;
  int target_half_edges = 0;
};

std::optional<GraphMorphism> unique_morphism(const LabeledGraph& src,
                                             const LabeledGraph& dst);
bool is_surjective(const GraphMorphism& m);

WhiteheadSet whitehead_graph(const LabeledGraph& g);

/// Glues a path reading u whose far end becomes the new basepoint, so that
/// pi_1 becomes u pi_1(g) u^-1. The result is not folded in general.
LabeledGraph attach_conjugator(const LabeledGraph& g, const Word& u);

struct CanonicalForm {
  LabeledGraph graph;
  std::vector<int> vertex_map;  // old vertex -> canonical vertex
  std::vector<int> edge_map;    // old edge -> canonical edge
};

/// Relabels a folded connected graph by BFS from the basepoint, visiting
/// outgoing half-edges in label name order. Isomorphic pointed graphs get
/// identical results.
CanonicalForm canonical_form(const LabeledGraph& g);

/// Structural equality of labeled graphs with identical ids.
bool identical(const LabeledGraph& a, const LabeledGraph& b);

/// Isomorphism of folded pointed graphs.
bool same_pointed_graph(const LabeledGraph& a, const LabeledGraph& b);

/// Compact deterministic text key for a folded graph (canonical form).
std::string canonical_key(const LabeledGraph& g);

/// Rank of pi_1 of a connected graph.
int betti_number(const LabeledGraph& g);

/// DOT rendering for inspection.
std::string to_dot(const LabeledGraph& g);

}  // namespace fgr
