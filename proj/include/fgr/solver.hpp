#pragma once

// Surjectivity problems (Gamma -> Delta, (U, N_U)) and the recursive
// case-splitting search with back-edge, equivalence and containment links.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fgr/partition.hpp"

namespace fgr {

struct SurjectivityProblem {
  LabeledGraph gamma;
  LabeledGraph delta;
  FgrObject object;
};

/// Takes cores of both graphs, checks labels and the inclusion Gamma -> Delta,
/// then normalizes.
SurjectivityProblem make_problem(const LabeledGraph& gamma, const LabeledGraph& delta,
                                 const FgrObject& object);

/// Conjugates both graphs so that Gamma's basepoint lies on a reduced cycle
/// (pi_1(Gamma) then contains a cyclically reduced word).
SurjectivityProblem normalize(const SurjectivityProblem& p);

/// Key of the pointed pair (Gamma, Delta) at the current basepoint.
std::string pair_key(const SurjectivityProblem& p);

/// Keys of the pair re-pointed at every vertex of a normalized Gamma. Two
/// normalized problems have conjugate graph pairs iff the key of one is in
/// the key set of the other.
std::set<std::string> conjugacy_keys(const SurjectivityProblem& p);

enum class Status { Negative, StencilPositive, Ambiguous, BackEdge, Equivalent, ContainedIn, Inconclusive };

std::string to_string(Status s);

struct Classification {
  Status status = Status::Ambiguous;
  WhiteheadSet ambiguous;  // W(Gamma) \ N_U
};

Classification classify(const SurjectivityProblem& p);

struct ChildProblem {
  FoldingMorphism psi;
  SurjectivityProblem problem;
};

/// One child per admissible cancellation kind at the unrestricted pair x.y of
/// W(Gamma).
std::vector<ChildProblem> split(const SurjectivityProblem& p, Letter x, Letter y);

/// The two kind-1 children of the triangle rule (x.y restricted, z pivot).
std::pair<ChildProblem, ChildProblem> triangle_children(const SurjectivityProblem& p, Letter x,
                                                        Letter y, Letter z);

struct WitnessOptions {
  int max_len = 2;
  int max_long_images = 1;  // images longer than one letter
  bool bijection_only = false;
};

/// A morphism gamma from `from`'s object to `to`'s object with image words of
/// length <= max_len, at most max_long_images of them longer than a letter,
/// such that Core F_gamma(from) is conjugate to `to`. With bijection_only the
/// witness must be an FGR isomorphism.
std::optional<Images> find_witness(const SurjectivityProblem& from, const SurjectivityProblem& to,
                                   const WitnessOptions& opts = {});

struct SplitDecision {
  bool triangle = false;
  Letter x, y, z;  // split at x.y, or triangle pivot x.y with third letter z
};

std::string to_string(const SplitDecision& d);

struct CaseNode {
  int id = 0;
  std::string label;
  int parent = -1;
  std::vector<int> children;
  SurjectivityProblem problem;
  std::optional<FoldingMorphism> via;  // morphism from the parent's object
  Status status = Status::Ambiguous;
  WhiteheadSet ambiguous;
  std::optional<SplitDecision> decision;
  int link = -1;   // target of a back-edge, equivalence or containment
  Images witness;  // morphism from the target's object into this node's object
  bool closed = false;
  bool self_resolved = false;
};

using CasePicker = std::function<SplitDecision(const CaseNode&)>;

/// Triangle rule when two ambiguous pairs share a letter and their other ends
/// are restricted; otherwise the least ambiguous pair in name order.
SplitDecision lex_pick(const CaseNode& node);

/// Decisions looked up by node label, falling back to lex_pick when the label
/// is absent or its decision does not apply.
CasePicker scripted_picker(std::map<std::string, SplitDecision> script);

/// Script replaying the hand analysis of the counterexample and the
/// commutator example.
CasePicker paper_picker();

enum class Verdict { Positive, Negative, Inconclusive };

std::string to_string(Verdict v);
int exit_code(Verdict v);

struct SolveOptions {
  std::size_t budget = 20000;  // nodes classified, across all roots
  CasePicker picker = lex_pick;
  int max_witness_len = 2;
  int max_long_images = 1;
  bool parallel = false;
};

struct CaseTree {
  std::vector<CaseNode> nodes;
  std::vector<int> roots;
  std::vector<Verdict> root_verdicts;
  Verdict verdict = Verdict::Positive;

  const CaseNode* find(const std::string& label) const;
};

/// Node registry shared by several roots, so later roots may be resolved by
/// containment in earlier ones.
class Solver {
 public:
  explicit Solver(SolveOptions opts);

  /// Expands a root depth first; returns its verdict.
  Verdict solve_root(const SurjectivityProblem& root, const std::string& label);

  CaseTree tree() const;
  const std::vector<CaseNode>& nodes() const { return nodes_; }

 private:
  struct Entry {
    std::set<std::string> keys;
    std::string key;
  };

  int add_node(SurjectivityProblem p, const std::string& label, int parent,
               std::optional<FoldingMorphism> via);
  void visit(int id);
  bool try_link(int id);
  void close(int id);
  bool in_subtree(int node, int root) const;
  Verdict subtree_verdict(int root) const;

  SolveOptions opts_;
  std::vector<CaseNode> nodes_;
  std::vector<Entry> entries_;
  std::vector<int> roots_;
  std::vector<Verdict> verdicts_;
  std::size_t processed_ = 0;
};

CaseTree solve(const SurjectivityProblem& root, const SolveOptions& opts = {},
               const std::string& label = "P");

/// Indented text listing in depth-first order.
std::string render_report(const CaseTree& t);

}  // namespace fgr
