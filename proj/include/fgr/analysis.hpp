#pragma once

// Stencil-class exploration, rank-2 primitivity, and rewriting a subgroup
// element in a given free basis.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgr/solver.hpp"

namespace fgr {

struct StencilClass {
  std::string label;  // case-tree label of the representative leaf
  LabeledGraph graph;
  FgrObject object;                 // W(graph) is contained in its restrictions
  std::vector<Images> provenance;   // folding morphisms from the root, in order
  std::vector<std::string> members; // leaves equivalent to the representative
};

struct ExploreOptions {
  std::size_t budget = 20000;
  CasePicker picker = lex_pick;
  WitnessOptions compare{2, 2, false};  // bound for comparing leaves
};

struct StencilExploration {
  std::vector<StencilClass> classes;  // maximal classes, in tree order
  bool closed = false;                // every branch ended in a stencil leaf or a link
  std::vector<std::string> leaves;    // all stencil leaves
  // pairs of maximal classes with no witness in either direction
  std::vector<std::pair<std::string, std::string>> undecided;
  CaseTree tree;
};

/// Splits on the graph alone (Delta := Gamma), collects stencil leaves and
/// keeps the maximal ones up to mutual images.
StencilExploration explore_stencil_classes(const LabeledGraph& root, const FgrObject& object,
                                           const ExploreOptions& opts = {});

/// Same over several labeled roots sharing one registry; the Delta of each
/// root is replaced by its Gamma.
StencilExploration explore_stencil_classes(
    const std::vector<std::pair<std::string, SurjectivityProblem>>& roots,
    const ExploreOptions& opts = {});

/// The eight counterexample roots in solving order.
StencilExploration explore_counterexample_classes(const ExploreOptions& opts = {});

/// Whitehead reduction over a rank-2 alphabet (inferred from w). Throws if w
/// uses more than two generators.
bool is_primitive_rank2(const Word& w);

/// Letters alpha, beta, gamma, ... naming basis elements.
Letter basis_letter(std::size_t i);

/// w as a word in basis_letter(0..n-1), or nullopt if w is outside the
/// subgroup. Throws if the basis is not free.
std::optional<Word> rewrite_in_subgroup_basis(const Word& w, const std::vector<Word>& basis);

struct FreeFactorCertificate {
  std::optional<Word> rewritten;
  bool primitive = false;
};

/// H = <h> is a free factor of K = <basis> when h rewrites to a primitive
/// element of the rank-2 basis.
FreeFactorCertificate free_factor_certificate(const Word& h, const std::vector<Word>& basis);

}  // namespace fgr
