#pragma once

// Partition of Hom((Y, N), (X, W_X)) at an unrestricted Whitehead pair by the
// cancellation type of phi(x) phi(y)^-1, and the resulting decomposition of
// morphisms into folding morphisms.

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "fgr/category.hpp"

namespace fgr {

struct FoldingMorphism {
  int kind = 0;
  Letter x, y;             // the split pair, in this orientation
  bool inverse_pair = false;  // y == x^-1
  std::optional<Letter> fresh;  // new generator of kind 2
  FgrMorphism morphism;

  const FgrObject& source() const { return morphism.domain; }
  const FgrObject& target() const { return morphism.codomain; }
  const Images& images() const { return morphism.images; }
};

/// Whether a morphism of the given cancellation kind can exist at x.y.
bool kind_admissible(const FgrObject& obj, Letter x, Letter y, int kind);
std::vector<int> admissible_kinds(const FgrObject& obj, Letter x, Letter y);

/// First letter of the fixed fresh-name sequence not used by obj.
Letter fresh_generator(const FgrObject& obj);

/// The folding morphism of the given kind at the pair x.y, which must be
/// unrestricted in obj.
FoldingMorphism build_folding_morphism(const FgrObject& obj, Letter x, Letter y, int kind);

struct Factorization {
  CancellationSplit split;
  FoldingMorphism psi;
  Images residual;  // phi = residual after psi
};

/// Factors phi (a morphism into (X, W_X)) through the folding morphism
/// matching its cancellation type at x.y.
Factorization classify_and_factor(const FgrObject& obj, const Images& phi, Letter x, Letter y);

struct Height {
  std::size_t total_length = 0;
  std::size_t slack = 0;
  friend auto operator<=>(const Height&, const Height&) = default;
};

Height height(const FgrObject& obj, const Images& phi);

/// An oriented unrestricted pair.
struct OrientedPair {
  Letter x, y;
};

using EdgePicker = std::function<OrientedPair(const FgrObject&)>;

/// Least unrestricted pair under name order, oriented (smaller, larger).
OrientedPair lex_least_edge(const FgrObject& obj);

struct Decomposition {
  std::vector<Factorization> steps;
  FgrObject final_object;
  Images residual;
};

/// Factors phi repeatedly until the object is saturated.
Decomposition decompose(const FgrObject& obj, const Images& phi,
                        const EdgePicker& picker = lex_least_edge);

/// Images of the composite of all steps (the chain psi_k ... psi_1).
Images chain_images(const FgrObject& obj, const Decomposition& d);

struct TriangleSplit {
  FoldingMorphism first;   // adds z.y
  FoldingMorphism second;  // adds z.x
};

/// Two-way cover for x.y in N with z.x, z.y unrestricted.
TriangleSplit triangle_split(const FgrObject& obj, Letter x, Letter y, Letter z);

}  // namespace fgr
