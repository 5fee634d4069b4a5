#pragma once

// Objects and morphisms of the category of free groups with restrictions,
// stencil checks and the edge-subdivision functor.

#include <optional>
#include <string>
#include <vector>

#include "fgr/graphs.hpp"
#include "fgr/words.hpp"

namespace fgr {

/// A pair (Y, N): free generators and a set of restricted Whitehead pairs
/// over Y and its inverses.
class FgrObject {
 public:
  FgrObject() = default;
  FgrObject(std::vector<Letter> generators, WhiteheadSet restrictions);

  /// (Y, W_Y): every pair restricted.
  static FgrObject saturated(std::vector<Letter> generators);

  /// Generators (positive letters) in name order.
  const std::vector<Letter>& generators() const { return generators_; }
  const WhiteheadSet& restrictions() const { return restrictions_; }

  bool has_generator(Letter l) const;
  bool restricted(Letter a, Letter b) const;
  /// Y and its inverses in name order.
  std::vector<Letter> letters() const;
  /// W_Y.
  WhiteheadSet full_whitehead() const;
  /// W_Y minus N.
  WhiteheadSet unrestricted() const;
  bool is_saturated() const { return slack() == 0; }
  std::size_t slack() const;

  /// Copy with more restrictions.
  FgrObject with(std::initializer_list<LetterPair> extra) const;

  friend bool operator==(const FgrObject&, const FgrObject&) = default;

 private:
  std::vector<Letter> generators_;
  WhiteheadSet restrictions_;
};

std::string to_string(const FgrObject& o);

/// "a->~u b->uv" in generator name order.
std::string to_string(const Images& images);

Images identity_images(const std::vector<Letter>& generators);

/// Sets the image of a possibly inverted letter (stored on its generator).
void set_letter_image(Images& images, Letter l, const Word& w);

/// {tau phi(r) . tau phi(z) | r.z in pairs}; throws if some pair collapses.
WhiteheadSet transport_pairs(const WhiteheadSet& pairs, const Images& images);

/// Whitehead pairs of the path graph reading w.
WhiteheadSet whitehead_of_word(const Word& w);

struct FgrMorphism {
  FgrObject domain;
  FgrObject codomain;
  Images images;
};

struct Violation {
  /// 1..4 for the defining conditions, 0 for a malformed morphism (missing
  /// image or letters outside the codomain).
  int condition = 0;
  std::string message;
};

std::string to_string(const Violation& v);

/// Checks conditions (i)-(iv) in order and reports the first failure.
std::optional<Violation> validate(const FgrMorphism& m);

/// Codomain (X, W_X) over the letters occurring in the images.
FgrObject free_codomain(const Images& images);

/// Validity as a morphism into (X, W_X) for an unrestricted free target.
std::optional<Violation> validate_into_free(const FgrObject& domain, const Images& images);

/// g after f. Throws on object mismatch or if the result fails validation.
FgrMorphism compose(const FgrMorphism& f, const FgrMorphism& g);

/// Images of g after f as plain homomorphisms.
Images compose_images(const Images& f, const Images& g);

bool is_isomorphism(const FgrMorphism& m);

/// True iff g is folded and tau(phi(x)) != tau(phi(y)) for all x.y in W(g).
bool is_stencil(const Images& images, const LabeledGraph& g);

/// Replaces every edge by a path reading the image of its label. Original
/// vertices keep their ids.
LabeledGraph apply_functor(const Images& images, const LabeledGraph& g);

/// core(apply_functor(images, g)).
LabeledGraph core_functor_image(const Images& images, const LabeledGraph& g);

}  // namespace fgr
