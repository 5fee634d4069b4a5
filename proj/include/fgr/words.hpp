#pragma once

// Reduced words in free groups over interned, named alphabets.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgr/error.hpp"

namespace fgr {

/// Interned alphabet symbol. Two symbols are equal iff their names are.
class Symbol {
 public:
  constexpr Symbol() = default;

  static Symbol intern(std::string_view name);

  constexpr std::uint32_t id() const noexcept { return id_; }
  const std::string& name() const;

  friend constexpr bool operator==(Symbol, Symbol) = default;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  explicit constexpr Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
  friend class Letter;
};

/// Compares symbols by name; used wherever output or search order must be
/// independent of interning order.
bool name_less(Symbol a, Symbol b);

/// A generator or its formal inverse.
class Letter {
 public:
  constexpr Letter() = default;

  static constexpr Letter positive(Symbol s) {
    return Letter(static_cast<std::int32_t>(s.id()) + 1);
  }
  static constexpr Letter negative(Symbol s) {
    return Letter(-(static_cast<std::int32_t>(s.id()) + 1));
  }
  static Letter named(std::string_view name, bool inverted = false) {
    auto s = Symbol::intern(name);
    return inverted ? negative(s) : positive(s);
  }

  Symbol symbol() const {
    return Symbol(static_cast<std::uint32_t>((raw_ < 0 ? -raw_ : raw_) - 1));
  }
  bool inverted() const noexcept { return raw_ < 0; }
  bool valid() const noexcept { return raw_ != 0; }
  constexpr Letter inverse() const { return Letter(-raw_); }
  /// The positive letter with the same generator.
  Letter generator() const { return inverted() ? inverse() : *this; }
  std::int32_t raw() const noexcept { return raw_; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  explicit constexpr Letter(std::int32_t raw) : raw_(raw) {}
  std::int32_t raw_ = 0;
};

/// Total order on letters by generator name, positive before inverse.
bool name_less(Letter a, Letter b);

struct LetterNameOrder {
  bool operator()(Letter a, Letter b) const { return name_less(a, b); }
};

/// Printable form of one letter: "a" or "~a".
std::string to_string(Letter l);

/// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Reduces the given letter sequence.
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw);
  explicit Word(Letter l) : letters_{l} {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  /// Subword [pos, pos + len), which is reduced whenever *this is.
  Word subword(std::size_t pos, std::size_t len) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  struct Trusted {};
  Word(Trusted, std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;

  friend Word reduce(std::span<const Letter>);
  friend Word concat_reduced(const Word&, const Word&);
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw);

/// Product a*b, reduced.
Word concat_reduced(const Word& a, const Word& b);

/// Last letter of a nontrivial reduced word.
Letter tau(const Word& w);

/// True iff w is empty or its first and last letters do not cancel.
bool is_cyclically_reduced(const Word& w);

struct CyclicDecomposition {
  Word conjugator;
  Word core;
};

/// w = conjugator * core * conjugator^-1 without cancellation, core
/// cyclically reduced, conjugator maximal.
CyclicDecomposition cyclic_reduce(const Word& w);

struct CancellationSplit {
  Word t;   // maximal common suffix of u and v
  Word u0;  // u = u0 . t
  Word v0;  // v = v0 . t
  int kind = 0;
};

/// Cancellation type of the product u * v^-1.
///   1: t = 1; 2: t, u0, v0 != 1; 3: v0 = 1 != u0; 4: u0 = 1 != v0; 5: u = v.
CancellationSplit cancellation_split(const Word& u, const Word& v);

/// Homomorphism images keyed by generator (positive letter).
using Images = std::map<Letter, Word>;

/// Applies a homomorphism given by images of generators.
Word substitute(const Word& w, const Images& images);

/// Image of one (possibly inverted) letter.
Word image_of(Letter l, const Images& images);

/// Set of generators (positive letters) occurring in w.
std::vector<Letter> generators_of(const Word& w);

/// Text syntax: "bbabA" for single-letter lowercase alphabets (uppercase is
/// the inverse), or "u,v,~u" token lists. "1" and "" denote the identity.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// "a" -> positive letter a, "~a" -> inverse.
Letter parse_letter(std::string_view token);

/// Abelianization of w as exponent sums per generator.
std::map<Letter, long> abelianize(const Word& w);

/// Fresh generator names not in `taken`, in the deterministic sequence
/// t, s, r, q, p, t1, t2, ...
Letter fresh_letter(const std::function<bool(Letter)>& taken);

}  // namespace fgr

template <>
struct std::hash<fgr::Letter> {
  std::size_t operator()(fgr::Letter l) const noexcept {
    return std::hash<std::int32_t>{}(l.raw());
  }
};
