#include "fgr/partition.hpp"

#include <algorithm>

namespace fgr {

namespace {

void require_unrestricted(const FgrObject& obj, Letter x, Letter y) {
  if (x == y) throw Error("pair " + to_string(x) + "." + to_string(y) + " is degenerate");
  if (!obj.has_generator(x) || !obj.has_generator(y))
    throw Error("pair " + to_string(LetterPair(x, y)) + " uses letters outside the object");
  if (obj.restricted(x, y))
    throw Error("pair " + to_string(LetterPair(x, y)) + " is already restricted");
}

}  // namespace

bool kind_admissible(const FgrObject& obj, Letter x, Letter y, int kind) {
  if (kind < 1 || kind > 5) return false;
  if (y == x.inverse()) return kind <= 2;
  if (kind == 5 && obj.restricted(x.inverse(), y.inverse())) return false;
  return true;
}

std::vector<int> admissible_kinds(const FgrObject& obj, Letter x, Letter y) {
  std::vector<int> out;
  for (int k = 1; k <= 5; ++k)
    if (kind_admissible(obj, x, y, k)) out.push_back(k);
  return out;
}

Letter fresh_generator(const FgrObject& obj) {
  return fresh_letter([&](Letter l) { return obj.has_generator(l); });
}

FoldingMorphism build_folding_morphism(const FgrObject& obj, Letter x, Letter y, int kind) {
  require_unrestricted(obj, x, y);
  if (!kind_admissible(obj, x, y, kind)) {
    if (y == x.inverse())
      throw Error("kind " + std::to_string(kind) + " cannot occur at " + to_string(LetterPair(x, y)) +
                  ": only kinds 1 and 2 occur when y = x^-1");
    throw Error("kind 5 cannot occur at " + to_string(x) + "." + to_string(y) + ": " +
                to_string(LetterPair(x.inverse(), y.inverse())) + " is restricted");
  }
  FoldingMorphism f;
  f.kind = kind;
  f.x = x;
  f.y = y;
  f.inverse_pair = (y == x.inverse());
  Images psi = identity_images(obj.generators());
  std::vector<Letter> gens = obj.generators();
  WhiteheadSet extra;
  switch (kind) {
    case 1:
      extra.emplace(x, y);
      break;
    case 2: {
      Letter s = fresh_generator(obj);
      f.fresh = s;
      gens.push_back(s);
      psi[s] = Word(s);
      if (f.inverse_pair) {
        set_letter_image(psi, x, Word(s.inverse()) * Word(x) * Word(s));
      } else {
        set_letter_image(psi, x, Word{x, s});
        set_letter_image(psi, y, Word{y, s});
      }
      extra.emplace(x, s.inverse());
      extra.emplace(y, s.inverse());
      extra.emplace(x, y);
      break;
    }
    case 3:
      set_letter_image(psi, x, Word{x, y});
      extra.emplace(x, y.inverse());
      break;
    case 4:
      set_letter_image(psi, y, Word{y, x});
      extra.emplace(x.inverse(), y);
      break;
    case 5:
      set_letter_image(psi, y, Word(x));
      gens.erase(std::find(gens.begin(), gens.end(), y.generator()));
      break;
  }
  WhiteheadSet n = transport_pairs(obj.restrictions(), psi);
  n.insert(extra.begin(), extra.end());
  f.morphism = FgrMorphism{obj, FgrObject(gens, std::move(n)), std::move(psi)};
  if (auto v = validate(f.morphism))
    throw Error("internal: folding morphism invalid: " + to_string(*v));
  return f;
}

Factorization classify_and_factor(const FgrObject& obj, const Images& phi, Letter x, Letter y) {
  require_unrestricted(obj, x, y);
  Word u = image_of(x, phi), v = image_of(y, phi);
  Factorization r;
  r.split = cancellation_split(u, v);
  r.psi = build_folding_morphism(obj, x, y, r.split.kind);
  Images res;
  for (Letter g : r.psi.target().generators())
    if (obj.has_generator(g)) res[g] = phi.at(g);
  const auto& s = r.split;
  switch (s.kind) {
    case 2:
      res[*r.psi.fresh] = s.t;
      if (r.psi.inverse_pair) {
        set_letter_image(res, x, s.t * u * s.t.inverse());
      } else {
        set_letter_image(res, x, s.u0);
        set_letter_image(res, y, s.v0);
      }
      break;
    case 3:
      set_letter_image(res, x, s.u0);
      break;
    case 4:
      set_letter_image(res, y, s.v0);
      break;
    default:
      break;
  }
  r.residual = std::move(res);
  for (Letter g : obj.generators())
    if (substitute(r.psi.images().at(g), r.residual) != phi.at(g))
      throw Error("internal: factorization does not recompose at " + g.symbol().name());
  return r;
}

Height height(const FgrObject& obj, const Images& phi) {
  Height h;
  for (Letter g : obj.generators()) h.total_length += phi.at(g).size();
  h.slack = obj.slack();
  return h;
}

OrientedPair lex_least_edge(const FgrObject& obj) {
  auto ls = obj.letters();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      if (!obj.restricted(ls[i], ls[j])) return {ls[i], ls[j]};
  throw Error("object is saturated: no unrestricted pair");
}

Decomposition decompose(const FgrObject& obj, const Images& phi, const EdgePicker& picker) {
  if (auto v = validate_into_free(obj, phi)) throw Error("decompose: " + to_string(*v));
  Decomposition d;
  FgrObject cur = obj;
  Images cur_phi;
  for (Letter g : obj.generators()) cur_phi[g] = phi.at(g);
  while (!cur.is_saturated()) {
    auto e = picker(cur);
    auto f = classify_and_factor(cur, cur_phi, e.x, e.y);
    cur = f.psi.target();
    cur_phi = f.residual;
    d.steps.push_back(std::move(f));
  }
  d.final_object = cur;
  d.residual = cur_phi;
  return d;
}

Images chain_images(const FgrObject& obj, const Decomposition& d) {
  Images acc = identity_images(obj.generators());
  for (const auto& s : d.steps) acc = compose_images(acc, s.psi.images());
  return acc;
}

TriangleSplit triangle_split(const FgrObject& obj, Letter x, Letter y, Letter z) {
  if (x == y || !obj.restricted(x, y))
    throw Error("triangle rule needs a restricted pair " + to_string(x) + "." + to_string(y));
  if (z == x || z == y) throw Error("triangle rule needs a third letter");
  require_unrestricted(obj, z, y);
  require_unrestricted(obj, z, x);
  return {build_folding_morphism(obj, z, y, 1), build_folding_morphism(obj, z, x, 1)};
}

}  // namespace fgr
