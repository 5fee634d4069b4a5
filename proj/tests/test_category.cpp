#include "doctest.h"
#include "fgr/category.hpp"
#include "support.hpp"

using namespace fgr;
using namespace fgr::testing;

namespace {

LetterPair P(const std::string& a, const std::string& b) { return LetterPair(L(a), L(b)); }

FgrObject object(std::vector<std::string> gens, std::vector<std::pair<std::string, std::string>> pairs) {
  WhiteheadSet n;
  for (auto& [a, b] : pairs) n.insert(P(a, b));
  return FgrObject(letters_named(gens), n);
}

// Random restriction set: each pair of W_Y kept with probability 1/3.
FgrObject random_object(Rng& rng, const std::vector<Letter>& gens) {
  FgrObject o(gens, {});
  WhiteheadSet n;
  for (const auto& p : o.full_whitehead())
    if (rng() % 3 == 0) n.insert(p);
  return FgrObject(gens, n);
}

// Random images satisfying (iii) for obj by rejection.
std::optional<Images> random_images(Rng& rng, const FgrObject& obj, const std::vector<Letter>& target,
                                    std::size_t max_len) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Images m;
    for (Letter g : obj.generators()) m[g] = random_word(rng, target, max_len);
    if (!validate_into_free(obj, m)) return m;
  }
  return std::nullopt;
}

// Smallest codomain restriction set making (domain, images) a morphism.
FgrObject tight_codomain(const FgrObject& dom, const Images& m, const std::vector<Letter>& target) {
  WhiteheadSet n = transport_pairs(dom.restrictions(), m);
  for (Letter g : dom.generators()) {
    auto w = whitehead_of_word(m.at(g));
    n.insert(w.begin(), w.end());
  }
  return FgrObject(target, n);
}

}  // namespace

TEST_CASE("validate reports the first violated condition") {
  auto dom = object({"a", "b"}, {});
  auto cod = object({"u", "v"}, {{"v", "~u"}, {"u", "~v"}});
  FgrMorphism sigma5{dom, cod, images_of({{"a", "~u"}, {"b", "uv"}})};
  CHECK_FALSE(validate(sigma5));

  FgrMorphism degenerate{dom, cod, images_of({{"a", "1"}, {"b", "uv"}})};
  REQUIRE(validate(degenerate));
  CHECK(validate(degenerate)->condition == 1);

  auto xy = object({"x", "y"}, {{"x", "y"}});
  FgrMorphism clash{xy, FgrObject::saturated(letters_named({"a"})), images_of({{"x", "a"}, {"y", "a"}})};
  REQUIRE(validate(clash));
  CHECK(validate(clash)->condition == 3);

  FgrMorphism not_ii{dom, object({"u", "v"}, {}), images_of({{"a", "~u"}, {"b", "uv"}})};
  REQUIRE(validate(not_ii));
  CHECK(validate(not_ii)->condition == 2);

  auto r = object({"x", "y"}, {{"x", "~y"}});
  FgrMorphism not_iv{r, object({"a", "b"}, {}), images_of({{"x", "a"}, {"y", "b"}})};
  REQUIRE(validate(not_iv));
  CHECK(validate(not_iv)->condition == 4);

  FgrMorphism missing{dom, cod, images_of({{"a", "u"}})};
  REQUIRE(validate(missing));
  CHECK(validate(missing)->condition == 0);
}

TEST_CASE("compose and identity") {
  auto dom = object({"a", "b"}, {});
  auto cod = object({"u", "v"}, {{"v", "~u"}, {"u", "~v"}});
  FgrMorphism sigma5{dom, cod, images_of({{"a", "~u"}, {"b", "uv"}})};
  FgrMorphism id{cod, cod, identity_images(cod.generators())};
  auto c = compose(sigma5, id);
  CHECK(c.images == sigma5.images);
  FgrMorphism id_dom{dom, dom, identity_images(dom.generators())};
  CHECK(compose(id_dom, sigma5).images == sigma5.images);
  CHECK_THROWS_AS(compose(sigma5, sigma5), Error);
}

TEST_CASE("isomorphisms are letter bijections preserving restrictions") {
  auto n = object({"u", "v"}, {{"v", "~u"}, {"u", "~v"}});
  auto swapped = object({"u", "v"}, {{"~u", "v"}, {"~v", "u"}});
  FgrMorphism gamma{n, swapped, images_of({{"u", "~v"}, {"v", "~u"}})};
  CHECK_FALSE(validate(gamma));
  CHECK(is_isomorphism(gamma));
  auto dom = object({"a", "b"}, {});
  FgrMorphism sigma5{dom, n, images_of({{"a", "~u"}, {"b", "uv"}})};
  CHECK_FALSE(is_isomorphism(sigma5));
  FgrMorphism id{n, n, identity_images(n.generators())};
  CHECK(is_isomorphism(id));
  // bijective on letters but restriction sets do not match
  FgrMorphism wrong{n, n, images_of({{"u", "~u"}, {"v", "v"}})};
  CHECK_FALSE(is_isomorphism(wrong));
}

TEST_CASE("stencils") {
  auto g = subgroup_graph({W("xyXY")});
  CHECK(is_stencil(identity_images(letters_named({"x", "y"})), g));
  CHECK_FALSE(is_stencil(images_of({{"x", "ab"}, {"y", "cb"}}), subgroup_graph({W("xY")})));
  CHECK_FALSE(is_stencil(identity_images(letters_named({"a", "b", "c"})),
                         bouquet_of_subgroup({W("ab"), W("ac")})));
  // a stencil space: every valid morphism out of it is a stencil for g
  auto space = FgrObject(letters_named({"x", "y"}), whitehead_graph(g));
  Rng rng(21);
  auto target = letters_named({"a", "b"});
  for (int i = 0; i < 200; ++i) {
    auto m = random_images(rng, space, target, 4);
    if (!m) continue;
    CHECK(is_stencil(*m, g));
  }
}

TEST_CASE("apply_functor subdivides edges") {
  auto f = apply_functor(images_of({{"a", "ab"}}), graph_of_word(W("a")));
  CHECK(f.edge_count() == 2);
  CHECK(trace_word(f, W("ab")) == 1);
  auto sigma5 = images_of({{"a", "~u"}, {"b", "uv"}});
  auto g5 = core_functor_image(sigma5, subgroup_graph({W("bbabA")}));
  CHECK(canonical_key(g5) == canonical_key(subgroup_graph({W("uvuvvu")})));
  CHECK(g5.vertex_count() == 6);
  auto g = subgroup_graph({W("bbabA")});
  CHECK(identical(apply_functor(identity_images(letters_named({"a", "b"})), g), g));
  auto collapse = images_of({{"a", "b"}, {"b", "b"}});
  CHECK(canonical_key(core_functor_image(collapse, g)) ==
        canonical_key(subgroup_graph({substitute(W("bbabA"), collapse)})));
  CHECK_THROWS_AS(apply_functor(images_of({{"a", "1"}, {"b", "b"}}), g), Error);
}

TEST_CASE("property: stencil iff the functor image is folded") {
  Rng rng(22);
  auto y = letters_named({"x", "y"});
  auto target = letters_named({"a", "b"});
  int stencils = 0, non = 0;
  for (int i = 0; i < 600; ++i) {
    std::vector<Word> gens{random_word(rng, y, 5), random_word(rng, y, 5)};
    auto g = subgroup_graph(gens);
    Images m;
    for (Letter l : y) m[l] = random_word(rng, target, 3);
    bool s = is_stencil(m, g);
    CHECK(s == apply_functor(m, g).is_folded());
    (s ? stencils : non)++;
    if (s) {
      // the image of a core graph under a stencil is already core
      auto f = apply_functor(m, g);
      CHECK(f.vertex_count() == core(f).vertex_count());
      CHECK(f.edge_count() == core(f).edge_count());
    }
  }
  CHECK(stencils > 20);
  CHECK(non > 20);
}

TEST_CASE("property: Core F_phi of a subgroup graph is the image subgroup graph") {
  Rng rng(23);
  auto y = letters_named({"x", "y", "z"});
  auto target = letters_named({"a", "b", "c"});
  for (int i = 0; i < 300; ++i) {
    std::vector<Word> gens{random_word(rng, y, 5), random_word(rng, y, 5)};
    Images m;
    for (Letter l : y) m[l] = random_word(rng, target, 4);
    std::vector<Word> imgs;
    for (const auto& w : gens) {
      auto s = substitute(w, m);
      if (!s.empty()) imgs.push_back(s);
    }
    CHECK(canonical_key(core_functor_image(m, subgroup_graph(gens))) ==
          canonical_key(subgroup_graph(imgs)));
  }
}

TEST_CASE("property: composition of morphisms and the functor law") {
  Rng rng(24);
  auto y = letters_named({"x", "y"});
  auto z = letters_named({"p", "q", "r"});
  auto x = letters_named({"a", "b"});
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto dom = random_object(rng, y);
    auto f_img = random_images(rng, dom, z, 3);
    if (!f_img) continue;
    auto mid = tight_codomain(dom, *f_img, z);
    auto g_img = random_images(rng, mid, x, 3);
    if (!g_img) continue;
    auto cod = tight_codomain(mid, *g_img, x);
    FgrMorphism f{dom, mid, *f_img}, g{mid, cod, *g_img};
    REQUIRE_FALSE(validate(f));
    REQUIRE_FALSE(validate(g));
    auto c = compose(f, g);
    CHECK_FALSE(validate(c));
    ++checked;
    for (Letter l : dom.letters()) {
      // tau chain
      CHECK(tau(image_of(l, c.images)) == tau(image_of(tau(image_of(l, f.images)), g.images)));
      // F_{g f}(Gamma_l) = F_g(F_f(Gamma_l)): no cancellation between image blocks
      auto gl = graph_of_word(Word(l));
      auto lhs = apply_functor(c.images, gl);
      auto rhs = apply_functor(g.images, apply_functor(f.images, gl));
      CHECK(lhs.edge_count() == rhs.edge_count());
      CHECK(rhs.is_folded());
      // Whitehead expansion under composition
      auto fw = image_of(l, f.images);
      WhiteheadSet expect;
      for (const auto& p : whitehead_of_word(fw)) {
        for (Letter m : {p.first(), p.second()}) {
          auto w = whitehead_of_word(image_of(m, g.images));
          expect.insert(w.begin(), w.end());
        }
        expect.emplace(tau(image_of(p.first(), g.images)), tau(image_of(p.second(), g.images)));
      }
      for (Letter m : fw) {
        auto w = whitehead_of_word(image_of(m, g.images));
        expect.insert(w.begin(), w.end());
      }
      CHECK(whitehead_of_word(image_of(l, c.images)) == expect);
    }
    // graph-level law on a random core graph
    auto gamma = subgroup_graph({random_word(rng, y, 5), random_word(rng, y, 5)});
    auto lhs = apply_functor(c.images, gamma);
    auto rhs = apply_functor(g.images, apply_functor(f.images, gamma));
    CHECK(lhs.edge_count() == rhs.edge_count());
    CHECK(canonical_key(fold(lhs)) == canonical_key(fold(rhs)));
    if (lhs.is_folded()) CHECK(canonical_key(lhs) == canonical_key(rhs));
  }
  CHECK(checked > 100);
}

TEST_CASE("property: the functor law fails without the stencil condition") {
  Rng rng(25);
  auto y = letters_named({"x", "y"});
  auto z = letters_named({"p", "q"});
  auto x = letters_named({"a", "b"});
  int failures = 0;
  for (int i = 0; i < 400; ++i) {
    Images f, g;
    for (Letter l : y) f[l] = random_word(rng, z, 3);
    for (Letter l : z) g[l] = random_word(rng, x, 3);
    bool stencil_all = true;
    for (Letter l : y) stencil_all &= is_stencil(g, graph_of_word(f[l]));
    bool law = true;
    auto comp = compose_images(f, g);
    for (Letter l : y) {
      if (comp.at(l).empty()) {
        law = false;
        continue;
      }
      auto gl = graph_of_word(Word(l));
      law &= apply_functor(compose_images(f, g), gl).edge_count() ==
             apply_functor(g, apply_functor(f, gl)).edge_count();
    }
    CHECK(law == stencil_all);
    if (!law) ++failures;
  }
  CHECK(failures > 20);
}
