#include "fgr/category.hpp"

#include <algorithm>
#include <set>

namespace fgr {

FgrObject::FgrObject(std::vector<Letter> generators, WhiteheadSet restrictions)
    : generators_(std::move(generators)), restrictions_(std::move(restrictions)) {
  for (auto& g : generators_) g = g.generator();
  std::sort(generators_.begin(), generators_.end(), LetterNameOrder{});
  if (std::adjacent_find(generators_.begin(), generators_.end()) != generators_.end())
    throw Error("duplicate generator in object");
  for (const auto& p : restrictions_)
    if (!has_generator(p.first().generator()) || !has_generator(p.second().generator()))
      throw Error("restriction " + to_string(p) + " uses a letter outside the generators");
}

FgrObject FgrObject::saturated(std::vector<Letter> generators) {
  FgrObject o(std::move(generators), {});
  o.restrictions_ = o.full_whitehead();
  return o;
}

bool FgrObject::has_generator(Letter l) const {
  return std::binary_search(generators_.begin(), generators_.end(), l.generator(),
                            LetterNameOrder{});
}

bool FgrObject::restricted(Letter a, Letter b) const {
  if (a == b) return false;
  return restrictions_.count(LetterPair(a, b)) > 0;
}

std::vector<Letter> FgrObject::letters() const {
  std::vector<Letter> out;
  for (Letter g : generators_) {
    out.push_back(g);
    out.push_back(g.inverse());
  }
  return out;
}

WhiteheadSet FgrObject::full_whitehead() const {
  WhiteheadSet w;
  auto ls = letters();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) w.emplace(ls[i], ls[j]);
  return w;
}

WhiteheadSet FgrObject::unrestricted() const {
  WhiteheadSet out;
  for (const auto& p : full_whitehead())
    if (!restrictions_.count(p)) out.insert(p);
  return out;
}

std::size_t FgrObject::slack() const {
  std::size_t n = generators_.size();
  return n * (2 * n - 1) - restrictions_.size();
}

FgrObject FgrObject::with(std::initializer_list<LetterPair> extra) const {
  auto n = restrictions_;
  n.insert(extra.begin(), extra.end());
  return FgrObject(generators_, std::move(n));
}

std::string to_string(const FgrObject& o) {
  std::string out = "({";
  for (std::size_t i = 0; i < o.generators().size(); ++i) {
    if (i) out += ",";
    out += o.generators()[i].symbol().name();
  }
  return out + "}, " + to_string(o.restrictions()) + ")";
}

std::string to_string(const Images& images) {
  std::vector<Letter> keys;
  for (const auto& kv : images) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end(), LetterNameOrder{});
  std::string out;
  for (Letter k : keys) {
    if (!out.empty()) out += " ";
    out += k.symbol().name() + "->" + to_string(images.at(k));
  }
  return out;
}

Images identity_images(const std::vector<Letter>& generators) {
  Images m;
  for (Letter g : generators) m[g.generator()] = Word(g.generator());
  return m;
}

void set_letter_image(Images& images, Letter l, const Word& w) {
  images[l.generator()] = l.inverted() ? w.inverse() : w;
}

WhiteheadSet transport_pairs(const WhiteheadSet& pairs, const Images& images) {
  WhiteheadSet out;
  for (const auto& p : pairs) {
    Letter a = tau(image_of(p.first(), images));
    Letter b = tau(image_of(p.second(), images));
    if (a == b)
      throw Error("restriction " + to_string(p) + " collapses under " + to_string(images));
    out.emplace(a, b);
  }
  return out;
}

WhiteheadSet whitehead_of_word(const Word& w) {
  WhiteheadSet out;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.emplace(w[i], w[i + 1].inverse());
  return out;
}

std::string to_string(const Violation& v) {
  static const char* names[] = {"malformed", "(i)", "(ii)", "(iii)", "(iv)"};
  return std::string(names[v.condition]) + ": " + v.message;
}

namespace {

std::optional<Violation> check(const FgrObject& dom, const Images& images,
                               const FgrObject* cod) {
  for (Letter g : dom.generators()) {
    auto it = images.find(g);
    if (it == images.end())
      return Violation{0, "no image for generator " + g.symbol().name()};
    if (cod)
      for (Letter l : it->second)
        if (!cod->has_generator(l))
          return Violation{0, "image of " + g.symbol().name() + " uses " +
                                  l.generator().symbol().name() + " outside the codomain"};
  }
  for (Letter g : dom.generators())
    if (images.at(g).empty())
      return Violation{1, "image of " + g.symbol().name() + " is trivial"};
  if (cod) {
    for (Letter g : dom.generators())
      for (const auto& p : whitehead_of_word(images.at(g)))
        if (!cod->restrictions().count(p))
          return Violation{2, "pair " + to_string(p) + " of the image of " +
                                  g.symbol().name() + " is not restricted in the codomain"};
  }
  for (const auto& p : dom.restrictions()) {
    Letter a = tau(image_of(p.first(), images));
    Letter b = tau(image_of(p.second(), images));
    if (a == b)
      return Violation{3, "restricted pair " + to_string(p) + " has common last letter " +
                              to_string(a)};
  }
  if (cod) {
    for (const auto& p : dom.restrictions()) {
      LetterPair q(tau(image_of(p.first(), images)), tau(image_of(p.second(), images)));
      if (!cod->restrictions().count(q))
        return Violation{4, "restricted pair " + to_string(p) + " maps to " + to_string(q) +
                                " outside the codomain restrictions"};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const FgrMorphism& m) {
  return check(m.domain, m.images, &m.codomain);
}

FgrObject free_codomain(const Images& images) {
  std::set<Letter> gens;
  for (const auto& kv : images)
    for (Letter l : kv.second) gens.insert(l.generator());
  return FgrObject::saturated(std::vector<Letter>(gens.begin(), gens.end()));
}

std::optional<Violation> validate_into_free(const FgrObject& domain, const Images& images) {
  return check(domain, images, nullptr);
}

Images compose_images(const Images& f, const Images& g) {
  Images out;
  for (const auto& [k, w] : f) out[k] = substitute(w, g);
  return out;
}

FgrMorphism compose(const FgrMorphism& f, const FgrMorphism& g) {
  if (!(f.codomain == g.domain)) throw Error("compose: codomain and domain differ");
  FgrMorphism r{f.domain, g.codomain, compose_images(f.images, g.images)};
  if (auto v = validate(r)) throw Error("internal: composite is not a morphism: " + to_string(*v));
  return r;
}

bool is_isomorphism(const FgrMorphism& m) {
  const auto& dom = m.domain;
  const auto& cod = m.codomain;
  if (dom.generators().size() != cod.generators().size()) return false;
  std::set<Letter> hit;
  for (Letter g : dom.generators()) {
    auto it = m.images.find(g);
    if (it == m.images.end() || it->second.size() != 1) return false;
    Letter l = it->second[0];
    if (!cod.has_generator(l)) return false;
    if (!hit.insert(l.generator()).second) return false;
  }
  WhiteheadSet mapped;
  for (const auto& p : dom.restrictions())
    mapped.emplace(image_of(p.first(), m.images)[0], image_of(p.second(), m.images)[0]);
  return mapped == cod.restrictions();
}

bool is_stencil(const Images& images, const LabeledGraph& g) {
  if (!g.is_folded()) return false;
  for (const auto& p : whitehead_graph(g))
    if (tau(image_of(p.first(), images)) == tau(image_of(p.second(), images))) return false;
  return true;
}

LabeledGraph apply_functor(const Images& images, const LabeledGraph& g) {
  int n = g.vertex_count();
  std::vector<GraphEdge> edges;
  for (const auto& e : g.edges()) {
    auto w = image_of(e.label, images);
    if (w.empty()) throw Error("degenerate image for " + e.label.symbol().name());
    int prev = e.from;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? e.to : n++;
      edges.push_back({prev, next, w[i]});
      prev = next;
    }
  }
  return LabeledGraph(n, g.basepoint(), std::move(edges));
}

LabeledGraph core_functor_image(const Images& images, const LabeledGraph& g) {
  return core(apply_functor(images, g));
}

}  // namespace fgr
