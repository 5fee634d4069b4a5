#include "fgr/io.hpp"

#include <algorithm>
#include <map>

namespace fgr {

namespace {

template <class F>
auto parsing(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON document: ") + e.what());
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trimmed(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string letter_name(Letter l) { return to_string(l); }

// A generator named in compact or token syntax; "A" reads as an inverse.
Letter generator_token(std::string_view text) {
  auto t = trimmed(text);
  Word w = parse_word(t);
  if (w.size() != 1) throw ParseError("expected a single generator, got '" + t + "'");
  if (w.front().inverted()) throw ParseError("generator given as an inverse: '" + t + "'");
  return w.front();
}

Json pairs_to_json(const WhiteheadSet& s) {
  Json out = Json::array();
  for (const auto& p : sorted_by_name(s)) {
    Letter a = p.first(), b = p.second();
    if (name_less(b, a)) std::swap(a, b);
    out.push_back({letter_name(a), letter_name(b)});
  }
  return out;
}

Json words_to_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_string(w));
  return out;
}

}  // namespace

std::vector<Word> parse_word_list(std::string_view text) {
  return parsing([&] {
    char sep = text.find(';') != std::string_view::npos ? ';' : ',';
    std::vector<Word> out;
    for (const auto& part : split(text, sep)) {
      auto t = trimmed(part);
      if (t.empty()) throw ParseError("empty entry in word list '" + std::string(text) + "'");
      out.push_back(parse_word(t));
    }
    return out;
  });
}

Images parse_images(std::string_view text) {
  return parsing([&] {
    // a segment without '=' continues the previous token word
    std::vector<std::string> entries;
    for (const auto& chunk : split(text, ';'))
      for (const auto& part : split(chunk, ',')) {
        if (part.find('=') != std::string::npos || entries.empty()) entries.push_back(part);
        else entries.back() += "," + part;
      }
    Images out;
    for (const auto& e : entries) {
      auto eq = e.find('=');
      if (eq == std::string::npos) throw ParseError("expected name=word in '" + e + "'");
      Letter g = generator_token(std::string_view(e).substr(0, eq));
      if (out.count(g)) throw ParseError("generator " + letter_name(g) + " assigned twice");
      out[g] = parse_word(trimmed(std::string_view(e).substr(eq + 1)));
    }
    if (out.empty()) throw ParseError("no images given");
    return out;
  });
}

FgrObject parse_object_text(std::string_view text) {
  return parsing([&] {
    auto bar = text.find('|');
    auto gens_text = text.substr(0, bar);
    std::vector<Letter> gens;
    for (const auto& g : split(gens_text, ',')) gens.push_back(generator_token(g));
    WhiteheadSet n;
    if (bar != std::string_view::npos) {
      auto rest = trimmed(text.substr(bar + 1));
      if (!rest.empty())
        for (const auto& p : split(rest, ',')) n.insert(parse_pair(trimmed(p)));
    }
    return FgrObject(std::move(gens), std::move(n));
  });
}

Json graph_to_json(const LabeledGraph& g) {
  auto c = canonical_form(g).graph;
  Json out;
  Json vs = Json::array();
  for (int v = 0; v < c.vertex_count(); ++v) vs.push_back(v);
  out["vertices"] = vs;
  out["basepoint"] = c.basepoint();
  Json es = Json::array();
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    const auto& e = c.edges()[i];
    es.push_back({{"id", i}, {"from", e.from}, {"to", e.to}, {"label", letter_name(e.label)}});
  }
  out["edges"] = es;
  return out;
}

LabeledGraph graph_from_json(const Json& j) {
  return parsing([&] {
    if (j.contains("subgroup")) {
      std::vector<Word> ws;
      for (const auto& w : j.at("subgroup")) ws.push_back(parse_word(w.get<std::string>()));
      return subgroup_graph(ws);
    }
    std::map<long long, int> ids;
    for (const auto& v : j.at("vertices")) {
      auto id = v.get<long long>();
      if (ids.count(id)) throw ParseError("duplicate vertex id " + std::to_string(id));
      ids.emplace(id, static_cast<int>(ids.size()));
    }
    auto vertex = [&](const Json& v) {
      auto it = ids.find(v.get<long long>());
      if (it == ids.end()) throw ParseError("unknown vertex id " + v.dump());
      return it->second;
    };
    std::vector<GraphEdge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({vertex(e.at("from")), vertex(e.at("to")),
                       parse_letter(e.at("label").get<std::string>())});
    return LabeledGraph(static_cast<int>(ids.size()), vertex(j.at("basepoint")), std::move(edges));
  });
}

Json object_to_json(const FgrObject& o) {
  Json gens = Json::array();
  for (Letter g : o.generators()) gens.push_back(letter_name(g));
  return {{"generators", gens}, {"restrictions", pairs_to_json(o.restrictions())}};
}

FgrObject object_from_json(const Json& j) {
  return parsing([&] {
    std::vector<Letter> gens;
    for (const auto& g : j.at("generators")) gens.push_back(generator_token(g.get<std::string>()));
    WhiteheadSet n;
    if (j.contains("restrictions"))
      for (const auto& p : j.at("restrictions")) {
        if (p.is_string()) n.insert(parse_pair(p.get<std::string>()));
        else if (p.size() == 2)
          n.insert(LetterPair(parse_letter(p[0].get<std::string>()),
                              parse_letter(p[1].get<std::string>())));
        else throw ParseError("restriction must be a pair: " + p.dump());
      }
    return FgrObject(std::move(gens), std::move(n));
  });
}

Json images_to_json(const Images& images) {
  std::vector<Letter> keys;
  for (const auto& kv : images) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end(), LetterNameOrder{});
  Json m = Json::object();
  for (Letter k : keys) m[letter_name(k)] = to_string(images.at(k));
  return m;
}

Images images_from_json(const Json& j) {
  return parsing([&] {
    const Json& m = j.contains("images") ? j.at("images") : j;
    Images out;
    for (const auto& [k, v] : m.items()) out[generator_token(k)] = parse_word(v.get<std::string>());
    return out;
  });
}

Json problem_to_json(const SurjectivityProblem& p) {
  return {{"gamma", graph_to_json(p.gamma)},
          {"delta", graph_to_json(p.delta)},
          {"object", object_to_json(p.object)}};
}

SurjectivityProblem problem_from_json(const Json& j) {
  auto [g, d, o] = parsing([&] {
    return std::make_tuple(graph_from_json(j.at("gamma")), graph_from_json(j.at("delta")),
                           object_from_json(j.at("object")));
  });
  return make_problem(g, d, o);
}

Json decomposition_to_json(const Decomposition& d) {
  Json steps = Json::array();
  for (const auto& s : d.steps)
    steps.push_back({{"kind", s.psi.kind},
                     {"edge", {letter_name(s.psi.x), letter_name(s.psi.y)}},
                     {"images", images_to_json(s.psi.images())}});
  return {{"steps", steps},
          {"final_object", object_to_json(d.final_object)},
          {"residual", images_to_json(d.residual)}};
}

Json case_tree_to_json(const CaseTree& t) {
  auto label = [&](int id) { return t.nodes[static_cast<std::size_t>(id)].label; };
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    Json j;
    j["label"] = n.label;
    j["parent"] = n.parent >= 0 ? Json(label(n.parent)) : Json(nullptr);
    j["status"] = to_string(n.status);
    if (n.via)
      j["via"] = {{"kind", n.via->kind},
                  {"edge", {letter_name(n.via->x), letter_name(n.via->y)}},
                  {"images", images_to_json(n.via->images())}};
    j["object"] = object_to_json(n.problem.object);
    j["gamma"] = words_to_json(pi1_basis(n.problem.gamma));
    j["delta"] = words_to_json(pi1_basis(n.problem.delta));
    if (!n.ambiguous.empty()) j["ambiguous"] = pairs_to_json(n.ambiguous);
    if (n.decision) j["split"] = to_string(*n.decision);
    if (n.link >= 0) {
      j["link"] = label(n.link);
      j["witness"] = images_to_json(n.witness);
    }
    Json kids = Json::array();
    for (int c : n.children) kids.push_back(label(c));
    j["children"] = kids;
    nodes.push_back(j);
  }
  Json roots = Json::array();
  for (std::size_t i = 0; i < t.roots.size(); ++i)
    roots.push_back({{"label", label(t.roots[i])}, {"verdict", to_string(t.root_verdicts[i])}});
  return {{"verdict", to_string(t.verdict)}, {"roots", roots}, {"nodes", nodes}};
}

Json exploration_to_json(const StencilExploration& e) {
  Json classes = Json::array();
  for (const auto& c : e.classes) {
    Json prov = Json::array();
    for (const auto& p : c.provenance) prov.push_back(images_to_json(p));
    classes.push_back({{"label", c.label},
                       {"members", c.members},
                       {"graph", graph_to_json(c.graph)},
                       {"basis", words_to_json(pi1_basis(c.graph))},
                       {"object", object_to_json(c.object)},
                       {"provenance", prov}});
  }
  Json undecided = Json::array();
  for (const auto& [a, b] : e.undecided) undecided.push_back({a, b});
  return {{"closed", e.closed},
          {"classes", classes},
          {"leaves", e.leaves},
          {"undecided", undecided},
          {"tree", case_tree_to_json(e.tree)}};
}

Json coordinates_to_json(const ChangeOfCoordinates& c) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.cases.size(); ++i) {
    const auto& k = c.cases[i];
    rows.push_back({{"row", i + 1},
                    {"object", object_to_json(k.target)},
                    {"psi", images_to_json(k.psi)},
                    {"sigma", images_to_json(k.sigma)}});
  }
  return {{"source", object_to_json(c.source)},
          {"domain", object_to_json(c.domain)},
          {"sigma", images_to_json(c.sigma)},
          {"rows", rows}};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace fgr
