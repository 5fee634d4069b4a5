#pragma once

// Shared random generators and naive oracles for the test suites.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fgr/category.hpp"
#include "fgr/graphs.hpp"
#include "fgr/words.hpp"

namespace fgr::testing {

using Rng = std::mt19937_64;

inline Letter L(const std::string& s) { return parse_letter(s); }
inline Word W(const std::string& s) { return parse_word(s); }

inline std::vector<Letter> letters_named(const std::vector<std::string>& names) {
  std::vector<Letter> out;
  for (const auto& n : names) out.push_back(Letter::named(n));
  return out;
}

inline Letter random_letter(Rng& rng, const std::vector<Letter>& gens) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * gens.size() - 1);
  auto k = pick(rng);
  return k % 2 ? gens[k / 2].inverse() : gens[k / 2];
}

// Unreduced random letter sequence.
inline std::vector<Letter> random_raw(Rng& rng, const std::vector<Letter>& gens,
                                      std::size_t len) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(random_letter(rng, gens));
  return out;
}

// Random reduced word of exactly `len` letters.
inline Word random_reduced(Rng& rng, const std::vector<Letter>& gens, std::size_t len) {
  std::vector<Letter> out;
  while (out.size() < len) {
    Letter l = random_letter(rng, gens);
    if (!out.empty() && out.back() == l.inverse()) continue;
    out.push_back(l);
  }
  return Word(out);
}

// Random reduced nontrivial word with length in [1, max_len].
inline Word random_word(Rng& rng, const std::vector<Letter>& gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  return random_reduced(rng, gens, len(rng));
}

// Quadratic free reduction by repeated scanning, independent of reduce().
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1].inverse()) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline Images images_of(std::initializer_list<std::pair<const char*, const char*>> kv) {
  Images m;
  for (const auto& [k, v] : kv) m[Letter::named(k)] = parse_word(v);
  return m;
}

// Brute-force Stallings folding: repeatedly fold a randomly chosen foldable
// pair via fold_step and trim one random hair vertex at a time, until
// neither applies. Independent of fold()/trim().
inline LabeledGraph brute_force_core(LabeledGraph g, Rng& rng) {
  while (true) {
    std::vector<std::pair<int, int>> foldable;
    for (int v = 0; v < g.vertex_count(); ++v) {
      const auto& hs = g.outgoing(v);
      for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j)
          if (g.label(hs[i]) == g.label(hs[j])) foldable.emplace_back(hs[i], hs[j]);
    }
    std::vector<int> hairs;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (v != g.basepoint() && g.degree(v) <= 1) hairs.push_back(v);
    if (foldable.empty() && hairs.empty()) return g;
    std::uniform_int_distribution<std::size_t> pick(0, foldable.size() + hairs.size() - 1);
    auto k = pick(rng);
    if (k < foldable.size()) {
      g = fold_step(g, foldable[k].first, foldable[k].second);
    } else {
      int v = hairs[k - foldable.size()];
      std::vector<GraphEdge> edges;
      for (const auto& e : g.edges())
        if (e.from != v && e.to != v) edges.push_back(e);
      std::vector<GraphEdge> renum;
      for (auto e : edges) {
        if (e.from > v) --e.from;
        if (e.to > v) --e.to;
        renum.push_back(e);
      }
      int bp = g.basepoint() > v ? g.basepoint() - 1 : g.basepoint();
      g = LabeledGraph(g.vertex_count() - 1, bp, std::move(renum));
    }
  }
}

// Random connected labeled graph: a random tree plus extra edges.
inline LabeledGraph random_graph(Rng& rng, const std::vector<Letter>& gens, int vertices,
                                 int extra_edges) {
  std::vector<GraphEdge> edges;
  for (int v = 1; v < vertices; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.push_back({parent(rng), v, random_letter(rng, gens)});
  }
  std::uniform_int_distribution<int> any(0, vertices - 1);
  for (int i = 0; i < extra_edges; ++i) edges.push_back({any(rng), any(rng), random_letter(rng, gens)});
  return LabeledGraph(vertices, 0, std::move(edges));
}

// Random morphism from obj into the free group on target, by rejection on
// the morphism conditions.
inline std::optional<Images> random_morphism(Rng& rng, const FgrObject& obj,
                                             const std::vector<Letter>& target,
                                             std::size_t max_len, int attempts = 2000) {
  for (int i = 0; i < attempts; ++i) {
    Images m;
    for (Letter g : obj.generators()) m[g] = random_word(rng, target, max_len);
    if (!validate_into_free(obj, m)) return m;
  }
  return std::nullopt;
}

}  // namespace fgr::testing
