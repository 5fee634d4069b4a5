#include "fgr/analysis.hpp"

#include <algorithm>

#include "fgr/coords.hpp"

namespace fgr {

namespace {

std::vector<Images> provenance_of(const CaseTree& t, int id) {
  std::vector<Images> out;
  for (int n = id; t.nodes[static_cast<std::size_t>(n)].parent >= 0;
       n = t.nodes[static_cast<std::size_t>(n)].parent)
    out.push_back(t.nodes[static_cast<std::size_t>(n)].via->images());
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

StencilExploration explore_stencil_classes(
    const std::vector<std::pair<std::string, SurjectivityProblem>>& roots,
    const ExploreOptions& opts) {
  SolveOptions so;
  so.budget = opts.budget;
  so.picker = opts.picker;
  Solver solver(so);
  for (const auto& [label, p] : roots) {
    SurjectivityProblem q{p.gamma, p.gamma, p.object};
    solver.solve_root(normalize(q), label);
  }
  StencilExploration out;
  out.tree = solver.tree();
  out.closed = out.tree.verdict == Verdict::Positive;

  std::vector<int> leaves;
  for (const auto& n : out.tree.nodes)
    if (n.status == Status::StencilPositive) {
      leaves.push_back(n.id);
      out.leaves.push_back(n.label);
    }
  auto problem = [&](int id) -> const SurjectivityProblem& {
    return out.tree.nodes[static_cast<std::size_t>(id)].problem;
  };
  // above[i][j]: leaf j is an image of leaf i
  std::size_t n = leaves.size();
  std::vector<std::vector<bool>> above(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      above[i][j] = i == j || find_witness(problem(leaves[i]), problem(leaves[j]), opts.compare);

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j) {
    bool dominated = false;
    for (std::size_t i = 0; i < n && !dominated; ++i) {
      if (i == j || !above[i][j]) continue;
      // strictly above, or equivalent and earlier
      dominated = !above[j][i] || i < j;
    }
    if (!dominated) kept.push_back(j);
  }
  auto label = [&](std::size_t i) { return out.tree.nodes[static_cast<std::size_t>(leaves[i])].label; };
  for (std::size_t j : kept) {
    const auto& node = out.tree.nodes[static_cast<std::size_t>(leaves[j])];
    StencilClass c{node.label, node.problem.gamma, node.problem.object,
                   provenance_of(out.tree, node.id), {}};
    for (std::size_t i = 0; i < n; ++i)
      if (above[i][j] && above[j][i]) c.members.push_back(label(i));
    out.classes.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a + 1; b < kept.size(); ++b)
      if (!above[kept[a]][kept[b]] && !above[kept[b]][kept[a]])
        out.undecided.emplace_back(out.classes[a].label, out.classes[b].label);
  return out;
}

StencilExploration explore_stencil_classes(const LabeledGraph& root, const FgrObject& object,
                                           const ExploreOptions& opts) {
  return explore_stencil_classes({{"P", make_problem(root, root, object)}}, opts);
}

StencilExploration explore_counterexample_classes(const ExploreOptions& opts) {
  auto roots = counterexample_roots();
  std::vector<std::pair<std::string, SurjectivityProblem>> labeled;
  for (int i : counterexample_root_order())
    labeled.emplace_back(std::to_string(i), roots[static_cast<std::size_t>(i - 1)]);
  return explore_stencil_classes(labeled, opts);
}

bool is_primitive_rank2(const Word& w) {
  auto gens = generators_of(w);
  if (gens.size() > 2) throw Error("is_primitive_rank2: " + to_string(w) + " uses more than two generators");
  Word cur = cyclic_reduce(w).core;
  if (cur.empty()) return false;
  if (gens.size() == 1) return cur.size() == 1;
  // type II Whitehead automorphisms z -> zm, m^-1 z, m^-1 z m for m in {c, c^-1}
  for (;;) {
    if (cur.size() == 1) return true;
    bool reduced = false;
    for (std::size_t k = 0; k < 2 && !reduced; ++k) {
      Letter z = gens[k], c = gens[1 - k];
      for (Letter m : {c, c.inverse()}) {
        Word zw(z), mw(m);
        for (const Word& img : {zw * mw, mw.inverse() * zw, mw.inverse() * zw * mw}) {
          Word next = cyclic_reduce(substitute(cur, {{z, img}, {c, Word(c)}})).core;
          if (next.size() < cur.size()) {
            cur = next;
            reduced = true;
            break;
          }
        }
        if (reduced) break;
      }
    }
    if (!reduced) return false;
  }
}

Letter basis_letter(std::size_t i) {
  static const char* const greek[] = {"α", "β", "γ", "δ", "ε", "ζ", "η", "θ"};
  if (i < std::size(greek)) return Letter::named(greek[i]);
  return Letter::named("e" + std::to_string(i + 1));
}

namespace {

// Folded bouquet whose half-edges carry words in the basis letters; the
// product along a closed path at the basepoint expresses it in the basis.
class AnnotatedGraph {
 public:
  explicit AnnotatedGraph(const std::vector<Word>& basis) {
    vertices_ = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Word& w = basis[i];
      if (w.empty()) throw Error("dependent basis: element " + std::to_string(i + 1) + " is trivial");
      int prev = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        int next = k + 1 == w.size() ? 0 : vertices_++;
        Word note = k == 0 ? Word(basis_letter(i)) : Word();
        add(prev, next, w[k], note);
        prev = next;
      }
    }
    fold();
  }

  std::optional<Word> read(const Word& w) const {
    int v = 0;
    Word acc;
    for (Letter l : w) {
      auto h = step(v, l);
      if (!h) return std::nullopt;
      acc = acc * note(*h);
      v = terminus(*h);
    }
    if (v != 0) return std::nullopt;
    return acc;
  }

 private:
  struct Edge {
    int from, to;
    Letter label;
    Word note;
    bool alive = true;
  };

  void add(int from, int to, Letter l, Word note) {
    if (l.inverted()) edges_.push_back({to, from, l.inverse(), note.inverse()});
    else edges_.push_back({from, to, l, std::move(note)});
  }

  int origin(int h) const {
    const auto& e = edges_[static_cast<std::size_t>(h / 2)];
    return h % 2 ? e.to : e.from;
  }
  int terminus(int h) const { return origin(h ^ 1); }
  Letter label(int h) const {
    Letter l = edges_[static_cast<std::size_t>(h / 2)].label;
    return h % 2 ? l.inverse() : l;
  }
  Word note(int h) const {
    const Word& n = edges_[static_cast<std::size_t>(h / 2)].note;
    return h % 2 ? n.inverse() : n;
  }
  bool alive(int h) const { return edges_[static_cast<std::size_t>(h / 2)].alive; }
  int half_edges() const { return 2 * static_cast<int>(edges_.size()); }

  std::optional<int> step(int v, Letter l) const {
    for (int h = 0; h < half_edges(); ++h)
      if (alive(h) && origin(h) == v && label(h) == l) return h;
    return std::nullopt;
  }

  std::optional<std::pair<int, int>> find_fold() const {
    for (int h1 = 0; h1 < half_edges(); ++h1) {
      if (!alive(h1)) continue;
      for (int h2 = h1 + 1; h2 < half_edges(); ++h2)
        if (alive(h2) && (h1 ^ 1) != h2 && origin(h1) == origin(h2) && label(h1) == label(h2))
          return std::make_pair(h1, h2);
    }
    return std::nullopt;
  }

  void fold() {
    while (auto f = find_fold()) {
      auto [h1, h2] = *f;
      int p = terminus(h1), q = terminus(h2);
      if (p == q) {
        if (note(h1) != note(h2)) throw Error("dependent basis");
        edges_[static_cast<std::size_t>(h2 / 2)].alive = false;
        continue;
      }
      if (q == 0) {
        std::swap(h1, h2);
        std::swap(p, q);
      }
      // re-express paths through q so that h2 carries the same note as h1
      Word c = note(h1).inverse() * note(h2);
      for (auto& e : edges_) {
        if (!e.alive) continue;
        if (e.from == q) e.note = c * e.note;
        if (e.to == q) e.note = e.note * c.inverse();
      }
      edges_[static_cast<std::size_t>(h2 / 2)].alive = false;
      for (auto& e : edges_) {
        if (e.from == q) e.from = p;
        if (e.to == q) e.to = p;
      }
    }
  }

  int vertices_ = 1;
  std::vector<Edge> edges_;
};

}  // namespace

std::optional<Word> rewrite_in_subgroup_basis(const Word& w, const std::vector<Word>& basis) {
  return AnnotatedGraph(basis).read(w);
}

FreeFactorCertificate free_factor_certificate(const Word& h, const std::vector<Word>& basis) {
  FreeFactorCertificate c;
  c.rewritten = rewrite_in_subgroup_basis(h, basis);
  if (c.rewritten && !c.rewritten->empty() && basis.size() == 2)
    c.primitive = is_primitive_rank2(*c.rewritten);
  return c;
}

}  // namespace fgr
