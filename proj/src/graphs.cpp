#include "fgr/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace fgr {

LetterPair::LetterPair(Letter a, Letter b) {
  if (a == b) throw Error("Whitehead pair needs distinct letters: " + to_string(a));
  if (!a.valid() || !b.valid()) throw Error("invalid letter in Whitehead pair");
  a_ = std::min(a, b);
  b_ = std::max(a, b);
}

std::string to_string(const LetterPair& p) {
  Letter a = p.first(), b = p.second();
  if (name_less(b, a)) std::swap(a, b);
  return to_string(a) + "." + to_string(b);
}

LetterPair parse_pair(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos || text.find('.', dot + 1) != std::string_view::npos)
    throw Error("bad pair '" + std::string(text) + "'");
  auto side = [&](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (t.size() == 1 && t[0] >= 'A' && t[0] <= 'Z')
      return Letter::named(std::string(1, static_cast<char>(t[0] - 'A' + 'a')), true);
    return parse_letter(t);
  };
  Letter a = side(text.substr(0, dot)), b = side(text.substr(dot + 1));
  if (a == b) throw Error("pair '" + std::string(text) + "' repeats a letter");
  return LetterPair(a, b);
}

std::vector<LetterPair> sorted_by_name(const WhiteheadSet& s) {
  std::vector<LetterPair> v(s.begin(), s.end());
  auto key = [](const LetterPair& p) {
    Letter a = p.first(), b = p.second();
    if (name_less(b, a)) std::swap(a, b);
    return std::pair{a, b};
  };
  std::sort(v.begin(), v.end(), [&](const LetterPair& x, const LetterPair& y) {
    auto [a1, b1] = key(x);
    auto [a2, b2] = key(y);
    if (a1 != a2) return name_less(a1, a2);
    return name_less(b1, b2);
  });
  return v;
}

std::string to_string(const WhiteheadSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : sorted_by_name(s)) {
    if (!first) out += ", ";
    first = false;
    out += to_string(p);
  }
  return out + "}";
}

LabeledGraph::LabeledGraph(int vertex_count, int basepoint, std::vector<GraphEdge> edges)
    : vertex_count_(vertex_count), basepoint_(basepoint), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw Error("graph needs at least one vertex");
  if (basepoint_ < 0 || basepoint_ >= vertex_count_) throw Error("basepoint out of range");
  out_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.from < 0 || e.from >= vertex_count_ || e.to < 0 || e.to >= vertex_count_)
      throw Error("edge endpoint out of range");
    if (!e.label.valid()) throw Error("edge without label");
    if (e.label.inverted()) {
      std::swap(e.from, e.to);
      e.label = e.label.inverse();
    }
    out_[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(2 * i));
    out_[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(2 * i + 1));
  }
}

int LabeledGraph::origin(int h) const {
  const auto& e = edges_.at(static_cast<std::size_t>(h / 2));
  return (h & 1) ? e.to : e.from;
}

Letter LabeledGraph::label(int h) const {
  const auto& e = edges_.at(static_cast<std::size_t>(h / 2));
  return (h & 1) ? e.label.inverse() : e.label;
}

std::vector<Letter> LabeledGraph::alphabet() const {
  std::vector<Letter> out;
  for (const auto& e : edges_) out.push_back(e.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> LabeledGraph::step(int v, Letter l) const {
  for (int h : outgoing(v))
    if (label(h) == l) return h;
  return std::nullopt;
}

bool LabeledGraph::is_folded() const {
  for (int v = 0; v < vertex_count_; ++v) {
    const auto& hs = outgoing(v);
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j)
        if (label(hs[i]) == label(hs[j])) return false;
  }
  return true;
}

bool LabeledGraph::is_connected() const {
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<int> stack{basepoint_};
  seen[static_cast<std::size_t>(basepoint_)] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h : outgoing(v)) {
      int w = terminus(h);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count_;
}

LabeledGraph LabeledGraph::with_basepoint(int v) const {
  return LabeledGraph(vertex_count_, v, edges_);
}

LabeledGraph graph_of_word(const Word& w) {
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < w.size(); ++i)
    edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), w[i]});
  return LabeledGraph(static_cast<int>(w.size()) + 1, 0, std::move(edges));
}

LabeledGraph bouquet_of_subgroup(const std::vector<Word>& generators) {
  std::vector<GraphEdge> edges;
  int n = 1;
  for (const auto& g : generators) {
    if (g.empty()) throw Error("identity generator in subgroup");
    int prev = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int next = (i + 1 == g.size()) ? 0 : n++;
      edges.push_back({prev, next, g[i]});
      prev = next;
    }
  }
  return LabeledGraph(n, 0, std::move(edges));
}

namespace {

// Rebuilds g keeping representative vertices (vertex_rep[v] == v) in order,
// redirecting merged vertices to their representative (-1 = removed) and
// dropping flagged edges.
LabeledGraph compact(const LabeledGraph& g, const std::vector<int>& vertex_rep,
                     const std::vector<char>& dead_edges) {
  std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
  int n = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (vertex_rep[static_cast<std::size_t>(v)] == v) id[static_cast<std::size_t>(v)] = n++;
  auto map = [&](int v) {
    int r = vertex_rep[static_cast<std::size_t>(v)];
    if (r < 0) throw Error("internal: edge at removed vertex");
    return id[static_cast<std::size_t>(r)];
  };
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (dead_edges[i]) continue;
    const auto& e = g.edges()[i];
    edges.push_back({map(e.from), map(e.to), e.label});
  }
  return LabeledGraph(n, map(g.basepoint()), std::move(edges));
}

class Folder {
 public:
  explicit Folder(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1),
                           out_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  void add_edge(int u, int v, Letter l) {
    insert(find(u), l, v);
    insert(find(v), l.inverse(), u);
    drain();
  }

  const std::map<Letter, int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }

 private:
  void insert(int u, Letter l, int v) {
    auto& m = out_[static_cast<std::size_t>(u)];
    auto [it, fresh] = m.emplace(l, v);
    if (!fresh) pending_.emplace_back(it->second, v);
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
      parent_[static_cast<std::size_t>(b)] = a;
      size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
      auto moved = std::move(out_[static_cast<std::size_t>(b)]);
      out_[static_cast<std::size_t>(b)].clear();
      for (const auto& [l, t] : moved) insert(a, l, t);
    }
  }

  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::map<Letter, int>> out_;
  std::deque<std::pair<int, int>> pending_;
};

}  // namespace

LabeledGraph fold_step(const LabeledGraph& g, int e, int f) {
  if (e < 0 || f < 0 || e >= g.half_edge_count() || f >= g.half_edge_count())
    throw Error("fold_step: half-edge out of range");
  if (e == f) throw Error("fold_step: edges must be distinct");
  if (g.origin(e) != g.origin(f) || g.label(e) != g.label(f))
    throw Error("fold_step: edges must share origin and label");
  int keep = g.terminus(e), drop = g.terminus(f);
  if (keep > drop) std::swap(keep, drop);
  std::vector<int> rep(static_cast<std::size_t>(g.vertex_count()));
  std::iota(rep.begin(), rep.end(), 0);
  rep[static_cast<std::size_t>(drop)] = keep;
  std::vector<char> dead(static_cast<std::size_t>(g.edge_count()), 0);
  dead[static_cast<std::size_t>(f / 2)] = 1;
  return compact(g, rep, dead);
}

LabeledGraph fold(const LabeledGraph& g) {
  Folder folder(g.vertex_count());
  for (const auto& e : g.edges()) folder.add_edge(e.from, e.to, e.label);
  std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
  int n = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int r = folder.find(v);
    if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = n++;
  }
  std::vector<GraphEdge> edges;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (folder.find(v) != v) continue;
    for (const auto& [l, t] : folder.out(v)) {
      if (l.inverted()) continue;
      edges.push_back({id[static_cast<std::size_t>(v)], id[static_cast<std::size_t>(folder.find(t))], l});
    }
  }
  return LabeledGraph(n, id[static_cast<std::size_t>(folder.find(g.basepoint()))], std::move(edges));
}

LabeledGraph trim(const LabeledGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  std::vector<char> dead_edge(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<int> rep(static_cast<std::size_t>(g.vertex_count()));
  std::iota(rep.begin(), rep.end(), 0);
  std::vector<int> work;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (v != g.basepoint() && deg[static_cast<std::size_t>(v)] <= 1) work.push_back(v);
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    if (rep[static_cast<std::size_t>(v)] < 0) continue;
    rep[static_cast<std::size_t>(v)] = -1;
    for (int h : g.outgoing(v)) {
      if (dead_edge[static_cast<std::size_t>(h / 2)]) continue;
      dead_edge[static_cast<std::size_t>(h / 2)] = 1;
      int w = g.terminus(h);
      if (--deg[static_cast<std::size_t>(w)] <= 1 && w != g.basepoint() &&
          rep[static_cast<std::size_t>(w)] >= 0)
        work.push_back(w);
    }
  }
  return compact(g, rep, dead_edge);
}

LabeledGraph core(const LabeledGraph& g) { return trim(fold(g)); }

LabeledGraph core_by_folding_only(const LabeledGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == g.basepoint()) continue;
    bool ok = false;
    const auto& hs = g.outgoing(v);
    for (std::size_t i = 0; i < hs.size() && !ok; ++i)
      for (std::size_t j = i + 1; j < hs.size() && !ok; ++j)
        ok = g.label(hs[i]) != g.label(hs[j]);
    if (!ok)
      throw Error("core_by_folding_only: vertex " + std::to_string(v) +
                  " lacks two incident edges with distinct labels");
  }
  auto f = fold(g);
  for (int v = 0; v < f.vertex_count(); ++v)
    if (v != f.basepoint() && f.degree(v) <= 1)
      throw Error("core_by_folding_only: folding left a vertex needing trimming");
  return f;
}

LabeledGraph subgroup_graph(const std::vector<Word>& generators) {
  return core(bouquet_of_subgroup(generators));
}

std::optional<int> trace_word(const LabeledGraph& g, const Word& w) {
  if (!g.is_folded()) throw Error("trace_word requires a folded graph");
  int v = g.basepoint();
  for (Letter l : w) {
    auto h = g.step(v, l);
    if (!h) return std::nullopt;
    v = g.terminus(*h);
  }
  return v;
}

bool contains_word(const LabeledGraph& g, const Word& w) {
  auto v = trace_word(g, w);
  return v && *v == g.basepoint();
}

namespace {

// BFS tree: parent half-edge per vertex (-1 for root / unreached).
std::vector<int> bfs_tree(const LabeledGraph& g, std::vector<Word>* words) {
  std::vector<int> via(static_cast<std::size_t>(g.vertex_count()), -2);
  std::vector<Word> w(static_cast<std::size_t>(g.vertex_count()));
  std::deque<int> q{g.basepoint()};
  via[static_cast<std::size_t>(g.basepoint())] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int h : g.outgoing(v)) {
      int t = g.terminus(h);
      if (via[static_cast<std::size_t>(t)] != -2) continue;
      via[static_cast<std::size_t>(t)] = h;
      w[static_cast<std::size_t>(t)] = w[static_cast<std::size_t>(v)] * Word(g.label(h));
      q.push_back(t);
    }
  }
  if (words) *words = std::move(w);
  return via;
}

}  // namespace

std::vector<Word> tree_words(const LabeledGraph& g) {
  std::vector<Word> w;
  bfs_tree(g, &w);
  return w;
}

std::vector<Word> pi1_basis(const LabeledGraph& g) {
  std::vector<Word> w;
  auto via = bfs_tree(g, &w);
  std::vector<Word> out;
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[static_cast<std::size_t>(i)];
    if (via[static_cast<std::size_t>(e.from)] == -2) continue;
    if (via[static_cast<std::size_t>(e.to)] == 2 * i || via[static_cast<std::size_t>(e.from)] == 2 * i + 1)
      continue;
    out.push_back(w[static_cast<std::size_t>(e.from)] * Word(e.label) *
                  w[static_cast<std::size_t>(e.to)].inverse());
  }
  return out;
}

std::optional<GraphMorphism> unique_morphism(const LabeledGraph& src, const LabeledGraph& dst) {
  if (!src.is_folded() || !dst.is_folded())
    throw Error("unique_morphism requires folded graphs");
  GraphMorphism m;
  m.vertex_map.assign(static_cast<std::size_t>(src.vertex_count()), -1);
  m.half_edge_map.assign(static_cast<std::size_t>(src.half_edge_count()), -1);
  m.target_vertices = dst.vertex_count();
  m.target_half_edges = dst.half_edge_count();
  std::deque<int> q{src.basepoint()};
  m.vertex_map[static_cast<std::size_t>(src.basepoint())] = dst.basepoint();
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    int image = m.vertex_map[static_cast<std::size_t>(v)];
    for (int h : src.outgoing(v)) {
      auto d = dst.step(image, src.label(h));
      if (!d) return std::nullopt;
      m.half_edge_map[static_cast<std::size_t>(h)] = *d;
      int t = src.terminus(h);
      int& mt = m.vertex_map[static_cast<std::size_t>(t)];
      if (mt < 0) {
        mt = dst.terminus(*d);
        q.push_back(t);
      } else if (mt != dst.terminus(*d)) {
        return std::nullopt;
      }
    }
  }
  for (int v : m.vertex_map)
    if (v < 0) throw Error("unique_morphism requires a connected source graph");
  return m;
}

bool is_surjective(const GraphMorphism& m) {
  std::vector<char> hv(static_cast<std::size_t>(m.target_vertices), 0);
  std::vector<char> he(static_cast<std::size_t>(m.target_half_edges), 0);
  for (int v : m.vertex_map) hv[static_cast<std::size_t>(v)] = 1;
  for (int h : m.half_edge_map) he[static_cast<std::size_t>(h)] = 1;
  return std::all_of(hv.begin(), hv.end(), [](char c) { return c; }) &&
         std::all_of(he.begin(), he.end(), [](char c) { return c; });
}

WhiteheadSet whitehead_graph(const LabeledGraph& g) {
  WhiteheadSet out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& hs = g.outgoing(v);
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j) {
        Letter a = g.label(hs[i]).inverse(), b = g.label(hs[j]).inverse();
        if (a != b) out.emplace(a, b);
      }
  }
  return out;
}

LabeledGraph attach_conjugator(const LabeledGraph& g, const Word& u) {
  if (u.empty()) return g;
  int n = g.vertex_count();
  std::vector<GraphEdge> edges = g.edges();
  int first_new = n;
  int prev = first_new;
  int next_id = n + 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    int next = (i + 1 == u.size()) ? g.basepoint() : next_id++;
    edges.push_back({prev, next, u[i]});
    prev = next;
  }
  return LabeledGraph(next_id, first_new, std::move(edges));
}

CanonicalForm canonical_form(const LabeledGraph& g) {
  CanonicalForm c;
  c.vertex_map.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> order;
  std::deque<int> q{g.basepoint()};
  c.vertex_map[static_cast<std::size_t>(g.basepoint())] = 0;
  int n = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    auto hs = g.outgoing(v);
    std::stable_sort(hs.begin(), hs.end(),
                     [&](int a, int b) { return name_less(g.label(a), g.label(b)); });
    for (int h : hs) {
      int t = g.terminus(h);
      if (c.vertex_map[static_cast<std::size_t>(t)] < 0) {
        c.vertex_map[static_cast<std::size_t>(t)] = n++;
        q.push_back(t);
      }
    }
  }
  if (n != g.vertex_count()) throw Error("canonical_form requires a connected graph");
  std::vector<int> idx(static_cast<std::size_t>(g.edge_count()));
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) {
    const auto& e = g.edges()[static_cast<std::size_t>(i)];
    return std::tuple{c.vertex_map[static_cast<std::size_t>(e.from)], e.label,
                      c.vertex_map[static_cast<std::size_t>(e.to)]};
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    auto [fa, la, ta] = key(a);
    auto [fb, lb, tb] = key(b);
    if (fa != fb) return fa < fb;
    if (la != lb) return name_less(la, lb);
    return ta < tb;
  });
  std::vector<GraphEdge> edges;
  c.edge_map.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto [f, l, t] = key(idx[k]);
    edges.push_back({f, t, l});
    c.edge_map[static_cast<std::size_t>(idx[k])] = static_cast<int>(k);
  }
  c.graph = LabeledGraph(n, 0, std::move(edges));
  return c;
}

bool identical(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.basepoint() != b.basepoint() ||
      a.edge_count() != b.edge_count())
    return false;
  for (int i = 0; i < a.edge_count(); ++i) {
    const auto& x = a.edges()[static_cast<std::size_t>(i)];
    const auto& y = b.edges()[static_cast<std::size_t>(i)];
    if (x.from != y.from || x.to != y.to || x.label != y.label) return false;
  }
  return true;
}

bool same_pointed_graph(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return identical(canonical_form(a).graph, canonical_form(b).graph);
}

std::string canonical_key(const LabeledGraph& g) {
  auto c = canonical_form(g).graph;
  std::string out = std::to_string(c.vertex_count());
  for (const auto& e : c.edges()) {
    out += ';';
    out += std::to_string(e.from);
    out += ',';
    out += e.label.symbol().name();
    out += ',';
    out += std::to_string(e.to);
  }
  return out;
}

int betti_number(const LabeledGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

std::string to_dot(const LabeledGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    os << "  v" << v << (v == g.basepoint() ? " [shape=doublecircle]" : "") << ";\n";
  for (const auto& e : g.edges())
    os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.label.symbol().name() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace fgr
