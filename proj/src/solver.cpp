#include "fgr/solver.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace fgr {

namespace {

GraphMorphism inclusion(const SurjectivityProblem& p) {
  auto m = unique_morphism(p.gamma, p.delta);
  if (!m) throw Error("gamma does not map into delta");
  return *m;
}

void check_labels(const LabeledGraph& g, const FgrObject& o, const char* what) {
  for (Letter l : g.alphabet())
    if (!o.has_generator(l))
      throw Error(std::string(what) + " uses generator " + l.symbol().name() +
                  " outside the object");
}

// Cyclically reduced word read around a rank-1 core graph.
std::optional<Word> cycle_word(const LabeledGraph& g) {
  if (betti_number(g) != 1) return std::nullopt;
  return cyclic_reduce(pi1_basis(g).at(0)).core;
}

}  // namespace

SurjectivityProblem normalize(const SurjectivityProblem& p) {
  const auto& g = p.gamma;
  int v = g.basepoint();
  if (g.degree(v) != 1) return p;
  int h = g.outgoing(v)[0];
  for (;;) {
    int w = g.terminus(h);
    if (g.degree(w) != 2) {
      v = w;
      break;
    }
    const auto& out = g.outgoing(w);
    h = out[0] == (h ^ 1) ? out[1] : out[0];
  }
  auto m = inclusion(p);
  return {core(g.with_basepoint(v)),
          core(p.delta.with_basepoint(m.vertex_map[static_cast<std::size_t>(v)])), p.object};
}

SurjectivityProblem make_problem(const LabeledGraph& gamma, const LabeledGraph& delta,
                                 const FgrObject& object) {
  SurjectivityProblem p{core(gamma), core(delta), object};
  check_labels(p.gamma, object, "gamma");
  check_labels(p.delta, object, "delta");
  inclusion(p);
  return normalize(p);
}

std::string pair_key(const SurjectivityProblem& p) {
  return canonical_key(p.gamma) + "|" + canonical_key(p.delta);
}

std::set<std::string> conjugacy_keys(const SurjectivityProblem& p) {
  std::set<std::string> out;
  if (p.gamma.edge_count() == 0) {
    out.insert(pair_key(p));
    return out;
  }
  auto m = inclusion(p);
  for (int v = 0; v < p.gamma.vertex_count(); ++v) {
    if (p.gamma.degree(v) < 2) continue;
    out.insert(canonical_key(p.gamma.with_basepoint(v)) + "|" +
               canonical_key(p.delta.with_basepoint(m.vertex_map[static_cast<std::size_t>(v)])));
  }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Negative: return "negative";
    case Status::StencilPositive: return "stencil";
    case Status::Ambiguous: return "ambiguous";
    case Status::BackEdge: return "back-edge";
    case Status::Equivalent: return "equivalent";
    case Status::ContainedIn: return "contained";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

Classification classify(const SurjectivityProblem& p) {
  Classification c;
  if (!is_surjective(inclusion(p))) {
    c.status = Status::Negative;
    return c;
  }
  for (const auto& e : whitehead_graph(p.gamma))
    if (!p.object.restrictions().count(e)) c.ambiguous.insert(e);
  c.status = c.ambiguous.empty() ? Status::StencilPositive : Status::Ambiguous;
  return c;
}

namespace {

ChildProblem child_of(const SurjectivityProblem& p, FoldingMorphism psi) {
  SurjectivityProblem q{core_functor_image(psi.images(), p.gamma),
                        core_functor_image(psi.images(), p.delta), psi.target()};
  return {std::move(psi), normalize(q)};
}

}  // namespace

std::vector<ChildProblem> split(const SurjectivityProblem& p, Letter x, Letter y) {
  if (x == y) throw Error("cannot split at a degenerate pair");
  LetterPair e(x, y);
  if (p.object.restricted(x, y)) throw Error("pair " + to_string(e) + " is already restricted");
  if (!whitehead_graph(p.gamma).count(e))
    throw Error("pair " + to_string(e) + " is not in the Whitehead graph of gamma");
  std::vector<ChildProblem> out;
  for (int k : admissible_kinds(p.object, x, y))
    out.push_back(child_of(p, build_folding_morphism(p.object, x, y, k)));
  return out;
}

std::pair<ChildProblem, ChildProblem> triangle_children(const SurjectivityProblem& p, Letter x,
                                                        Letter y, Letter z) {
  auto t = triangle_split(p.object, x, y, z);
  return {child_of(p, std::move(t.first)), child_of(p, std::move(t.second))};
}

namespace {

class WitnessSearch {
 public:
  WitnessSearch(const SurjectivityProblem& from, const SurjectivityProblem& to,
                const WitnessOptions& opts)
      : from_(from), to_(to), opts_(opts), gens_(from.object.generators()) {
    int max_len = opts.bijection_only ? 1 : opts.max_len;
    std::vector<Word> frontier;
    for (Letter l : to.object.letters()) frontier.push_back(Word(l));
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
      std::vector<Word> next;
      for (const auto& w : frontier) {
        words_.push_back(w);
        if (len == max_len) continue;
        for (Letter l : to.object.letters()) {
          if (l == w.back().inverse()) continue;
          if (!to.object.restricted(w.back(), l.inverse())) continue;
          next.push_back(w * Word(l));
        }
      }
      frontier = std::move(next);
    }
    // pairs of N_from become checkable once their later generator is assigned
    checks_.resize(gens_.size());
    for (const auto& p : from.object.restrictions()) {
      std::size_t i = index_of(p.first()), j = index_of(p.second());
      checks_[std::max(i, j)].push_back(p);
    }
    from_word_ = cycle_word(from.gamma);
    to_word_ = cycle_word(to.gamma);
  }

  std::optional<Images> run() {
    if (opts_.bijection_only &&
        (gens_.size() != to_.object.generators().size() ||
         from_.object.restrictions().size() != to_.object.restrictions().size()))
      return std::nullopt;
    if (betti_number(to_.gamma) > betti_number(from_.gamma)) return std::nullopt;
    keys_ = conjugacy_keys(to_);
    if (to_word_) to_abelian_ = abelianize(*to_word_);
    if (assign(0)) return images_;
    return std::nullopt;
  }

 private:
  std::size_t index_of(Letter l) const {
    auto it = std::lower_bound(gens_.begin(), gens_.end(), l.generator(), LetterNameOrder{});
    return static_cast<std::size_t>(it - gens_.begin());
  }

  bool assign(std::size_t i) {
    if (i == gens_.size()) return matches();
    Letter g = gens_[i];
    for (const auto& w : words_) {
      if (opts_.bijection_only && used_.count(w[0].generator())) continue;
      bool is_long = w.size() > 1;
      if (is_long && long_images_ >= opts_.max_long_images) continue;
      images_[g] = w;
      if (!pairs_ok(i)) continue;
      if (opts_.bijection_only) used_.insert(w[0].generator());
      long_images_ += is_long;
      if (assign(i + 1)) return true;
      long_images_ -= is_long;
      if (opts_.bijection_only) used_.erase(w[0].generator());
    }
    images_.erase(g);
    return false;
  }

  bool pairs_ok(std::size_t i) const {
    for (const auto& p : checks_[i]) {
      Letter a = tau(image_of(p.first(), images_));
      Letter b = tau(image_of(p.second(), images_));
      if (a == b || !to_.object.restricted(a, b)) return false;
    }
    return true;
  }

  bool matches() const {
    if (opts_.bijection_only &&
        transport_pairs(from_.object.restrictions(), images_) != to_.object.restrictions())
      return false;
    if (from_word_ && to_word_) {
      Word c = cyclic_reduce(substitute(*from_word_, images_)).core;
      if (c.size() != to_word_->size()) return false;
      // the cycle may be read in either direction
      auto ab = abelianize(c);
      if (ab != to_abelian_) {
        for (auto& kv : ab) kv.second = -kv.second;
        if (ab != to_abelian_) return false;
      }
    }
    SurjectivityProblem r{core_functor_image(images_, from_.gamma),
                          core_functor_image(images_, from_.delta), to_.object};
    if (r.gamma.edge_count() != to_.gamma.edge_count() ||
        r.delta.edge_count() != to_.delta.edge_count())
      return false;
    return keys_.count(pair_key(normalize(r))) > 0;
  }

  const SurjectivityProblem& from_;
  const SurjectivityProblem& to_;
  WitnessOptions opts_;
  std::vector<Letter> gens_;
  std::vector<Word> words_;
  std::vector<std::vector<LetterPair>> checks_;
  std::optional<Word> from_word_, to_word_;
  std::map<Letter, long> to_abelian_;
  std::set<std::string> keys_;
  std::set<Letter> used_;
  int long_images_ = 0;
  Images images_;
};

}  // namespace

std::optional<Images> find_witness(const SurjectivityProblem& from, const SurjectivityProblem& to,
                                   const WitnessOptions& opts) {
  return WitnessSearch(from, to, opts).run();
}

std::string to_string(const SplitDecision& d) {
  if (d.triangle)
    return "triangle " + to_string(d.x) + "." + to_string(d.y) + " / " + to_string(d.z);
  return "split " + to_string(d.x) + "." + to_string(d.y);
}

SplitDecision lex_pick(const CaseNode& node) {
  auto amb = sorted_by_name(node.ambiguous);
  if (amb.empty()) throw Error("nothing to split at " + node.label);
  const auto& obj = node.problem.object;
  for (std::size_t i = 0; i < amb.size(); ++i)
    for (std::size_t j = i + 1; j < amb.size(); ++j)
      for (Letter z : {amb[i].first(), amb[i].second()}) {
        if (!amb[j].contains(z)) continue;
        Letter a = amb[i].other(z), b = amb[j].other(z);
        if (a != b && obj.restricted(a, b)) return {true, a, b, z};
      }
  Letter x = amb[0].first(), y = amb[0].second();
  if (name_less(y, x)) std::swap(x, y);
  return {false, x, y, {}};
}

namespace {

bool decision_applies(const CaseNode& node, const SplitDecision& d) {
  const auto& obj = node.problem.object;
  for (Letter l : {d.x, d.y})
    if (!obj.has_generator(l)) return false;
  if (!d.triangle) return d.x != d.y && node.ambiguous.count(LetterPair(d.x, d.y));
  if (!obj.has_generator(d.z) || d.z == d.x || d.z == d.y || d.x == d.y) return false;
  return obj.restricted(d.x, d.y) && !obj.restricted(d.z, d.x) && !obj.restricted(d.z, d.y);
}

SplitDecision pair_split(const char* x, const char* y) {
  return {false, parse_letter(x), parse_letter(y), {}};
}

SplitDecision pivot(const char* x, const char* y, const char* z) {
  return {true, parse_letter(x), parse_letter(y), parse_letter(z)};
}

}  // namespace

CasePicker scripted_picker(std::map<std::string, SplitDecision> script) {
  return [script = std::move(script)](const CaseNode& node) {
    auto it = script.find(node.label);
    if (it != script.end() && decision_applies(node, it->second)) return it->second;
    return lex_pick(node);
  };
}

CasePicker paper_picker() {
  return scripted_picker({
      {"P", pair_split("y", "x")},
      {"5", pair_split("u", "~u")},
      {"5.1", pair_split("v", "~v")},
      {"5.2", pair_split("v", "~v")},
      {"2", pivot("u", "~u", "~y")},
      {"2.1", pair_split("u", "~y")},
      {"3", pivot("~u", "u", "~x")},
      {"3.1", pair_split("~x", "~u")},
      {"4", pair_split("~x", "~y")},
      {"6", pivot("v", "~u", "~y")},
      {"6.1", pair_split("v", "~y")},
      {"7", pivot("~v", "u", "~x")},
      {"7.1", pair_split("~x", "~v")},
      {"8", pair_split("~x", "~y")},
  });
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "Positive";
    case Verdict::Negative: return "Negative";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Positive: return 0;
    case Verdict::Negative: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

const CaseNode* CaseTree::find(const std::string& label) const {
  for (const auto& n : nodes)
    if (n.label == label) return &n;
  return nullptr;
}

Solver::Solver(SolveOptions opts) : opts_(std::move(opts)) {
  if (!opts_.picker) opts_.picker = lex_pick;
}

int Solver::add_node(SurjectivityProblem p, const std::string& label, int parent,
                     std::optional<FoldingMorphism> via) {
  CaseNode n;
  n.id = static_cast<int>(nodes_.size());
  n.label = label;
  n.parent = parent;
  n.via = std::move(via);
  Entry e;
  e.keys = conjugacy_keys(p);
  e.key = pair_key(p);
  n.problem = std::move(p);
  nodes_.push_back(std::move(n));
  entries_.push_back(std::move(e));
  if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(nodes_.back().id);
  return nodes_.back().id;
}

Verdict Solver::solve_root(const SurjectivityProblem& root, const std::string& label) {
  int id = add_node(normalize(root), label, -1, std::nullopt);
  roots_.push_back(id);
  visit(id);
  verdicts_.push_back(subtree_verdict(id));
  return verdicts_.back();
}

void Solver::visit(int id) {
  auto at = [this](int i) -> CaseNode& { return nodes_[static_cast<std::size_t>(i)]; };
  if (processed_ >= opts_.budget) {
    at(id).status = Status::Inconclusive;
    close(id);
    return;
  }
  ++processed_;
  auto c = classify(at(id).problem);
  at(id).status = c.status;
  at(id).ambiguous = std::move(c.ambiguous);
  if (c.status != Status::Ambiguous || (at(id).parent >= 0 && try_link(id))) {
    close(id);
    return;
  }
  SplitDecision d = opts_.picker(at(id));
  at(id).decision = d;
  std::string prefix = at(id).label.empty() ? "" : at(id).label + ".";
  SurjectivityProblem p = at(id).problem;
  if (d.triangle) {
    auto [first, second] = triangle_children(p, d.x, d.y, d.z);
    add_node(std::move(first.problem), prefix + "1", id, std::move(first.psi));
    add_node(std::move(second.problem), prefix + "1'", id, std::move(second.psi));
  } else {
    for (auto& ch : split(p, d.x, d.y)) {
      std::string label = prefix + std::to_string(ch.psi.kind);
      add_node(std::move(ch.problem), label, id, std::move(ch.psi));
    }
  }
  auto kids = at(id).children;
  for (int k : kids) visit(k);
  close(id);
}

bool Solver::try_link(int id) {
  auto& node = nodes_[static_cast<std::size_t>(id)];
  const auto& key = entries_[static_cast<std::size_t>(id)].key;
  std::vector<int> ancestors;
  for (int a = node.parent; a >= 0; a = nodes_[static_cast<std::size_t>(a)].parent)
    ancestors.push_back(a);

  for (int a : ancestors) {
    const auto& an = nodes_[static_cast<std::size_t>(a)];
    if (an.problem.object == node.problem.object &&
        entries_[static_cast<std::size_t>(a)].keys.count(key)) {
      node.status = Status::BackEdge;
      node.link = a;
      node.witness = identity_images(node.problem.object.generators());
      return true;
    }
  }

  auto first_witness = [&](const std::vector<int>& cands,
                           const WitnessOptions& wo) -> std::pair<int, Images> {
    auto attempt = [&](int c) {
      return find_witness(nodes_[static_cast<std::size_t>(c)].problem, node.problem, wo);
    };
    if (!opts_.parallel) {
      for (int c : cands)
        if (auto w = attempt(c)) return {c, *w};
      return {-1, {}};
    }
    std::vector<std::future<std::optional<Images>>> fs;
    for (int c : cands) fs.push_back(std::async(std::launch::async, attempt, c));
    std::pair<int, Images> found{-1, {}};
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto w = fs[i].get();
      if (w && found.first < 0) found = {cands[i], *w};
    }
    return found;
  };

  std::vector<int> equiv;
  const auto& parent = nodes_[static_cast<std::size_t>(node.parent)];
  for (int s : parent.children)
    if (s != id && nodes_[static_cast<std::size_t>(s)].closed) equiv.push_back(s);
  equiv.insert(equiv.end(), ancestors.begin(), ancestors.end());
  for (const auto& n : nodes_)
    if (n.self_resolved && std::find(equiv.begin(), equiv.end(), n.id) == equiv.end())
      equiv.push_back(n.id);
  auto [e, ew] = first_witness(equiv, {1, 0, true});
  if (e >= 0) {
    node.status = Status::Equivalent;
    node.link = e;
    node.witness = std::move(ew);
    return true;
  }

  std::vector<int> contain;
  for (const auto& n : nodes_)
    if (n.self_resolved) contain.push_back(n.id);
  auto [c, cw] = first_witness(contain, {opts_.max_witness_len, opts_.max_long_images, false});
  if (c >= 0) {
    node.status = Status::ContainedIn;
    node.link = c;
    node.witness = std::move(cw);
    return true;
  }
  return false;
}

bool Solver::in_subtree(int node, int root) const {
  for (int a = node; a >= 0; a = nodes_[static_cast<std::size_t>(a)].parent)
    if (a == root) return true;
  return false;
}

void Solver::close(int id) {
  bool ok = true;
  std::vector<int> stack{id};
  while (!stack.empty() && ok) {
    const auto& n = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    switch (n.status) {
      case Status::Negative:
      case Status::Inconclusive:
        ok = false;
        break;
      case Status::BackEdge:
      case Status::Equivalent:
      case Status::ContainedIn:
        ok = in_subtree(n.link, id) || nodes_[static_cast<std::size_t>(n.link)].self_resolved;
        break;
      default:
        break;
    }
    for (int k : n.children) stack.push_back(k);
  }
  auto& node = nodes_[static_cast<std::size_t>(id)];
  node.closed = true;
  node.self_resolved = ok;
}

Verdict Solver::subtree_verdict(int root) const {
  bool inconclusive = false;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const auto& n = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (n.status == Status::Negative) return Verdict::Negative;
    if (n.status == Status::Inconclusive) inconclusive = true;
    for (int k : n.children) stack.push_back(k);
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Positive;
}

CaseTree Solver::tree() const {
  CaseTree t;
  t.nodes = nodes_;
  t.roots = roots_;
  t.root_verdicts = verdicts_;
  t.verdict = Verdict::Positive;
  for (Verdict v : verdicts_) {
    if (v == Verdict::Negative) t.verdict = Verdict::Negative;
    if (v == Verdict::Inconclusive && t.verdict == Verdict::Positive) t.verdict = v;
  }
  return t;
}

CaseTree solve(const SurjectivityProblem& root, const SolveOptions& opts, const std::string& label) {
  Solver s(opts);
  s.solve_root(root, label);
  return s.tree();
}

namespace {

std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (const auto& w : ws) {
    if (!out.empty()) out += ", ";
    out += to_string(w);
  }
  return out;
}

void render_node(const CaseTree& t, int id, int depth, std::ostringstream& os) {
  const auto& n = t.nodes[static_cast<std::size_t>(id)];
  os << std::string(static_cast<std::size_t>(2 * depth), ' ') << n.label << "  " << to_string(n.status);
  if (n.via) os << "  via kind " << n.via->kind << " at " << to_string(n.via->x) << "." << to_string(n.via->y);
  os << "  N=" << to_string(n.problem.object.restrictions());
  os << "  gamma=<" << join_words(pi1_basis(n.problem.gamma)) << ">";
  if (n.status == Status::Ambiguous && n.decision)
    os << "  W\\N=" << to_string(n.ambiguous) << "  " << to_string(*n.decision);
  if (n.link >= 0)
    os << "  -> " << t.nodes[static_cast<std::size_t>(n.link)].label << " [" << to_string(n.witness) << "]";
  os << "\n";
  for (int k : n.children) render_node(t, k, depth + 1, os);
}

}  // namespace

std::string render_report(const CaseTree& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.roots.size(); ++i) {
    render_node(t, t.roots[i], 0, os);
    if (i < t.root_verdicts.size()) os << "verdict " << t.nodes[static_cast<std::size_t>(t.roots[i])].label
                                       << ": " << to_string(t.root_verdicts[i]) << "\n";
  }
  os << "overall: " << to_string(t.verdict) << "\n";
  return os.str();
}

}  // namespace fgr
