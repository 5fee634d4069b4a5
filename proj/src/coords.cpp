#include "fgr/coords.hpp"

namespace fgr {

namespace {

Word rotate(const Word& w, std::size_t j) {
  return w.subword(j, w.size() - j) * w.subword(0, j);
}

Images parse_map(std::initializer_list<std::pair<const char*, const char*>> entries) {
  Images m;
  for (auto [k, v] : entries) m[Letter::named(k)] = parse_word(v);
  return m;
}

FgrObject object_of(std::initializer_list<const char*> gens,
                    std::initializer_list<const char*> pairs) {
  std::vector<Letter> g;
  for (const char* n : gens) g.push_back(Letter::named(n));
  WhiteheadSet n;
  for (const char* p : pairs) n.insert(parse_pair(p));
  return FgrObject(std::move(g), std::move(n));
}

ChangeOfCoordinates build_table() {
  ChangeOfCoordinates c;
  c.source = object_of({"α", "β"}, {});
  c.domain = object_of({"a", "b"}, {});
  c.sigma = parse_map({{"α", "b"}, {"β", "abA"}});
  auto row = [&](FgrObject target, const char* pa, const char* pb, const char* sa, const char* sb) {
    c.cases.push_back({std::move(target), parse_map({{"α", pa}, {"β", pb}}),
                       parse_map({{"a", sa}, {"b", sb}})});
  };
  row(object_of({"u"}, {"u.~u"}), "u", "u", "u", "u");
  row(object_of({"y", "u"}, {"y.~u", "u.y", "u.~u"}), "u", "yuY", "y", "u");
  row(object_of({"x", "u"}, {"x.~u", "u.x", "u.~u"}), "xuX", "u", "X", "xuX");
  row(object_of({"x", "u", "y"}, {"x.~u", "u.x", "u.~u", "y.~u", "u.y", "y.x"}), "xuX", "yuY",
      "yX", "xuX");
  row(object_of({"v", "u"}, {"v.~u", "u.~v"}), "uv", "vu", "U", "uv");
  row(object_of({"v", "u", "y"}, {"v.~u", "u.~v", "y.~v", "u.y"}), "uv", "yvuY", "yv", "uv");
  row(object_of({"v", "u", "x"}, {"v.~u", "u.~v", "x.~u", "v.x"}), "xuvX", "vu", "UX", "xuvX");
  row(object_of({"v", "u", "y", "x"}, {"v.~u", "u.~v", "x.~u", "v.x", "y.~v", "u.y"}), "xuvX",
      "yvuY", "yUX", "xuvX");
  check_coordinates(c, counterexample_k());
  return c;
}

// Triviality pattern (xbar != 1, ybar != 1, vbar != 1) of each row, read off
// from the row's sigma_i and psi_i.
int row_of(bool x, bool y, bool v) {
  static const int rows[2][2][2] = {{{1, 5}, {2, 6}}, {{3, 7}, {4, 8}}};
  return rows[x][y][v];
}

}  // namespace

ConjugacyDecomposition conjugacy_decompose(const Word& p, const Word& w) {
  if (p.empty()) throw Error("conjugacy_decompose: p is trivial");
  Word q = w * p * w.inverse();
  auto cp = cyclic_reduce(p);
  auto cq = cyclic_reduce(q);
  const Word& c1 = cp.core;
  const Word& c2 = cq.core;
  if (c1.size() != c2.size()) throw Error("internal: conjugate cores differ in length");
  for (std::size_t j = 1; j <= c1.size(); ++j) {
    if (rotate(c1, j % c1.size()) != c2) continue;
    return {cp.conjugator, cq.conjugator, c1.subword(0, j), c1.subword(j, c1.size() - j)};
  }
  throw Error("internal: cyclic cores are not rotations of each other");
}

void check_coordinates(const ChangeOfCoordinates& c, const std::vector<Word>& delta_generators) {
  std::vector<Word> sigma_words;
  for (Letter g : c.source.generators()) sigma_words.push_back(c.sigma.at(g));
  auto image = subgroup_graph(sigma_words);
  for (const auto& w : delta_generators)
    if (!contains_word(image, w))
      throw Error("coordinate change: " + to_string(w) + " is not in the image of sigma");
  for (std::size_t i = 0; i < c.cases.size(); ++i) {
    const auto& k = c.cases[i];
    std::string row = "row " + std::to_string(i + 1);
    if (auto v = validate({c.source, k.target, k.psi}))
      throw Error("coordinate change " + row + ": psi: " + to_string(*v));
    if (auto v = validate({c.domain, k.target, k.sigma}))
      throw Error("coordinate change " + row + ": sigma: " + to_string(*v));
    for (Letter g : c.source.generators())
      if (substitute(c.sigma.at(g), k.sigma) != k.psi.at(g))
        throw Error("coordinate change " + row + ": sigma_i after sigma differs from psi_i at " +
                    g.symbol().name());
  }
}

const ChangeOfCoordinates& eight_case_table() {
  static const ChangeOfCoordinates table = build_table();
  return table;
}

CaseSelection case_select(const Word& phi_a, const Word& phi_b) {
  if (phi_a.empty() || phi_b.empty()) throw Error("case_select: degenerate morphism");
  const auto& table = eight_case_table();
  CaseSelection s;
  s.decomposition = conjugacy_decompose(phi_b, phi_a);
  const auto& d = s.decomposition;
  s.index = row_of(!d.xbar.empty(), !d.ybar.empty(), !d.vbar.empty());
  const auto& row = table.cases[static_cast<std::size_t>(s.index - 1)];
  const std::pair<const char*, const Word*> assign[] = {
      {"u", &d.ubar}, {"v", &d.vbar}, {"x", &d.xbar}, {"y", &d.ybar}};
  for (auto [name, w] : assign) {
    Letter g = Letter::named(name);
    if (row.target.has_generator(g)) s.residual[g] = *w;
  }
  if (auto v = validate_into_free(row.target, s.residual))
    throw Error("case_select: no row factors phi exactly (row " + std::to_string(s.index) +
                " residual fails " + to_string(*v) + ")");
  Images phi{{Letter::named("a"), phi_a}, {Letter::named("b"), phi_b}};
  for (Letter g : table.source.generators())
    if (substitute(table.sigma.at(g), phi) != substitute(row.psi.at(g), s.residual))
      throw Error("internal: case " + std::to_string(s.index) + " does not recompose at " +
                  g.symbol().name());
  return s;
}

CaseSelection case_select_conjugated(const Word& phi_a, const Word& phi_b) {
  try {
    return case_select(phi_a, phi_b);
  } catch (const Error&) {
    if (phi_a.empty() || phi_b.empty()) throw;
  }
  Word g = cyclic_reduce(phi_b).conjugator.inverse();
  auto s = case_select(g * phi_a * g.inverse(), g * phi_b * g.inverse());
  s.conjugator = g;
  return s;
}

Word counterexample_h() { return parse_word("bbabA"); }

std::vector<Word> counterexample_k() { return {parse_word("b"), parse_word("abA")}; }

std::vector<SurjectivityProblem> counterexample_roots() {
  std::vector<SurjectivityProblem> out;
  for (const auto& k : eight_case_table().cases) {
    std::vector<Word> kw;
    for (const auto& w : counterexample_k()) kw.push_back(substitute(w, k.sigma));
    out.push_back(make_problem(subgroup_graph({substitute(counterexample_h(), k.sigma)}),
                               subgroup_graph(kw), k.target));
  }
  return out;
}

const std::vector<int>& counterexample_root_order() {
  static const std::vector<int> order{5, 2, 3, 4, 6, 7, 8, 1};
  return order;
}

CaseTree verify_counterexample(SolveOptions opts) {
  auto roots = counterexample_roots();
  Solver s(std::move(opts));
  for (int i : counterexample_root_order())
    s.solve_root(roots[static_cast<std::size_t>(i - 1)], std::to_string(i));
  return s.tree();
}

}  // namespace fgr
