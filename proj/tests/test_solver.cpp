#include "doctest.h"
#include "fgr/coords.hpp"
#include "fgr/solver.hpp"
#include "support.hpp"

#include <set>

using namespace fgr;
using namespace fgr::testing;

namespace {

FgrObject object(std::vector<std::string> gens, std::vector<std::string> pairs) {
  WhiteheadSet n;
  for (const auto& p : pairs) n.insert(parse_pair(p));
  return FgrObject(letters_named(gens), n);
}

SurjectivityProblem commutator() {
  return make_problem(subgroup_graph({W("xyXY")}), subgroup_graph({W("x"), W("y")}),
                      object({"x", "y"}, {"x.~y", "~x.y", "~y.~x", "x.~x"}));
}

SurjectivityProblem root(int i) { return counterexample_roots().at(static_cast<std::size_t>(i - 1)); }

SolveOptions paper_options() {
  SolveOptions o;
  o.picker = paper_picker();
  return o;
}

std::set<std::string> labels_with(const CaseTree& t, Status s) {
  std::set<std::string> out;
  for (const auto& n : t.nodes)
    if (n.status == s) out.insert(n.label);
  return out;
}

// Surjectivity of Core F_phi(Gamma) -> Core F_phi(Delta), from scratch.
bool image_surjective(const SurjectivityProblem& p, const Images& phi) {
  auto g = subgroup_graph([&] {
    std::vector<Word> ws;
    for (const auto& w : pi1_basis(p.gamma)) ws.push_back(substitute(w, phi));
    return ws;
  }());
  std::vector<Word> ds;
  for (const auto& w : pi1_basis(p.delta)) ds.push_back(substitute(w, phi));
  auto d = subgroup_graph(ds);
  auto m = unique_morphism(g, d);
  return m && is_surjective(*m);
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify(root(1)).status == Status::StencilPositive);
  auto c5 = classify(root(5));
  CHECK(c5.status == Status::Ambiguous);
  CHECK(c5.ambiguous == WhiteheadSet{parse_pair("u.~u"), parse_pair("v.~v")});
  auto neg = make_problem(subgroup_graph({W("a")}), subgroup_graph({W("a"), W("b")}),
                          object({"a", "b"}, {"a.~a", "a.b"}));
  CHECK(classify(neg).status == Status::Negative);
}

TEST_CASE("make_problem checks its inputs") {
  CHECK_THROWS_AS(make_problem(subgroup_graph({W("aa")}), subgroup_graph({W("ab")}),
                               object({"a", "b"}, {})),
                  Error);
  CHECK_THROWS_AS(make_problem(subgroup_graph({W("ac")}), subgroup_graph({W("a"), W("c")}),
                               object({"a", "b"}, {})),
                  Error);
  // a hair at the basepoint is moved onto the cycle
  auto p = make_problem(subgroup_graph({W("abbA")}), subgroup_graph({W("a"), W("b")}),
                        object({"a", "b"}, {}));
  CHECK(is_cyclically_reduced(pi1_basis(p.gamma).at(0)));
  CHECK(p.gamma.edge_count() == 2);
}

TEST_CASE("split") {
  auto kids = split(commutator(), L("x"), L("y"));
  std::vector<int> kinds;
  for (const auto& k : kids) kinds.push_back(k.psi.kind);
  CHECK(kinds == std::vector<int>{1, 2, 3, 4});

  auto five = split(root(5), L("u"), L("~u"));
  REQUIRE(five.size() == 2);
  CHECK(five[0].psi.kind == 1);
  CHECK(five[1].psi.kind == 2);
  Letter t = *five[1].psi.fresh;
  CHECK(five[1].psi.images().at(L("u")) == Word{t.inverse(), L("u"), t});

  CHECK_THROWS_AS(split(commutator(), L("x"), L("~y")), Error);
  CHECK_THROWS_AS(split(root(1), L("u"), L("~u")), Error);
}

TEST_CASE("kind-1 children keep the graphs and grow the restrictions") {
  auto p = commutator();
  auto k1 = split(p, L("x"), L("y")).at(0);
  CHECK(pair_key(k1.problem) == pair_key(p));
  CHECK(k1.problem.object.restrictions().size() == p.object.restrictions().size() + 1);

  auto r2 = root(2);
  auto [a, b] = triangle_children(r2, L("u"), L("~u"), L("~y"));
  for (const auto* c : {&a, &b}) {
    CHECK(c->psi.kind == 1);
    CHECK(pair_key(c->problem) == pair_key(r2));
    CHECK(c->problem.object.restrictions().size() == r2.object.restrictions().size() + 1);
  }
  CHECK(a.problem.object.restricted(L("~y"), L("~u")));
  CHECK(b.problem.object.restricted(L("~y"), L("u")));
  // pivot must be restricted and the third letter free on both sides
  CHECK_THROWS_AS(triangle_children(r2, L("u"), L("~y"), L("y")), Error);
}

TEST_CASE("find_witness") {
  auto r2 = root(2);
  auto [a, b] = triangle_children(r2, L("u"), L("~u"), L("~y"));
  auto eq = find_witness(a.problem, b.problem, {1, 0, true});
  REQUIRE(eq);
  CHECK(eq->at(L("u")) == W("U"));
  CHECK(eq->at(L("y")) == W("y"));

  auto t = verify_counterexample(paper_options());
  const auto* n614 = t.find("6.1.4");
  REQUIRE(n614);
  auto c = find_witness(root(2), n614->problem);
  REQUIRE(c);
  CHECK(std::count_if(c->begin(), c->end(), [](const auto& kv) { return kv.second.size() > 1; }) ==
        1);
  // the witness really maps problem 2 onto 6.1.4 up to conjugation
  auto img = core_functor_image(*c, root(2).gamma);
  auto img_d = core_functor_image(*c, root(2).delta);
  auto mapped = normalize({img, img_d, n614->problem.object});
  CHECK(conjugacy_keys(n614->problem).count(pair_key(mapped)));

  // different Betti numbers
  CHECK_FALSE(find_witness(root(1), commutator()));
}

TEST_CASE("commutator example") {
  auto t = solve(commutator(), paper_options());
  CHECK(t.verdict == Verdict::Positive);
  const auto* p = t.find("P");
  REQUIRE(p);
  CHECK(p->children.size() == 4);
  for (int c : p->children) CHECK(t.nodes[static_cast<std::size_t>(c)].via->kind != 5);
  CHECK(t.find("P.1")->status == Status::StencilPositive);
  CHECK(t.find("P.2")->status == Status::StencilPositive);
  const auto* p3 = t.find("P.3");
  CHECK(p3->status == Status::BackEdge);
  CHECK(t.nodes[static_cast<std::size_t>(p3->link)].label == "P");
  const auto* p4 = t.find("P.4");
  CHECK(p4->status == Status::Equivalent);
  CHECK(t.nodes[static_cast<std::size_t>(p4->link)].label == "P.3");
  CHECK(p4->witness == images_of({{"x", "y"}, {"y", "x"}}));

  auto report = render_report(t);
  std::vector<std::string> lines;
  for (std::size_t a = 0, b; (b = report.find('\n', a)) != std::string::npos; a = b + 1)
    lines.push_back(report.substr(a, b - a));
  REQUIRE(lines.size() == 7);
  for (int i = 0; i < 5; ++i) CHECK(lines[static_cast<std::size_t>(i)].find_first_not_of(' ') ==
                                    lines[static_cast<std::size_t>(i)].find('P'));
  CHECK(report.find("overall: Positive") != std::string::npos);
}

TEST_CASE("case 5 resolves with four stencil leaves") {
  Solver s(paper_options());
  CHECK(s.solve_root(root(5), "5") == Verdict::Positive);
  auto t = s.tree();
  CHECK(labels_with(t, Status::StencilPositive) ==
        std::set<std::string>{"5.1.1", "5.1.2", "5.2.1", "5.2.2"});
}

TEST_CASE("counterexample tree with the scripted picker") {
  auto t = verify_counterexample(paper_options());
  CHECK(t.verdict == Verdict::Positive);
  CHECK(labels_with(t, Status::StencilPositive) ==
        std::set<std::string>{"1", "2.1.1", "2.1.2", "3.1.1", "3.1.2", "4.1", "4.2", "5.1.1",
                              "5.1.2", "5.2.1", "5.2.2", "6.1.1", "6.1.2", "7.1.1", "7.1.2",
                              "8.1", "8.2"});
  std::set<std::string> links;
  for (const auto& n : t.nodes)
    if (n.link >= 0)
      links.insert(to_string(n.status) + " " + n.label + "->" +
                   t.nodes[static_cast<std::size_t>(n.link)].label);
  CHECK(links == std::set<std::string>{
                     "contained 2.1.3->5", "contained 3.1.4->5", "contained 4.3->3",
                     "contained 4.4->2", "contained 6.1.3->5", "contained 6.1.4->2",
                     "contained 7.1.3->3", "contained 7.1.4->5", "contained 8.3->7",
                     "contained 8.4->6", "contained 8.5->5", "back-edge 2.1.4->2.1",
                     "back-edge 3.1.3->3.1", "equivalent 2.1'->2.1", "equivalent 3.1'->3.1",
                     "equivalent 6.1'->6.1", "equivalent 7.1'->7.1"});
}

TEST_CASE("the lex picker also resolves the counterexample") {
  auto t = verify_counterexample({});
  CHECK(t.verdict == Verdict::Positive);
  CHECK(labels_with(t, Status::Negative).empty());
}

TEST_CASE("parallel witness search gives the same tree") {
  auto opts = paper_options();
  auto serial = render_report(verify_counterexample(opts));
  opts.parallel = true;
  CHECK(render_report(verify_counterexample(opts)) == serial);
}

TEST_CASE("negative roots") {
  auto p = make_problem(subgroup_graph({W("aa")}), subgroup_graph({W("a"), W("b")}),
                        object({"a", "b"}, {}));
  auto t = solve(p);
  CHECK(t.verdict == Verdict::Negative);
  CHECK(t.nodes.size() == 1);
  // the identity into the free group on the same letters is a non-surjective instance
  auto id = identity_images(p.object.generators());
  CHECK_FALSE(validate_into_free(p.object, id));
  CHECK_FALSE(image_surjective(p, id));
}

TEST_CASE("a zero budget leaves the root inconclusive") {
  SolveOptions o;
  o.budget = 0;
  auto t = solve(commutator(), o);
  CHECK(t.verdict == Verdict::Inconclusive);
  CHECK(t.nodes.size() == 1);
  CHECK(t.nodes[0].status == Status::Inconclusive);
  CHECK(exit_code(t.verdict) == 2);
}

TEST_CASE("property: splits cover Hom") {
  Rng rng(41);
  auto target = letters_named({"a", "b", "c"});
  auto t = verify_counterexample(paper_options());
  int checked = 0;
  for (const auto& n : t.nodes) {
    if (!n.decision) continue;
    const auto& obj = n.problem.object;
    for (int i = 0; i < 40; ++i) {
      auto phi = random_morphism(rng, obj, target, 3);
      if (!phi) continue;
      ++checked;
      if (n.decision->triangle) {
        // kind-1 children: phi factors iff it is a morphism from the child object
        int through = 0;
        for (int c : n.children)
          through += !validate_into_free(t.nodes[static_cast<std::size_t>(c)].problem.object, *phi);
        CHECK(through >= 1);
        continue;
      }
      Letter x = n.decision->x, y = n.decision->y;
      int kind = cancellation_split(image_of(x, *phi), image_of(y, *phi)).kind;
      int matches = 0;
      for (int c : n.children) matches += t.nodes[static_cast<std::size_t>(c)].via->kind == kind;
      CHECK(matches == 1);
      // the kind-1 child admits phi itself exactly when the cancellation is trivial
      for (int c : n.children) {
        const auto& child = t.nodes[static_cast<std::size_t>(c)];
        if (child.via->kind == 1)
          CHECK((kind == 1) == !validate_into_free(child.problem.object, *phi));
      }
      auto f = classify_and_factor(obj, *phi, x, y);
      CHECK_FALSE(validate_into_free(f.psi.target(), f.residual));
      for (Letter g : obj.generators())
        CHECK(substitute(f.psi.images().at(g), f.residual) == phi->at(g));
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("property: stencil leaves are stencil spaces") {
  Rng rng(42);
  auto target = letters_named({"a", "b", "c"});
  auto t = verify_counterexample(paper_options());
  for (const auto& n : t.nodes) {
    if (n.status != Status::StencilPositive) continue;
    auto w = whitehead_graph(n.problem.gamma);
    for (const auto& p : w) CHECK(n.problem.object.restrictions().count(p));
    int done = 0;
    for (int i = 0; i < 100; ++i) {
      auto phi = random_morphism(rng, n.problem.object, target, 3);
      if (!phi) continue;
      ++done;
      CHECK(is_stencil(*phi, n.problem.gamma));
      auto img = apply_functor(*phi, n.problem.gamma);
      CHECK(img.is_folded());
      CHECK(core(img).edge_count() == img.edge_count());
    }
    CHECK(done > 50);
  }
}

TEST_CASE("property: positive verdicts survive random sampling") {
  Rng rng(43);
  auto target = letters_named({"a", "b", "c"});
  std::vector<SurjectivityProblem> positive{commutator()};
  auto roots = counterexample_roots();
  positive.insert(positive.end(), roots.begin(), roots.end());
  positive.push_back(make_problem(subgroup_graph({W("bbabA")}), subgroup_graph({W("b"), W("abA")}),
                                  object({"a", "b"}, {})));
  for (const auto& p : positive) {
    REQUIRE(solve(p).verdict == Verdict::Positive);
    int sampled = 0;
    for (int i = 0; i < 200; ++i) {
      auto phi = random_morphism(rng, p.object, target, 4);
      if (!phi) continue;
      ++sampled;
      CHECK(image_surjective(p, *phi));
    }
    CHECK(sampled > 100);
  }
}
