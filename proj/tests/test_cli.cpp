#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fgr/cli.hpp"
#include "fgr/io.hpp"
#include "support.hpp"

using namespace fgr;
using namespace fgr::testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("text parsers") {
  CHECK(parse_word_list("b,abA") == std::vector<Word>{W("b"), W("abA")});
  CHECK(parse_word_list("u,v;~u") == std::vector<Word>{W("u,v"), W("~u")});
  CHECK_THROWS_AS(parse_word_list("a,,b"), ParseError);

  CHECK(parse_images("a=~u,b=uv") == images_of({{"a", "~u"}, {"b", "uv"}}));
  CHECK(parse_images("a=~u;b=u,v") == images_of({{"a", "~u"}, {"b", "u,v"}}));
  CHECK_THROWS_AS(parse_images("a=u,a=v"), ParseError);
  CHECK_THROWS_AS(parse_images("A=u"), ParseError);
  CHECK_THROWS_AS(parse_images("u"), ParseError);

  auto o = parse_object_text("x,y|x.~y,~x.y");
  CHECK(o.generators() == letters_named({"x", "y"}));
  CHECK(o.restrictions() == WhiteheadSet{parse_pair("x.~y"), parse_pair("~x.y")});
  CHECK(parse_object_text("a,b|").restrictions().empty());
  CHECK_THROWS_AS(parse_object_text("~x,y"), ParseError);
}

TEST_CASE("JSON readers reject malformed input") {
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"vertices":[0],"basepoint":3,"edges":[]})")),
                  ParseError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"vertices":[0,0],"basepoint":0,"edges":[]})")),
                  ParseError);
  CHECK_THROWS_AS(object_from_json(parse_json(R"({"generators":["x"],"restrictions":[["x"]]})")),
                  ParseError);
  auto g = graph_from_json(parse_json(R"({"subgroup":["b","abA"]})"));
  CHECK(g.vertex_count() == 2);
  auto o = object_from_json(parse_json(R"({"generators":["x","y"],"restrictions":["x.~y",["~x","y"]]})"));
  CHECK(o.restrictions().size() == 2);
  CHECK(images_from_json(parse_json(R"({"images":{"a":"~u"}})")) == images_of({{"a", "~u"}}));
}

TEST_CASE("property: graph JSON round-trips to the same canonical form") {
  Rng rng(71);
  auto gens = letters_named({"a", "b", "c"});
  for (int i = 0; i < 300; ++i) {
    auto g = core(random_graph(rng, gens, 1 + static_cast<int>(rng() % 6), static_cast<int>(rng() % 4)));
    Json j = graph_to_json(g);
    auto back = graph_from_json(parse_json(j.dump()));
    CHECK(canonical_key(back) == canonical_key(g));
    CHECK(graph_to_json(back) == j);
  }
}

TEST_CASE("problem JSON round-trips") {
  for (const auto& p : counterexample_roots()) {
    Json j = problem_to_json(p);
    auto q = problem_from_json(parse_json(j.dump()));
    CHECK(q.object == p.object);
    CHECK(canonical_key(q.gamma) == canonical_key(p.gamma));
    CHECK(canonical_key(q.delta) == canonical_key(p.delta));
    CHECK(problem_to_json(q) == j);
  }
}

TEST_CASE("cli examples") {
  auto c = run({"core", "--subgroup", "b,abA"});
  CHECK(c.code == 0);
  auto j = parse_json(c.out);
  CHECK(j.at("vertices").size() == 2);
  CHECK(j.at("edges").size() == 3);

  auto a = run({"apply", "--images", "a=~u,b=uv", "--word", "bbabA"});
  CHECK(a.code == 0);
  CHECK(a.out == "uvuvvu\n");

  auto v = run({"verify-counterexample"});
  CHECK(v.code == 0);
  CHECK(v.out.find("Positive") != std::string::npos);

  auto p = run({"primitive", "--word", "aab"});
  CHECK(p.code == 0);
  CHECK(p.out == "true\n");

  auto r = run({"rewrite", "--word", "bbabA", "--subgroup", "b,abA"});
  CHECK(r.code == 0);
  CHECK(r.out == "ααβ\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run({"solve", "--subgroup", "aa", "--delta", "a,b"}).code == 1);
  CHECK(run({"solve", "--subgroup", "xyXY", "--delta", "x,y", "--budget", "0"}).code == 2);
  CHECK(run({"stencil-classes", "--word", "xyXY", "--budget", "1"}).code == 2);
  CHECK(run({"stencil-classes", "--word", "xyXY"}).code == 0);
  CHECK(run({"rewrite", "--word", "a", "--subgroup", "b,abA"}).code == 1);

  auto bad_flag = run({"core", "--nonsense"});
  CHECK(bad_flag.code == 64);
  auto bad_word = run({"core", "--subgroup", "a!"});
  CHECK(bad_word.code == 64);
  CHECK(bad_word.err.find("error:") != std::string::npos);
  CHECK(run({"solve", "--picker", "best", "--subgroup", "a", "--delta", "a"}).code == 64);
  CHECK(run({}).code == 64);

  auto domain = run({"apply", "--images", "x=a,y=a", "--word", "xy", "--object", "x,y|x.y"});
  CHECK(domain.code == 65);
  CHECK(domain.err.find("not a morphism") != std::string::npos);
  CHECK(run({"primitive", "--word", "abc"}).code == 65);
}

TEST_CASE("cli JSON output") {
  auto s = run({"solve", "--subgroup", "xyXY", "--delta", "x,y", "--object", "x,y|x.~y,~x.y,~y.~x,x.~x",
                "--json", "-"});
  CHECK(s.code == 0);
  auto j = parse_json(s.out);
  CHECK(j.at("verdict") == "Positive");
  CHECK(j.at("nodes").at(0).at("label") == "P");

  std::string path = "fgr_cli_test_problem.json";
  {
    std::ofstream f(path);
    f << problem_to_json(counterexample_roots().at(4)).dump();
  }
  auto f = run({"solve", path, "--picker", "paper", "--json", "-"});
  CHECK(f.code == 0);
  CHECK(parse_json(f.out).at("verdict") == "Positive");
  std::remove(path.c_str());

  auto e = run({"stencil-classes", "--word", "xyXY", "--object", "x,y|x.~y,~x.y,~y.~x,x.~x", "--json", "-"});
  CHECK(parse_json(e.out).at("classes").size() == 2);

  // deterministic output
  CHECK(run({"verify-counterexample", "--json", "-"}).out ==
        run({"verify-counterexample", "--json", "-"}).out);
}
