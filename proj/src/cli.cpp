#include "fgr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fgr/analysis.hpp"
#include "fgr/coords.hpp"
#include "fgr/io.hpp"

namespace fgr {

namespace {

struct Inputs {
  std::string subgroup, delta, word, images, object, problem, json, picker;
  std::size_t budget = 20000;
  int max_witness_len = 2;
  int max_long_images = 1;
  bool parallel = false, dot = false, coc = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, a JSON file, or the text syntax.
std::optional<Json> json_argument(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg);
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_json(read_file(arg));
  return std::nullopt;
}

FgrObject object_argument(const std::string& arg) {
  if (auto j = json_argument(arg)) return object_from_json(*j);
  return parse_object_text(arg);
}

Images images_argument(const std::string& arg) {
  if (auto j = json_argument(arg)) return images_from_json(*j);
  return parse_images(arg);
}

FgrObject free_object_of(const std::vector<Word>& ws) {
  std::vector<Letter> gens;
  for (const auto& w : ws)
    for (Letter l : generators_of(w))
      if (std::find(gens.begin(), gens.end(), l) == gens.end()) gens.push_back(l);
  return FgrObject(std::move(gens), {});
}

CasePicker picker_named(const std::string& name) {
  if (name == "paper") return paper_picker();
  if (name == "lex") return lex_pick;
  throw ParseError("unknown picker '" + name + "' (expected paper or lex)");
}

std::vector<Word> required_words(const std::string& text, const char* flag) {
  if (text.empty()) throw ParseError(std::string(flag) + " is required");
  return parse_word_list(text);
}

Word required_word(const std::string& text) {
  if (text.empty()) throw ParseError("--word is required");
  try {
    return parse_word(text);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

class Runner {
 public:
  Runner(const Inputs& in, std::ostream& out) : in_(in), out_(out) {}

  // Writes the JSON document to the --json target; true if it replaced the text.
  bool emit_json(const Json& j) {
    if (in_.json.empty()) return false;
    if (in_.json == "-") {
      out_ << j.dump(2) << "\n";
      return true;
    }
    std::ofstream f(in_.json);
    if (!f) throw Error("cannot write " + in_.json);
    f << j.dump(2) << "\n";
    return false;
  }

  void graph_output(const LabeledGraph& g) {
    if (in_.dot) {
      out_ << to_dot(g);
      return;
    }
    Json j = graph_to_json(g);
    if (!emit_json(j)) out_ << j.dump() << "\n";
  }

  SolveOptions solve_options(const std::string& default_picker) const {
    SolveOptions o;
    o.budget = in_.budget;
    o.picker = picker_named(in_.picker.empty() ? default_picker : in_.picker);
    o.max_witness_len = in_.max_witness_len;
    o.max_long_images = in_.max_long_images;
    o.parallel = in_.parallel;
    return o;
  }

  int tree_output(const CaseTree& t) {
    if (!emit_json(case_tree_to_json(t))) out_ << render_report(t);
    return exit_code(t.verdict);
  }

  int core() {
    auto ws = required_words(in_.subgroup, "--subgroup");
    graph_output(subgroup_graph(ws));
    return 0;
  }

  int whitehead() {
    auto ws = required_words(in_.subgroup, "--subgroup");
    auto w = whitehead_graph(fgr::core(subgroup_graph(ws)));
    Json j = Json::array();
    for (const auto& p : sorted_by_name(w)) j.push_back(to_string(p));
    if (!emit_json(j)) out_ << to_string(w) << "\n";
    return 0;
  }

  int apply() {
    if (in_.images.empty()) throw ParseError("--images is required");
    Images phi = images_argument(in_.images);
    std::optional<FgrObject> obj;
    if (!in_.object.empty()) obj = object_argument(in_.object);
    std::optional<Word> w;
    std::vector<Word> ws;
    if (!in_.word.empty()) w = required_word(in_.word);
    else ws = required_words(in_.subgroup, "--word or --subgroup");
    if (obj)
      if (auto v = validate_into_free(*obj, phi))
        throw Error("not a morphism from " + to_string(*obj) + ": " + to_string(*v));
    if (w) {
      for (Letter l : generators_of(*w))
        if (!phi.count(l)) throw Error("no image for generator " + to_string(l));
      Word img = substitute(*w, phi);
      if (!emit_json(Json{{"word", to_string(*w)}, {"image", to_string(img)}}))
        out_ << to_string(img) << "\n";
      return 0;
    }
    auto g = subgroup_graph(ws);
    for (Letter l : g.alphabet())
      if (!phi.count(l)) throw Error("no image for generator " + to_string(l));
    graph_output(core_functor_image(phi, g));
    return 0;
  }

  int decompose() {
    if (in_.object.empty()) throw ParseError("--object is required");
    if (in_.images.empty()) throw ParseError("--images is required");
    FgrObject obj = object_argument(in_.object);
    Images phi = images_argument(in_.images);
    if (auto v = validate_into_free(obj, phi))
      throw Error("not a morphism from " + to_string(obj) + ": " + to_string(*v));
    auto d = fgr::decompose(obj, phi);
    if (emit_json(decomposition_to_json(d))) return 0;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      const auto& s = d.steps[i];
      out_ << "step " << i + 1 << ": kind " << s.psi.kind << " at " << to_string(s.psi.x) << "."
           << to_string(s.psi.y) << "  psi: " << to_string(s.psi.images()) << "\n";
    }
    out_ << "final object: " << to_string(d.final_object) << "\n";
    out_ << "residual: " << to_string(d.residual) << "\n";
    return 0;
  }

  int solve() {
    SurjectivityProblem p;
    if (!in_.problem.empty()) {
      p = problem_from_json(parse_json(read_file(in_.problem)));
    } else {
      auto g = required_words(in_.subgroup, "--subgroup (or a problem file)");
      auto d = required_words(in_.delta, "--delta");
      FgrObject obj;
      if (!in_.object.empty()) obj = object_argument(in_.object);
      else {
        auto all = g;
        all.insert(all.end(), d.begin(), d.end());
        obj = free_object_of(all);
      }
      p = make_problem(subgroup_graph(g), subgroup_graph(d), obj);
    }
    return tree_output(fgr::solve(p, solve_options("lex")));
  }

  int verify() {
    auto opts = solve_options("paper");
    if (in_.coc && in_.json != "-") {
      const auto& c = eight_case_table();
      out_ << "sigma: " << to_string(c.sigma) << "\n";
      for (std::size_t i = 0; i < c.cases.size(); ++i) {
        const auto& k = c.cases[i];
        out_ << "row " << i + 1 << ": " << to_string(k.target) << "  psi: " << to_string(k.psi)
             << "  sigma: " << to_string(k.sigma) << "\n";
      }
    }
    auto t = verify_counterexample(opts);
    if (in_.coc && !in_.json.empty()) {
      Json j = case_tree_to_json(t);
      j["coordinates"] = coordinates_to_json(eight_case_table());
      if (!emit_json(j)) out_ << render_report(t);
      return exit_code(t.verdict);
    }
    return tree_output(t);
  }

  int stencil_classes() {
    ExploreOptions eo;
    eo.budget = in_.budget;
    eo.picker = picker_named(in_.picker.empty() ? "lex" : in_.picker);
    StencilExploration e;
    if (in_.coc) {
      e = explore_counterexample_classes(eo);
    } else {
      std::vector<Word> ws;
      if (!in_.word.empty()) ws = {required_word(in_.word)};
      else ws = required_words(in_.subgroup, "--word or --subgroup");
      FgrObject obj = in_.object.empty() ? free_object_of(ws) : object_argument(in_.object);
      auto g = subgroup_graph(ws);
      e = explore_stencil_classes(g, obj, eo);
    }
    if (!emit_json(exploration_to_json(e))) {
      out_ << "classes: " << e.classes.size() << "\n";
      for (const auto& c : e.classes) {
        out_ << "  " << c.label << "  basis=<";
        auto b = pi1_basis(c.graph);
        for (std::size_t i = 0; i < b.size(); ++i) out_ << (i ? ", " : "") << to_string(b[i]);
        out_ << ">  " << to_string(c.object) << "  members:";
        for (const auto& m : c.members) out_ << " " << m;
        out_ << "\n";
      }
      out_ << "closed: " << (e.closed ? "true" : "false") << "\n";
    }
    return e.closed ? 0 : 2;
  }

  int primitive() {
    Word w = required_word(in_.word);
    bool p = is_primitive_rank2(w);
    if (!emit_json(Json{{"word", to_string(w)}, {"primitive", p}}))
      out_ << (p ? "true" : "false") << "\n";
    return 0;
  }

  int rewrite() {
    Word w = required_word(in_.word);
    auto basis = required_words(in_.subgroup, "--subgroup");
    auto r = rewrite_in_subgroup_basis(w, basis);
    if (!emit_json(Json{{"word", to_string(w)}, {"rewritten", r ? Json(to_string(*r)) : Json(nullptr)}}))
      out_ << (r ? to_string(*r) : "none") << "\n";
    return r ? 0 : 1;
  }

 private:
  const Inputs& in_;
  std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Inputs in;
  CLI::App app{"Free groups with restrictions: core graphs, morphisms and surjectivity problems",
               "fgr"};
  app.require_subcommand(1);

  auto json_opt = [&](CLI::App* c) {
    c->add_option("--json", in.json, "write the JSON document to a file ('-' for stdout)");
  };
  auto solver_opts = [&](CLI::App* c) {
    c->add_option("--budget", in.budget, "maximum number of classified nodes");
    c->add_option("--picker", in.picker, "split choice: paper or lex");
    c->add_option("--max-witness-len", in.max_witness_len, "longest image word in link witnesses");
    c->add_option("--max-long-images", in.max_long_images,
                  "how many witness images may be longer than one letter");
    c->add_flag("--parallel", in.parallel, "search link witnesses concurrently");
    json_opt(c);
  };

  auto* core = app.add_subcommand("core", "core graph of a subgroup");
  core->add_option("--subgroup", in.subgroup, "generators, e.g. \"b,abA\"")->required();
  core->add_flag("--dot", in.dot, "print DOT instead of JSON");
  json_opt(core);

  auto* wh = app.add_subcommand("whitehead", "Whitehead graph of a core graph");
  wh->add_option("--subgroup", in.subgroup, "generators")->required();
  json_opt(wh);

  auto* apply = app.add_subcommand("apply", "apply a homomorphism to a word or a core graph");
  apply->add_option("--images", in.images, "e.g. \"a=~u,b=uv\"")->required();
  apply->add_option("--word", in.word, "word to map");
  apply->add_option("--subgroup", in.subgroup, "subgroup whose core graph is mapped");
  apply->add_option("--object", in.object, "check the images form a morphism from this object");
  apply->add_flag("--dot", in.dot, "print DOT instead of JSON");
  json_opt(apply);

  auto* dec = app.add_subcommand("decompose", "factor a morphism into folding morphisms");
  dec->add_option("--object", in.object, "e.g. \"x,y|x.~y\"")->required();
  dec->add_option("--images", in.images, "morphism into a free group")->required();
  json_opt(dec);

  auto* solve = app.add_subcommand("solve", "solve a surjectivity problem");
  solve->add_option("problem", in.problem, "problem JSON file {gamma, delta, object}");
  solve->add_option("--subgroup", in.subgroup, "generators of Gamma's subgroup");
  solve->add_option("--delta", in.delta, "generators of Delta's subgroup");
  solve->add_option("--object", in.object, "object (default: free on the letters used)");
  solver_opts(solve);

  auto* verify = app.add_subcommand("verify-counterexample",
                                    "solve the eight coordinate cases for <bbabA> < <b, abA>");
  verify->add_flag("--coc", in.coc, "also print the change-of-coordinates table");
  solver_opts(verify);

  auto* sc = app.add_subcommand("stencil-classes", "maximal stencil classes of a subgroup graph");
  sc->add_option("--word", in.word, "cyclic word generating the subgroup");
  sc->add_option("--subgroup", in.subgroup, "generators, instead of --word");
  sc->add_option("--object", in.object, "object (default: free on the letters used)");
  sc->add_option("--budget", in.budget, "maximum number of classified nodes");
  sc->add_option("--picker", in.picker, "split choice: paper or lex");
  sc->add_flag("--coc", in.coc, "explore the eight counterexample roots");
  json_opt(sc);

  auto* prim = app.add_subcommand("primitive", "primitivity of a word over two generators");
  prim->add_option("--word", in.word, "word")->required();
  json_opt(prim);

  auto* rw = app.add_subcommand("rewrite", "express a word in a free basis of a subgroup");
  rw->add_option("--word", in.word, "word")->required();
  rw->add_option("--subgroup", in.subgroup, "basis words")->required();
  json_opt(rw);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 64;
  }

  Runner r(in, out);
  auto* sub = app.get_subcommands().front();
  try {
    const std::string& name = sub->get_name();
    if (name == "core") return r.core();
    if (name == "whitehead") return r.whitehead();
    if (name == "apply") return r.apply();
    if (name == "decompose") return r.decompose();
    if (name == "solve") return r.solve();
    if (name == "verify-counterexample") return r.verify();
    if (name == "stencil-classes") return r.stencil_classes();
    if (name == "primitive") return r.primitive();
    if (name == "rewrite") return r.rewrite();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return 64;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 65;
  }
  return 64;
}

}  // namespace fgr
