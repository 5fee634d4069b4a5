#pragma once

// Text and JSON formats for graphs, objects, morphisms, problems and case
// trees. Parsers throw ParseError.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fgr/analysis.hpp"
#include "fgr/coords.hpp"
#include "fgr/solver.hpp"

namespace fgr {

class ParseError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

/// "b,abA" or "u,v;~u" (';' separates when token words are used).
std::vector<Word> parse_word_list(std::string_view text);

/// "a=~u,b=uv" or "a=~u;b=u,v".
Images parse_images(std::string_view text);

/// "x,y|x.~y,~x.y"; the part after '|' may be empty.
FgrObject parse_object_text(std::string_view text);

/// {"vertices":[...],"basepoint":id,"edges":[{"id":n,"from":i,"to":j,"label":"a"}]}
/// in canonical form, listing positive edges only.
Json graph_to_json(const LabeledGraph& g);
/// Also accepts {"subgroup":["b","abA"]}.
LabeledGraph graph_from_json(const Json& j);

Json object_to_json(const FgrObject& o);
/// Restrictions may be ["x","~y"] pairs or "x.~y" strings.
FgrObject object_from_json(const Json& j);

Json images_to_json(const Images& images);
/// {"images":{"a":"~u"}} or the bare map.
Images images_from_json(const Json& j);

Json problem_to_json(const SurjectivityProblem& p);
/// {gamma, delta, object}; goes through make_problem.
SurjectivityProblem problem_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d);
Json case_tree_to_json(const CaseTree& t);
Json exploration_to_json(const StencilExploration& e);
Json coordinates_to_json(const ChangeOfCoordinates& c);

/// Reads JSON text; throws ParseError with the parser's message.
Json parse_json(std::string_view text);

}  // namespace fgr
