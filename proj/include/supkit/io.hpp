// JSON encodings of signatures, structures, tables, proofs, fragments and
// verdicts.
#pragma once

#include <json.hpp>
#include <string>

#include "supkit/constructions.hpp"
#include "supkit/proofs.hpp"
#include "supkit/semantics.hpp"

namespace supkit::io {

using json = nlohmann::ordered_json;

json to_json(const Signature& sig);
Signature signature_from_json(const json& j);

// {"domain": ["e0","e1"], "constants": {"c": "e0"},
//  "functions": {"f": {"arity": 1, "values": {"e0": "e1", "e1": "e0"}}},
//  "predicates": {"P": {"arity": 1, "holds": [["e0"]]}}, "props": {"p0": true}}
json to_json(const Structure& m);
Structure structure_from_json(const json& j);

// {"mode": "sentence", "entries": [{"pair": ["p0", "p1"], "choice": "p0"}]}
json to_json(const ChoiceTable& t);
ChoiceTable table_from_json(const json& j);

// {"system": "K0", "hypotheses": [...], "lines": [
//   {"formula": "...", "by": "axiom", "scheme": "P1"},
//   {"formula": "...", "by": "mp", "from": [1, 2]},
//   {"formula": "...", "by": "gr", "from": [3]},
//   {"formula": "...", "by": "sv", "from": [4], "cert": {...}},
//   {"formula": "...", "by": "hyp"}]}
json to_json(const Proof& p);
Proof proof_from_json(const json& j);

// {"domain": 1, "in": ["p0 sup p1", "p0", "~p1"]}
TheoryFragment fragment_from_json(const json& j);

json to_json(const Verdict& v);
json to_json(const UiWitness& w);
json to_json(const UniformityTrace& t);
json to_json(const ObjectReport& r);
json to_json(const BuiltModel& b);
json to_json(const InterpolationReport& r);

json read_file(const std::string& path);

}  // namespace supkit::io
