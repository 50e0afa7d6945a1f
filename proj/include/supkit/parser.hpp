// Text grammar, precedence low to high:
//   <->  (left)   ->  (right)   \/   /\   sup | (left)   ~
// `forall v.` / `exists v.` extend as far right as possible; `forall v u.`
// nests. Atoms: p0, P(t,..), t1 = t2. Terms: variables (v, u, w, x, y, z
// optionally followed by digits, or any name bound by an enclosing
// quantifier), constants, f(t,..), parameters @e0.
#pragma once

#include <string>
#include <string_view>

#include "supkit/formula.hpp"
#include "supkit/signature.hpp"

namespace supkit {

// Strict: every symbol must be declared in sig (UnknownSymbol, ArityError).
Formula parse(std::string_view text, const Signature& sig);
// Infers the vocabulary: uppercase or any name(args) in formula position is a
// predicate, bare names there are propositional atoms, name(args) in term
// position is a function, other non-variable names are constants. Arities
// must be used consistently within the text.
Formula parse(std::string_view text);
Term parse_term(std::string_view text);

std::string print(const Formula& f);
std::string print(const Term& t);

}  // namespace supkit
