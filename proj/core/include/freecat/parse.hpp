#pragma once

#include <string_view>

#include "freecat/lex.hpp"
#include "freecat/signature.hpp"

namespace freecat {

// Type surface syntax:  IDENT | I | 1 | t * t | t -o t | t^
// * is left-associative and binds tighter than -o; ^ is postfix and binds
// tightest. Aliases expand, unknown names fail, mode gating applies, and
// the result is canonical for sig.mode.
TypePtr parse_type(std::string_view src, const Signature& sig);

// Morphism surface syntax: ; (loosest, left-assoc), * (left-assoc), then
// id[t], assoc[t,t,t], unassoc[t,t,t], left[t], unleft[t], right[t],
// unright[t], braid[t,t], braidinv[t,t], curry(m), uncurry(m), ev[t,t],
// cup[t], cap[t], dup[t], del[t], pair(m,m), p1[t,t], p2[t,t], name(m),
// generator names and named-term references.
MorPtr parse_mor(std::string_view src, const Signature& sig);

// Signature files: `mode <m>` (first, optional), then any number of
//   obj <Name>...
//   alias <Name> = <type>
//   gen <name> : <type> -> <type>
//   term <name> = <morphism>
// Unknown object names inside alias/gen types parse leniently (reported by
// validate_signature); term bodies parse strictly against what precedes.
Signature parse_signature(std::string_view src);

// Shared by the other surface parsers.
TypePtr parse_type_tokens(Lexer& lex, const Signature& sig, bool lenient);
MorPtr parse_mor_tokens(Lexer& lex, const Signature& sig);

} // namespace freecat
