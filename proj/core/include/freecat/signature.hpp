#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "freecat/term.hpp"
#include "freecat/types.hpp"

namespace freecat {

struct GenDecl {
  std::string name;
  TypePtr dom;
  TypePtr cod;
};

struct NamedTerm {
  std::string name;
  MorPtr term;
};

// A presentation: mode, named objects, type aliases (stored expanded),
// generators and named terms.
struct Signature {
  Mode mode = Mode::monoidal;
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, TypePtr>> aliases;
  std::vector<GenDecl> generators;
  std::vector<NamedTerm> terms;

  bool has_object(std::string_view name) const;
  const TypePtr* find_alias(std::string_view name) const;
  const GenDecl* find_gen(std::string_view name) const;
  const NamedTerm* find_term(std::string_view name) const;
};

// All problems found, one entry each: duplicate names, reserved names,
// undeclared objects in generator/alias/term types, mode violations,
// ill-typed named terms. Empty result means valid.
std::vector<std::string> validate_signature(const Signature& sig);

// Names the surface syntax reserves for structural morphisms.
bool is_reserved_word(std::string_view name);

} // namespace freecat
