#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace freecat {

// ---------------------------------------------------------------------------
// Untyped lambda calculus: terms, capture-avoiding substitution, normal-order
// reduction, Church numerals, and a small file format of named definitions.
// ---------------------------------------------------------------------------

enum class UTag { Var, App, Lam };

struct UTerm;
using UPtr = std::shared_ptr<const UTerm>;

struct UTerm {
  UTag tag;
  std::string name;  // Var: variable name; Lam: bound variable name
  UPtr fun;          // App: function;  Lam: body
  UPtr arg;          // App: argument

  UTerm(UTag t, std::string n, UPtr f, UPtr a)
      : tag(t), name(std::move(n)), fun(std::move(f)), arg(std::move(a)) {}
};

UPtr u_var(std::string name);
UPtr u_app(UPtr f, UPtr a);
UPtr u_lam(std::string name, UPtr body);

// Free variables of `t` (sorted set).
std::set<std::string> free_vars_untyped(const UPtr& t);

// Capture-avoiding substitution t[x := s]; bound variables are renamed away
// from the free variables of `s` when needed.
UPtr substitute(const UPtr& t, const std::string& x, const UPtr& s);

// Alpha-equivalence.
bool alpha_eq(const UPtr& a, const UPtr& b);

// Printing with canonical bound-variable names (x0, x1, ... chosen to avoid
// the free variables), application by juxtaposition, minimal parentheses.
std::string print_untyped(const UPtr& t);

struct UNormResult {
  UPtr term;
  bool normal = true;    // false when fuel ran out first
  std::size_t steps = 0; // single reductions performed
};

// Normal-order (leftmost-outermost) reduction: beta steps first; when no
// beta redex remains, eta steps (\x. f x -> f when x is not free in f).
UNormResult normalize_untyped(const UPtr& t, std::size_t fuel = 10000);

// Church numerals: church_encode(n) = \f. \x. f^n x.  church_decode accepts
// any alpha/eta variant of a numeral (e.g. \f. f for 1) and returns nullopt
// for terms that are not numerals.
UPtr church_encode(std::size_t n);
std::optional<std::size_t> church_decode(const UPtr& t);

// ---------------------------------------------------------------------------
// Parsing.
//
//   term := '\' IDENT '.' term | app
//   app  := atom { atom }            (left associative)
//   atom := IDENT | '(' term ')'
//
// A lambda file is a sequence of `def name = term` declarations followed by
// an optional bare final term.  Each statement ends at the first line break
// outside parentheses (wrap a long body in parentheses to span lines).
// Occurrences of previously defined names are replaced by their bodies
// (locally bound variables shadow definitions).
// ---------------------------------------------------------------------------

UPtr parse_untyped(std::string_view src);

struct LambdaDef {
  std::string name;
  UPtr term; // with earlier definitions already substituted
};

struct LambdaFile {
  std::vector<LambdaDef> defs;
  UPtr last; // bare final term if present, else nullptr
  // The term `lam run` evaluates: the bare final term when present, else the
  // definition named "main", else the last definition.
  UPtr main_term() const;
};

LambdaFile parse_lambda_file(std::string_view src);

} // namespace freecat
