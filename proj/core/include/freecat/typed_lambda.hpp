#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freecat/equality.hpp"
#include "freecat/signature.hpp"
#include "freecat/term.hpp"
#include "freecat/types.hpp"

namespace freecat {

// ---------------------------------------------------------------------------
// Simply typed lambda calculus with products and a unit type, over a theory
// of basic types and typed constants ("basic terms"); equivalence by
// normalization; and the compilation of terms-in-one-variable to morphisms
// of the cartesian closed term category.
//
// Types reuse the kernel type grammar: Tensor is the product, Hom the
// function type, Unit the unit type.
// ---------------------------------------------------------------------------

enum class TTag { Var, Basic, App, Lam, PairT, P1, P2, UnitT };

struct TTerm;
using TPtr = std::shared_ptr<const TTerm>;

struct TTerm {
  TTag tag;
  std::string name;       // Var / Basic: the name; Lam: the bound variable
  TypePtr ty;             // Var / Basic: its type; Lam: the binder type
  std::vector<TPtr> subs; // App: {fun, arg}; Lam: {body}; PairT: {fst, snd};
                          // P1 / P2: {pair}

  TTerm(TTag t, std::string n, TypePtr y, std::vector<TPtr> s)
      : tag(t), name(std::move(n)), ty(std::move(y)), subs(std::move(s)) {}
};

TPtr tt_var(std::string name, TypePtr ty);
TPtr tt_basic(std::string name, TypePtr ty);
TPtr tt_app(TPtr fun, TPtr arg);
TPtr tt_lam(std::string name, TypePtr ty, TPtr body);
TPtr tt_pair(TPtr fst, TPtr snd);
TPtr tt_p1(TPtr pair);
TPtr tt_p2(TPtr pair);
TPtr tt_unit();

struct BasicDecl {
  std::string name;
  TypePtr ty;
};

// Basic types, type aliases, and typed constants.
struct LambdaTheory {
  std::vector<std::string> basic_types;
  std::vector<std::pair<std::string, TypePtr>> aliases;
  std::vector<BasicDecl> basics;

  const BasicDecl* find_basic(std::string_view name) const;
};

// The cartesian closed signature of a theory: its basic types as objects and
// each constant b : T as a generator b : I -> T.
Signature ccc_signature(const LambdaTheory& th);

// Type of `t`; free variables use the type carried on the Var node.  Fails
// (ErrKind::type) on ill-typed terms, unknown constants, or inconsistent
// types on two occurrences of one free variable.
TypePtr typecheck_typed(const TPtr& t, const LambdaTheory& th);

std::string print_typed(const TPtr& t);

// Free variables with their types, in first-occurrence order.
std::vector<std::pair<std::string, TypePtr>> free_vars_typed(const TPtr& t);

// Capture-avoiding substitution t[x := s].
TPtr substitute_typed(const TPtr& t, const std::string& x, const TPtr& s);

bool alpha_eq_typed(const TPtr& a, const TPtr& b);

struct TNormResult {
  TPtr term;
  bool normal = true;
  std::size_t steps = 0;
};

// Leftmost-outermost normalization under beta, projections, surjective
// pairing, eta, and unit-term collapse (any term of unit type becomes ()).
TNormResult normalize_typed(const TPtr& t, const LambdaTheory& th,
                            std::size_t fuel = 10000);

// Decides the equational theory by normalizing both sides and comparing
// alpha-canonically; `unknown` only when fuel ran out first.
EqAnswer equiv_typed(const TPtr& t1, const TPtr& t2, const LambdaTheory& th,
                     std::size_t fuel = 10000);

// ---------------------------------------------------------------------------
// The term category: a morphism T -> U is a term of type U in one free
// variable of type T, composed by substitution.
// ---------------------------------------------------------------------------

struct CccMor {
  std::string var;
  TypePtr var_type;
  TPtr body;
};

CccMor ccc_id(const TypePtr& t);
// compose((y, u), (x, t)) = (x, u[t/y]): first `f`, then `g`.
CccMor ccc_compose(const CccMor& g, const CccMor& f, const LambdaTheory& th);

// Compiles a term with at most one free variable `x : xt` to a kernel
// morphism xt -> typeof(t) over ccc_signature(th).
MorPtr typed_to_kernel(const std::string& x, const TypePtr& xt, const TPtr& t,
                       const LambdaTheory& th);
MorPtr typed_to_kernel(const CccMor& m, const LambdaTheory& th);

// ---------------------------------------------------------------------------
// Parsing.
//
//   term := '\' IDENT ':' type '.' term | app
//   app  := atom { atom }                       (left associative)
//   atom := 'p1' atom | 'p2' atom | IDENT
//         | '(' ')' | '(' term ')' | '(' term ',' term ')'
//
// A typed lambda file holds `obj`, `alias`, and `basic name : T`
// declarations plus `def name = term` definitions and an optional bare final
// term; definition names expand inline.
// ---------------------------------------------------------------------------

struct TypedDef {
  std::string name;
  TPtr term;
};

struct TypedFile {
  LambdaTheory theory;
  std::vector<TypedDef> defs;
  TPtr last; // bare final term if present
  TPtr main_term() const;
};

TypedFile parse_typed_file(std::string_view src);
TPtr parse_typed_term(std::string_view src, const LambdaTheory& th);

} // namespace freecat
