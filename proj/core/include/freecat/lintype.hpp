#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "freecat/equality.hpp"
#include "freecat/signature.hpp"
#include "freecat/term.hpp"
#include "freecat/types.hpp"

namespace freecat {

// ---------------------------------------------------------------------------
// Linear type theories: combinators, linear terms, the combinator/variable
// decomposition of every term, and the two translations between theories and
// closed symmetric signatures.
//
// Types reuse the kernel grammar restricted to basic types, the trivial type
// I, tensor, and the function type.  A theory is presented by a signature in
// closed-symmetric mode: its objects are the basic types and its generators
// the function symbols.
// ---------------------------------------------------------------------------

enum class CombTag {
  fn,     // declared function symbol
  id,     // id_X
  assoc,  // (X (x) Y) (x) Z -> X (x) (Y (x) Z)
  unassoc,
  braid,  // X (x) Y -> Y (x) X
  left,   // I (x) X -> X
  unleft,
  right,  // X (x) I -> X
  unright,
  eval,   // X (x) (X -o Y) -> Y
  comp,   // comp(g, f) = g after f
  tensor, // f (x) g
  curry   // f : X (x) Y -> Z gives curry(f) : Y -> X -o Z
};

struct Comb;
using CombPtr = std::shared_ptr<const Comb>;

struct Comb {
  CombTag tag;
  std::string fn;             // fn: the symbol name
  std::vector<TypePtr> at;    // type arguments of the basic combinators
  std::vector<CombPtr> subs;  // comp: {g, f}; tensor: {f, g}; curry: {f}
  TypePtr dom, cod;           // derived at construction
};

CombPtr c_fn(std::string name, TypePtr dom, TypePtr cod);
CombPtr c_id(TypePtr x);
CombPtr c_assoc(TypePtr x, TypePtr y, TypePtr z);
CombPtr c_unassoc(TypePtr x, TypePtr y, TypePtr z);
CombPtr c_braid(TypePtr x, TypePtr y);
CombPtr c_left(TypePtr x);
CombPtr c_unleft(TypePtr x);
CombPtr c_right(TypePtr x);
CombPtr c_unright(TypePtr x);
CombPtr c_eval(TypePtr x, TypePtr y);
CombPtr c_comp(CombPtr g, CombPtr f); // g after f; domains must meet
CombPtr c_tensor(CombPtr f, CombPtr g);
CombPtr c_curry(CombPtr f);

bool comb_eq(const CombPtr& a, const CombPtr& b);
std::string print_comb(const CombPtr& c);

// --- linear terms ----------------------------------------------------------

enum class LinTag { var, one, tensor, apply };

struct LinTerm;
using LinPtr = std::shared_ptr<const LinTerm>;

struct LinTerm {
  LinTag tag;
  std::string var;  // var: name
  TypePtr var_type; // var: type
  CombPtr comb;     // apply: the combinator
  std::vector<LinPtr> subs; // tensor: {s, t}; apply: {argument}
};

LinPtr lin_var(std::string name, TypePtr ty);
LinPtr lin_one();
LinPtr lin_tensor(LinPtr s, LinPtr t);
LinPtr lin_apply(CombPtr c, LinPtr arg);

// Type of a term, without the linearity check (used while parsing).
TypePtr lin_type(const LinPtr& t);

// Full check: combinator applications match their argument types and every
// variable occurs at most once across the whole term.
TypePtr lin_typecheck(const LinPtr& t);

// Variables in left-to-right order.
std::vector<std::pair<std::string, TypePtr>> lin_vars(const LinPtr& t);

std::string print_lterm(const LinPtr& t);
bool lterm_eq(const LinPtr& a, const LinPtr& b);

// --- combinator/variable decomposition ---------------------------------------
//
//   cp(x) = id          vp(x) = x
//   cp(1) = id          vp(1) = 1
//   cp(s (x) t) = cp(s) (x) cp(t)       vp(s (x) t) = vp(s) (x) vp(t)
//   cp(f(s))    = comp(f, cp(s))        vp(f(s))    = vp(s)
//
// Every term equals cp(t) applied to vp(t); vp(t) contains only variables,
// 1s and tensoring.

struct CpVp {
  CombPtr cp;
  LinPtr vp;
};

CpVp cpvp(const LinPtr& t);

// --- translations -------------------------------------------------------------

// The theory of a closed symmetric signature (and back).  The two directions
// are mutually inverse on presentations; the structural identifications live
// in comb_to_kernel / kernel_to_comb below.
struct LinTheory {
  std::shared_ptr<const Signature> sig;
};

LinTheory kernel_to_theory(const Signature& sig);
Signature theory_to_kernel(const LinTheory& th);

// Combinators as kernel morphisms: function symbols become generators, the
// basic combinators become the structural morphisms of the same name, eval
// becomes the evaluation morphism, comp/tensor/curry become composition,
// tensoring and currying.
MorPtr comb_to_kernel(const CombPtr& c);

// The inverse reading: every closed-symmetric kernel term is a combinator.
// BraidInv(X,Y) reads as braid(Y,X), Uncurry(g) as comp(eval, id (x) g),
// Name(f) through its currying expansion.
CombPtr kernel_to_comb(const MorPtr& m, const Signature& sig);

// --- equivalence ----------------------------------------------------------------

// Terms of the same type with the same variables: decompose both, align the
// variable parts over a shared canonical variable order, and decide equality
// of the combinator parts in the kernel.
EqVerdict lin_equiv_terms(const LinPtr& t1, const LinPtr& t2,
                          const Signature& sig, const Strategy& st = {});

// Combinators of the same type: apply both to one canonical basic term
// (fresh variables at basic and function leaves, 1 at trivial leaves); while
// the result type is a function type, apply to a further fresh variable.
EqVerdict lin_equiv_combinators(const CombPtr& f, const CombPtr& g,
                                const Signature& sig, const Strategy& st = {});

// --- parsing ---------------------------------------------------------------------
//
//   lterm := IDENT ':' type
//          | '1'
//          | '(' lterm '(x)' lterm ')'
//          | comb '(' lterm ')'
//   comb  := IDENT | 'curry' '(' comb ')'
//
// Type arguments of the basic combinators are inferred from the argument
// term; bare identifiers name basic combinators or the signature's function
// symbols.

LinPtr parse_lterm(std::string_view src, const Signature& sig);

} // namespace freecat
