#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "freecat/lambda.hpp"

namespace freecat {

// ---------------------------------------------------------------------------
// SKI combinator terms, abstraction elimination from untyped lambda terms,
// and normal-order combinator reduction.
// ---------------------------------------------------------------------------

enum class SkTag { I, K, S, Var, App };

struct SkTerm;
using SkPtr = std::shared_ptr<const SkTerm>;

struct SkTerm {
  SkTag tag;
  std::string name; // Var
  SkPtr fun, arg;   // App

  SkTerm(SkTag t, std::string n, SkPtr f, SkPtr a)
      : tag(t), name(std::move(n)), fun(std::move(f)), arg(std::move(a)) {}
};

SkPtr sk_i();
SkPtr sk_k();
SkPtr sk_s();
SkPtr sk_var(std::string name);
SkPtr sk_app(SkPtr f, SkPtr a);

bool sk_eq(const SkPtr& a, const SkPtr& b);

// Prints combinators as letters and application with parentheses: K(I)(x).
std::string print_ski(const SkPtr& t);

// Abstraction elimination:
//   T[x]      = x
//   T[u v]    = T[u] T[v]
//   T[\x. b]  = A(x, T[b])     with
//   A(x, x)   = I
//   A(x, u)   = K(u)                       when x is not free in u
//   A(x, u v) = S(A(x, u))(A(x, v))
SkPtr ski_eliminate(const UPtr& t);

struct SkiEvalResult {
  SkPtr term;
  bool normal = true;
  std::size_t steps = 0;
};

// Leftmost-outermost reduction of I(a) -> a, K(a)(b) -> a,
// S(a)(b)(c) -> a(c)(b(c)).
SkiEvalResult ski_eval(const SkPtr& t, std::size_t fuel = 10000);

// Readback into the untyped lambda calculus (I -> \x. x, etc.), used for
// extensional comparison against the original term.
UPtr ski_to_untyped(const SkPtr& t);

} // namespace freecat
