#include "freecat/ski.hpp"

#include <set>

#include "freecat/error.hpp"

namespace freecat {

SkPtr sk_i() {
  static const SkPtr t =
      std::make_shared<const SkTerm>(SkTag::I, "", nullptr, nullptr);
  return t;
}

SkPtr sk_k() {
  static const SkPtr t =
      std::make_shared<const SkTerm>(SkTag::K, "", nullptr, nullptr);
  return t;
}

SkPtr sk_s() {
  static const SkPtr t =
      std::make_shared<const SkTerm>(SkTag::S, "", nullptr, nullptr);
  return t;
}

SkPtr sk_var(std::string name) {
  return std::make_shared<const SkTerm>(SkTag::Var, std::move(name), nullptr,
                                        nullptr);
}

SkPtr sk_app(SkPtr f, SkPtr a) {
  return std::make_shared<const SkTerm>(SkTag::App, "", std::move(f),
                                        std::move(a));
}

bool sk_eq(const SkPtr& a, const SkPtr& b) {
  if (a == b) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case SkTag::I:
  case SkTag::K:
  case SkTag::S:
    return true;
  case SkTag::Var:
    return a->name == b->name;
  case SkTag::App:
    return sk_eq(a->fun, b->fun) && sk_eq(a->arg, b->arg);
  }
  return false;
}

std::string print_ski(const SkPtr& t) {
  switch (t->tag) {
  case SkTag::I:
    return "I";
  case SkTag::K:
    return "K";
  case SkTag::S:
    return "S";
  case SkTag::Var:
    return t->name;
  case SkTag::App:
    return print_ski(t->fun) + "(" + print_ski(t->arg) + ")";
  }
  fail_internal("unreachable combinator tag");
}

static bool sk_has_var(const SkPtr& t, const std::string& x) {
  switch (t->tag) {
  case SkTag::Var:
    return t->name == x;
  case SkTag::App:
    return sk_has_var(t->fun, x) || sk_has_var(t->arg, x);
  default:
    return false;
  }
}

static SkPtr abstract_var(const std::string& x, const SkPtr& t) {
  if (t->tag == SkTag::Var && t->name == x) return sk_i();
  if (!sk_has_var(t, x)) return sk_app(sk_k(), t);
  // t is an application containing x (a lone variable equal to x was handled
  // above, and combinators contain no variables).
  return sk_app(sk_app(sk_s(), abstract_var(x, t->fun)),
                abstract_var(x, t->arg));
}

SkPtr ski_eliminate(const UPtr& t) {
  switch (t->tag) {
  case UTag::Var:
    return sk_var(t->name);
  case UTag::App:
    return sk_app(ski_eliminate(t->fun), ski_eliminate(t->arg));
  case UTag::Lam:
    return abstract_var(t->name, ski_eliminate(t->fun));
  }
  fail_internal("unreachable lambda tag");
}

// One leftmost-outermost combinator step, or nullptr when normal.
static SkPtr sk_step(const SkPtr& t) {
  if (t->tag != SkTag::App) return nullptr;
  // Root patterns first.
  const SkPtr& f = t->fun;
  if (f->tag == SkTag::I) return t->arg; // I(a) -> a
  if (f->tag == SkTag::App) {
    const SkPtr& g = f->fun;
    if (g->tag == SkTag::K) return f->arg; // K(a)(b) -> a
    if (g->tag == SkTag::App && g->fun->tag == SkTag::S) {
      // S(a)(b)(c) -> a(c)(b(c))
      const SkPtr& a = g->arg;
      const SkPtr& b = f->arg;
      const SkPtr& c = t->arg;
      return sk_app(sk_app(a, c), sk_app(b, c));
    }
  }
  if (SkPtr nf = sk_step(t->fun)) return sk_app(std::move(nf), t->arg);
  if (SkPtr na = sk_step(t->arg)) return sk_app(t->fun, std::move(na));
  return nullptr;
}

SkiEvalResult ski_eval(const SkPtr& t, std::size_t fuel) {
  SkiEvalResult r;
  r.term = t;
  while (r.steps < fuel) {
    SkPtr next = sk_step(r.term);
    if (!next) return r;
    r.term = std::move(next);
    ++r.steps;
  }
  r.normal = sk_step(r.term) == nullptr;
  return r;
}

UPtr ski_to_untyped(const SkPtr& t) {
  switch (t->tag) {
  case SkTag::I:
    return u_lam("a", u_var("a"));
  case SkTag::K:
    return u_lam("a", u_lam("b", u_var("a")));
  case SkTag::S:
    return u_lam("a",
                 u_lam("b", u_lam("c", u_app(u_app(u_var("a"), u_var("c")),
                                             u_app(u_var("b"), u_var("c"))))));
  case SkTag::Var:
    return u_var(t->name);
  case SkTag::App:
    return u_app(ski_to_untyped(t->fun), ski_to_untyped(t->arg));
  }
  fail_internal("unreachable combinator tag");
}

} // namespace freecat
