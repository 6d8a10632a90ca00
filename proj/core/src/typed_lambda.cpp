#include "freecat/typed_lambda.hpp"

#include <functional>
#include <map>
#include <set>
#include <utility>

#include "freecat/error.hpp"
#include "freecat/lex.hpp"
#include "freecat/parse.hpp"

namespace freecat {

TPtr tt_var(std::string name, TypePtr ty) {
  return std::make_shared<const TTerm>(TTag::Var, std::move(name),
                                       std::move(ty), std::vector<TPtr>{});
}

TPtr tt_basic(std::string name, TypePtr ty) {
  return std::make_shared<const TTerm>(TTag::Basic, std::move(name),
                                       std::move(ty), std::vector<TPtr>{});
}

TPtr tt_app(TPtr fun, TPtr arg) {
  return std::make_shared<const TTerm>(
      TTag::App, "", nullptr, std::vector<TPtr>{std::move(fun), std::move(arg)});
}

TPtr tt_lam(std::string name, TypePtr ty, TPtr body) {
  return std::make_shared<const TTerm>(TTag::Lam, std::move(name),
                                       std::move(ty),
                                       std::vector<TPtr>{std::move(body)});
}

TPtr tt_pair(TPtr fst, TPtr snd) {
  return std::make_shared<const TTerm>(
      TTag::PairT, "", nullptr,
      std::vector<TPtr>{std::move(fst), std::move(snd)});
}

TPtr tt_p1(TPtr pair) {
  return std::make_shared<const TTerm>(TTag::P1, "", nullptr,
                                       std::vector<TPtr>{std::move(pair)});
}

TPtr tt_p2(TPtr pair) {
  return std::make_shared<const TTerm>(TTag::P2, "", nullptr,
                                       std::vector<TPtr>{std::move(pair)});
}

TPtr tt_unit() {
  static const TPtr t = std::make_shared<const TTerm>(
      TTag::UnitT, "", nullptr, std::vector<TPtr>{});
  return t;
}

const BasicDecl* LambdaTheory::find_basic(std::string_view name) const {
  for (const auto& b : basics)
    if (b.name == name) return &b;
  return nullptr;
}

Signature ccc_signature(const LambdaTheory& th) {
  Signature sig;
  sig.mode = Mode::cartesian_closed;
  sig.objects = th.basic_types;
  sig.aliases = th.aliases;
  for (const auto& b : th.basics)
    sig.generators.push_back({b.name, t_unit(), b.ty});
  return sig;
}

// --- typing ------------------------------------------------------------------

namespace {

using TEnv = std::vector<std::pair<std::string, TypePtr>>; // newest first

const TypePtr* env_lookup(const TEnv& env, const std::string& name) {
  for (const auto& [n, t] : env)
    if (n == name) return &t;
  return nullptr;
}

TypePtr type_of(const TPtr& t, const LambdaTheory& th, TEnv& env,
                std::map<std::string, TypePtr>& free) {
  switch (t->tag) {
  case TTag::Var: {
    if (!t->ty) fail_type("variable '" + t->name + "' carries no type");
    if (const TypePtr* bt = env_lookup(env, t->name)) {
      if (!type_eq(*bt, t->ty))
        fail_type("variable '" + t->name +
                  "' is annotated differently from its binder");
      return *bt;
    }
    auto it = free.find(t->name);
    if (it != free.end()) {
      if (!type_eq(it->second, t->ty))
        fail_type("free variable '" + t->name +
                  "' occurs with two different types");
    } else {
      free.emplace(t->name, t->ty);
    }
    return t->ty;
  }
  case TTag::Basic: {
    const BasicDecl* b = th.find_basic(t->name);
    if (!b) fail_type("unknown constant '" + t->name + "'");
    if (t->ty && !type_eq(t->ty, b->ty))
      fail_type("constant '" + t->name +
                "' is annotated differently from its declaration");
    return b->ty;
  }
  case TTag::App: {
    TypePtr ft = type_of(t->subs[0], th, env, free);
    TypePtr at = type_of(t->subs[1], th, env, free);
    if (ft->tag != TypeTag::Hom)
      fail_type("applied term has non-function type " + print_type(ft));
    if (!type_eq(ft->left, at))
      fail_type("argument type " + print_type(at) +
                " does not match parameter type " + print_type(ft->left));
    return ft->right;
  }
  case TTag::Lam: {
    if (!t->ty) fail_type("binder '" + t->name + "' carries no type");
    env.insert(env.begin(), {t->name, t->ty});
    TypePtr bt = type_of(t->subs[0], th, env, free);
    env.erase(env.begin());
    return t_hom(t->ty, bt);
  }
  case TTag::PairT:
    return t_tensor(type_of(t->subs[0], th, env, free),
                    type_of(t->subs[1], th, env, free));
  case TTag::P1: {
    TypePtr pt = type_of(t->subs[0], th, env, free);
    if (pt->tag != TypeTag::Tensor)
      fail_type("projection from non-product type " + print_type(pt));
    return pt->left;
  }
  case TTag::P2: {
    TypePtr pt = type_of(t->subs[0], th, env, free);
    if (pt->tag != TypeTag::Tensor)
      fail_type("projection from non-product type " + print_type(pt));
    return pt->right;
  }
  case TTag::UnitT:
    return t_unit();
  }
  fail_internal("unreachable typed-term tag");
}

} // namespace

TypePtr typecheck_typed(const TPtr& t, const LambdaTheory& th) {
  TEnv env;
  std::map<std::string, TypePtr> free;
  return type_of(t, th, env, free);
}

std::vector<std::pair<std::string, TypePtr>> free_vars_typed(const TPtr& t) {
  std::vector<std::pair<std::string, TypePtr>> out;
  std::vector<std::string> bound;
  std::function<void(const TPtr&)> walk = [&](const TPtr& u) {
    switch (u->tag) {
    case TTag::Var: {
      for (const auto& b : bound)
        if (b == u->name) return;
      for (const auto& [n, ty] : out)
        if (n == u->name) return;
      out.emplace_back(u->name, u->ty);
      return;
    }
    case TTag::Lam:
      bound.push_back(u->name);
      walk(u->subs[0]);
      bound.pop_back();
      return;
    default:
      for (const auto& s : u->subs) walk(s);
      return;
    }
  };
  walk(t);
  return out;
}

TPtr substitute_typed(const TPtr& t, const std::string& x, const TPtr& s) {
  switch (t->tag) {
  case TTag::Var:
    return t->name == x ? s : t;
  case TTag::Lam: {
    if (t->name == x) return t;
    bool captures = false;
    for (const auto& [n, ty] : free_vars_typed(s))
      if (n == t->name) captures = true;
    if (captures) {
      std::set<std::string> avoid{x};
      for (const auto& [n, ty] : free_vars_typed(s)) avoid.insert(n);
      for (const auto& [n, ty] : free_vars_typed(t->subs[0])) avoid.insert(n);
      std::string y = t->name;
      for (std::size_t i = 0; avoid.count(y); ++i)
        y = t->name + "_" + std::to_string(i);
      TPtr body = substitute_typed(t->subs[0], t->name, tt_var(y, t->ty));
      return tt_lam(y, t->ty, substitute_typed(body, x, s));
    }
    TPtr body = substitute_typed(t->subs[0], x, s);
    if (body == t->subs[0]) return t;
    return tt_lam(t->name, t->ty, std::move(body));
  }
  default: {
    std::vector<TPtr> subs;
    bool changed = false;
    subs.reserve(t->subs.size());
    for (const auto& u : t->subs) {
      TPtr v = substitute_typed(u, x, s);
      changed = changed || v != u;
      subs.push_back(std::move(v));
    }
    if (!changed) return t;
    return std::make_shared<const TTerm>(t->tag, t->name, t->ty,
                                         std::move(subs));
  }
  }
}

static bool alpha_rec(const TPtr& a, const TPtr& b,
                      std::vector<std::pair<std::string, std::string>>& rn) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case TTag::Var: {
    for (auto it = rn.rbegin(); it != rn.rend(); ++it) {
      if (it->first == a->name || it->second == b->name)
        return it->first == a->name && it->second == b->name;
    }
    return a->name == b->name && type_eq(a->ty, b->ty);
  }
  case TTag::Basic:
    return a->name == b->name;
  case TTag::Lam: {
    if (!type_eq(a->ty, b->ty)) return false;
    rn.emplace_back(a->name, b->name);
    bool ok = alpha_rec(a->subs[0], b->subs[0], rn);
    rn.pop_back();
    return ok;
  }
  default: {
    if (a->subs.size() != b->subs.size()) return false;
    for (std::size_t i = 0; i < a->subs.size(); ++i)
      if (!alpha_rec(a->subs[i], b->subs[i], rn)) return false;
    return true;
  }
  }
}

bool alpha_eq_typed(const TPtr& a, const TPtr& b) {
  std::vector<std::pair<std::string, std::string>> rn;
  return alpha_rec(a, b, rn);
}

std::string print_typed(const TPtr& t) {
  // prec 0 top, 1 function position, 2 argument position
  std::function<std::string(const TPtr&, int)> pr = [&](const TPtr& u,
                                                        int prec) {
    switch (u->tag) {
    case TTag::Var:
    case TTag::Basic:
      return u->name;
    case TTag::UnitT:
      return std::string("()");
    case TTag::PairT:
      return "(" + pr(u->subs[0], 0) + ", " + pr(u->subs[1], 0) + ")";
    case TTag::App: {
      std::string s = pr(u->subs[0], 1) + " " + pr(u->subs[1], 2);
      return prec >= 2 ? "(" + s + ")" : s;
    }
    case TTag::P1:
    case TTag::P2: {
      std::string s = (u->tag == TTag::P1 ? "p1 " : "p2 ") +
                      pr(u->subs[0], 2);
      return prec >= 2 ? "(" + s + ")" : s;
    }
    case TTag::Lam: {
      std::string s = "\\" + u->name + " : " + print_type(u->ty, Mode::cartesian_closed) + ". " +
                      pr(u->subs[0], 0);
      return prec >= 1 ? "(" + s + ")" : s;
    }
    }
    fail_internal("unreachable typed-term tag");
  };
  return pr(t, 0);
}

// --- normalization -----------------------------------------------------------

namespace {

// One leftmost-outermost step; env carries binder types for the unit rule.
TPtr typed_step(const TPtr& t, const LambdaTheory& th, TEnv& env,
                std::map<std::string, TypePtr>& free) {
  // Unit collapse: any term of unit type becomes (). Lam never has unit
  // type, so this cannot discard a binder.
  if (t->tag != TTag::UnitT) {
    TypePtr ty = type_of(t, th, env, free);
    if (ty->tag == TypeTag::Unit) return tt_unit();
  }
  switch (t->tag) {
  case TTag::App:
    if (t->subs[0]->tag == TTag::Lam)
      return substitute_typed(t->subs[0]->subs[0], t->subs[0]->name,
                              t->subs[1]);
    break;
  case TTag::P1:
    if (t->subs[0]->tag == TTag::PairT) return t->subs[0]->subs[0];
    break;
  case TTag::P2:
    if (t->subs[0]->tag == TTag::PairT) return t->subs[0]->subs[1];
    break;
  case TTag::PairT:
    // surjective pairing: (p1 u, p2 u) -> u
    if (t->subs[0]->tag == TTag::P1 && t->subs[1]->tag == TTag::P2 &&
        alpha_eq_typed(t->subs[0]->subs[0], t->subs[1]->subs[0]))
      return t->subs[0]->subs[0];
    break;
  case TTag::Lam: {
    const TPtr& body = t->subs[0];
    if (body->tag == TTag::App && body->subs[1]->tag == TTag::Var &&
        body->subs[1]->name == t->name) {
      bool free_in_fun = false;
      for (const auto& [n, ty] : free_vars_typed(body->subs[0]))
        if (n == t->name) free_in_fun = true;
      if (!free_in_fun) return body->subs[0];
    }
    break;
  }
  default:
    break;
  }
  // Recurse, leftmost child first.
  if (t->tag == TTag::Lam) {
    env.insert(env.begin(), {t->name, t->ty});
    TPtr b = typed_step(t->subs[0], th, env, free);
    env.erase(env.begin());
    if (b) return tt_lam(t->name, t->ty, std::move(b));
    return nullptr;
  }
  for (std::size_t i = 0; i < t->subs.size(); ++i) {
    if (TPtr u = typed_step(t->subs[i], th, env, free)) {
      std::vector<TPtr> subs = t->subs;
      subs[i] = std::move(u);
      return std::make_shared<const TTerm>(t->tag, t->name, t->ty,
                                           std::move(subs));
    }
  }
  return nullptr;
}

} // namespace

TNormResult normalize_typed(const TPtr& t, const LambdaTheory& th,
                            std::size_t fuel) {
  typecheck_typed(t, th); // reject ill-typed input before rewriting
  TNormResult r;
  r.term = t;
  while (r.steps < fuel) {
    TEnv env;
    std::map<std::string, TypePtr> free;
    TPtr next = typed_step(r.term, th, env, free);
    if (!next) return r;
    r.term = std::move(next);
    ++r.steps;
  }
  TEnv env;
  std::map<std::string, TypePtr> free;
  r.normal = typed_step(r.term, th, env, free) == nullptr;
  return r;
}

EqAnswer equiv_typed(const TPtr& t1, const TPtr& t2, const LambdaTheory& th,
                     std::size_t fuel) {
  TypePtr ty1 = typecheck_typed(t1, th);
  TypePtr ty2 = typecheck_typed(t2, th);
  if (!type_eq(ty1, ty2))
    fail_type("compared terms have different types: " + print_type(ty1, Mode::cartesian_closed) +
              " vs " + print_type(ty2, Mode::cartesian_closed));
  for (const auto& [n1, f1] : free_vars_typed(t1))
    for (const auto& [n2, f2] : free_vars_typed(t2))
      if (n1 == n2 && !type_eq(f1, f2))
        fail_type("free variable '" + n1 +
                  "' occurs with two different types");
  TNormResult r1 = normalize_typed(t1, th, fuel);
  TNormResult r2 = normalize_typed(t2, th, fuel);
  if (!r1.normal || !r2.normal) return EqAnswer::unknown;
  return alpha_eq_typed(r1.term, r2.term) ? EqAnswer::equal
                                          : EqAnswer::not_equal;
}

// --- term category -------------------------------------------------------------

CccMor ccc_id(const TypePtr& t) { return CccMor{"x", t, tt_var("x", t)}; }

CccMor ccc_compose(const CccMor& g, const CccMor& f, const LambdaTheory& th) {
  TypePtr mid = typecheck_typed(f.body, th);
  if (!type_eq(mid, g.var_type))
    fail_type("composition type mismatch: " + print_type(mid, Mode::cartesian_closed) + " vs " +
              print_type(g.var_type, Mode::cartesian_closed));
  return CccMor{f.var, f.var_type,
                substitute_typed(g.body, g.var, f.body)};
}

// --- compilation to the kernel -------------------------------------------------

namespace {

TypePtr kenv_type(const TEnv& env, std::size_t from) {
  if (from + 1 == env.size()) return env[from].second;
  return t_tensor(env[from].second, kenv_type(env, from + 1));
}

MorPtr var_path(const TEnv& env, std::size_t from, std::size_t i) {
  if (from + 1 == env.size()) return m_id(env[from].second);
  if (i == from)
    return m_proj1(env[from].second, kenv_type(env, from + 1));
  return m_seq(m_proj2(env[from].second, kenv_type(env, from + 1)),
               var_path(env, from + 1, i));
}

MorPtr compile_typed(const TPtr& t, const LambdaTheory& th, TEnv& env) {
  switch (t->tag) {
  case TTag::Var: {
    for (std::size_t i = 0; i < env.size(); ++i)
      if (env[i].first == t->name) return var_path(env, 0, i);
    fail_type("cannot compile term with unbound variable '" + t->name + "'");
  }
  case TTag::Basic: {
    const BasicDecl* b = th.find_basic(t->name);
    if (!b) fail_type("unknown constant '" + t->name + "'");
    return m_seq(m_del(kenv_type(env, 0)), m_gen(t->name));
  }
  case TTag::UnitT:
    return m_del(kenv_type(env, 0));
  case TTag::App: {
    std::map<std::string, TypePtr> free;
    TEnv tenv = env;
    TypePtr ft = type_of(t->subs[0], th, tenv, free);
    MorPtr arg = compile_typed(t->subs[1], th, env);
    MorPtr fun = compile_typed(t->subs[0], th, env);
    return m_seq(m_pair(std::move(arg), std::move(fun)),
                 m_ev(ft->left, ft->right));
  }
  case TTag::Lam: {
    env.insert(env.begin(), {t->name, t->ty});
    MorPtr body = compile_typed(t->subs[0], th, env);
    env.erase(env.begin());
    return m_curry(std::move(body));
  }
  case TTag::PairT:
    return m_pair(compile_typed(t->subs[0], th, env),
                  compile_typed(t->subs[1], th, env));
  case TTag::P1:
  case TTag::P2: {
    std::map<std::string, TypePtr> free;
    TEnv tenv = env;
    TypePtr pt = type_of(t->subs[0], th, tenv, free);
    MorPtr u = compile_typed(t->subs[0], th, env);
    if (t->tag == TTag::P1)
      return m_seq(std::move(u), m_proj1(pt->left, pt->right));
    return m_seq(std::move(u), m_proj2(pt->left, pt->right));
  }
  }
  fail_internal("unreachable typed-term tag");
}

} // namespace

MorPtr typed_to_kernel(const std::string& x, const TypePtr& xt, const TPtr& t,
                       const LambdaTheory& th) {
  typecheck_typed(t, th);
  for (const auto& [n, ty] : free_vars_typed(t)) {
    if (n != x)
      fail_type("term has a free variable '" + n +
                "' other than the abstracted one");
    if (!type_eq(ty, xt))
      fail_type("free variable '" + n + "' has type " + print_type(ty, Mode::cartesian_closed) +
                ", expected " + print_type(xt, Mode::cartesian_closed));
  }
  TEnv env{{x, xt}};
  return compile_typed(t, th, env);
}

MorPtr typed_to_kernel(const CccMor& m, const LambdaTheory& th) {
  return typed_to_kernel(m.var, m.var_type, m.body, th);
}

// --- parsing -------------------------------------------------------------------

namespace {

struct TypedParser {
  Lexer& lex;
  const LambdaTheory& th;
  const Signature& sig; // for type parsing (objects + aliases)
  const std::vector<TypedDef>* defs;
  // In a typed file, statements are line-oriented: a definition body or the
  // final bare term ends at the first line break outside parentheses.
  bool stmt_lines = false;
  std::size_t depth = 0;
  std::size_t last_line = 0;

  bool at_def_boundary() const {
    return lex.peek_ident("def") && lex.peek(1).kind == TokKind::Ident &&
           lex.peek_punct("=", 2);
  }

  bool at_statement_break() const {
    if (at_def_boundary()) return true;
    return stmt_lines && depth == 0 && last_line != 0 &&
           lex.peek().line > last_line;
  }

  bool starts_atom() const {
    if (at_statement_break()) return false;
    return lex.peek().kind == TokKind::Ident || lex.peek_punct("(");
  }

  TPtr resolve_ident(const Token& tok, const TEnv& env) {
    for (const auto& [n, ty] : env)
      if (n == tok.text) return tt_var(tok.text, ty);
    if (defs)
      for (const auto& d : *defs)
        if (d.name == tok.text) return d.term;
    if (const BasicDecl* b = th.find_basic(tok.text))
      return tt_basic(b->name, b->ty);
    lex.fail_at(tok, "unknown identifier '" + tok.text +
                         "' (not a bound variable, definition, or constant)");
  }

  TPtr atom(TEnv& env) {
    const Token& t = lex.peek();
    if (t.kind == TokKind::Ident) {
      if ((t.text == "p1" || t.text == "p2")) {
        // projection keyword unless shadowed by a binder/definition/constant
        bool shadowed = false;
        for (const auto& [n, ty] : env)
          if (n == t.text) shadowed = true;
        if (defs)
          for (const auto& d : *defs)
            if (d.name == t.text) shadowed = true;
        if (th.find_basic(t.text)) shadowed = true;
        if (!shadowed) {
          Token kw = lex.next();
          last_line = kw.line;
          if (!starts_atom())
            lex.fail_at(lex.peek(), "expected a term after '" + kw.text + "'");
          TPtr u = atom(env);
          return kw.text == "p1" ? tt_p1(std::move(u)) : tt_p2(std::move(u));
        }
      }
      Token tok = lex.next();
      last_line = tok.line;
      return resolve_ident(tok, env);
    }
    if (lex.peek_punct("(")) {
      lex.next();
      ++depth;
      if (lex.peek_punct(")")) {
        Token close = lex.next();
        --depth;
        last_line = close.line;
        return tt_unit();
      }
      TPtr first = term(env);
      if (lex.peek_punct(",")) {
        lex.next();
        TPtr second = term(env);
        Token close = lex.peek();
        lex.expect_punct(")");
        --depth;
        last_line = close.line;
        return tt_pair(std::move(first), std::move(second));
      }
      Token close = lex.peek();
      lex.expect_punct(")");
      --depth;
      last_line = close.line;
      return first;
    }
    lex.fail_at(t, "expected a term");
  }

  TPtr term(TEnv& env) {
    if (lex.peek_punct("\\")) {
      lex.next();
      Token name = lex.expect_ident();
      lex.expect_punct(":");
      TypePtr ty = parse_type_tokens(lex, sig, false);
      Token dot = lex.peek();
      lex.expect_punct(".");
      last_line = dot.line;
      env.insert(env.begin(), {name.text, ty});
      TPtr body = term(env);
      env.erase(env.begin());
      return tt_lam(name.text, std::move(ty), std::move(body));
    }
    TPtr acc = atom(env);
    while (starts_atom()) acc = tt_app(std::move(acc), atom(env));
    if (lex.peek_punct("\\") && !at_statement_break())
      acc = tt_app(std::move(acc), term(env));
    return acc;
  }
};

} // namespace

TPtr TypedFile::main_term() const {
  if (last) return last;
  for (const auto& d : defs)
    if (d.name == "main") return d.term;
  if (!defs.empty()) return defs.back().term;
  return nullptr;
}

TypedFile parse_typed_file(std::string_view src) {
  Lexer lex(src);
  TypedFile file;
  Signature sig;
  sig.mode = Mode::cartesian_closed;
  // Theory declarations come first; `def`s and the optional bare final term
  // follow.
  bool in_theory = true;
  while (!lex.at_end() && in_theory) {
    if (lex.peek_ident("obj")) {
      lex.next();
      while (lex.peek().kind == TokKind::Ident) {
        std::string name = lex.next().text;
        file.theory.basic_types.push_back(name);
        sig.objects.push_back(std::move(name));
        if (!lex.peek_punct(",")) break;
        lex.next();
      }
      continue;
    }
    if (lex.peek_ident("alias") && lex.peek(1).kind == TokKind::Ident &&
        lex.peek_punct("=", 2)) {
      lex.next();
      std::string name = lex.expect_ident().text;
      lex.expect_punct("=");
      TypePtr ty = parse_type_tokens(lex, sig, false);
      file.theory.aliases.emplace_back(name, ty);
      sig.aliases.emplace_back(std::move(name), std::move(ty));
      continue;
    }
    if (lex.peek_ident("basic") && lex.peek(1).kind == TokKind::Ident &&
        lex.peek_punct(":", 2)) {
      lex.next();
      std::string name = lex.expect_ident().text;
      lex.expect_punct(":");
      TypePtr ty = parse_type_tokens(lex, sig, false);
      file.theory.basics.push_back({std::move(name), std::move(ty)});
      continue;
    }
    in_theory = false;
  }
  TypedParser parser{lex, file.theory, sig, &file.defs};
  parser.stmt_lines = true;
  while (!lex.at_end()) {
    if (parser.at_def_boundary()) {
      lex.next();
      std::string name = lex.expect_ident().text;
      lex.expect_punct("=");
      TEnv env;
      parser.last_line = 0;
      TPtr body = parser.term(env);
      for (const auto& d : file.defs)
        if (d.name == name) fail_parse("duplicate definition of '" + name + "'");
      typecheck_typed(body, file.theory);
      file.defs.push_back({std::move(name), std::move(body)});
      continue;
    }
    TEnv env;
    parser.last_line = 0;
    TPtr t = parser.term(env);
    if (!lex.at_end())
      lex.fail_at(lex.peek(), "unexpected input after the final term");
    typecheck_typed(t, file.theory);
    file.last = std::move(t);
  }
  return file;
}

TPtr parse_typed_term(std::string_view src, const LambdaTheory& th) {
  Lexer lex(src);
  Signature sig = ccc_signature(th);
  TypedParser parser{lex, th, sig, nullptr};
  TEnv env;
  TPtr t = parser.term(env);
  if (!lex.at_end())
    lex.fail_at(lex.peek(), "unexpected trailing input after typed term");
  typecheck_typed(t, th);
  return t;
}

} // namespace freecat
