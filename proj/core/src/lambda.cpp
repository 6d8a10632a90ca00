#include "freecat/lambda.hpp"

#include <functional>
#include <map>
#include <utility>

#include "freecat/error.hpp"
#include "freecat/lex.hpp"

namespace freecat {

UPtr u_var(std::string name) {
  return std::make_shared<const UTerm>(UTag::Var, std::move(name), nullptr,
                                       nullptr);
}

UPtr u_app(UPtr f, UPtr a) {
  return std::make_shared<const UTerm>(UTag::App, "", std::move(f),
                                       std::move(a));
}

UPtr u_lam(std::string name, UPtr body) {
  return std::make_shared<const UTerm>(UTag::Lam, std::move(name),
                                       std::move(body), nullptr);
}

static void collect_free(const UPtr& t, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (t->tag) {
  case UTag::Var:
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  case UTag::App:
    collect_free(t->fun, bound, out);
    collect_free(t->arg, bound, out);
    return;
  case UTag::Lam: {
    bool already = bound.count(t->name) > 0;
    bound.insert(t->name);
    collect_free(t->fun, bound, out);
    if (!already) bound.erase(t->name);
    return;
  }
  }
}

std::set<std::string> free_vars_untyped(const UPtr& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

static std::string fresh_name(const std::string& base,
                              const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t i = 0;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

UPtr substitute(const UPtr& t, const std::string& x, const UPtr& s) {
  switch (t->tag) {
  case UTag::Var:
    return t->name == x ? s : t;
  case UTag::App: {
    UPtr f = substitute(t->fun, x, s);
    UPtr a = substitute(t->arg, x, s);
    if (f == t->fun && a == t->arg) return t;
    return u_app(std::move(f), std::move(a));
  }
  case UTag::Lam: {
    if (t->name == x) return t; // x is shadowed
    std::set<std::string> fv_s = free_vars_untyped(s);
    if (fv_s.count(t->name)) {
      // Rename the binder away from the free variables of s (and of the
      // body, so the rename itself cannot capture).
      std::set<std::string> avoid = fv_s;
      for (const auto& v : free_vars_untyped(t->fun)) avoid.insert(v);
      avoid.insert(x);
      std::string y = fresh_name(t->name, avoid);
      UPtr body = substitute(t->fun, t->name, u_var(y));
      return u_lam(y, substitute(body, x, s));
    }
    UPtr body = substitute(t->fun, x, s);
    if (body == t->fun) return t;
    return u_lam(t->name, std::move(body));
  }
  }
  fail_internal("unreachable lambda tag");
}

static bool alpha_eq_rec(const UPtr& a, const UPtr& b,
                         std::map<std::string, std::string>& ab,
                         std::map<std::string, std::string>& ba) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case UTag::Var: {
    auto ia = ab.find(a->name);
    auto ib = ba.find(b->name);
    if (ia == ab.end() && ib == ba.end()) return a->name == b->name;
    if (ia == ab.end() || ib == ba.end()) return false;
    return ia->second == b->name && ib->second == a->name;
  }
  case UTag::App:
    return alpha_eq_rec(a->fun, b->fun, ab, ba) &&
           alpha_eq_rec(a->arg, b->arg, ab, ba);
  case UTag::Lam: {
    auto save_a = ab.find(a->name) != ab.end()
                      ? std::optional<std::string>(ab[a->name])
                      : std::nullopt;
    auto save_b = ba.find(b->name) != ba.end()
                      ? std::optional<std::string>(ba[b->name])
                      : std::nullopt;
    ab[a->name] = b->name;
    ba[b->name] = a->name;
    bool ok = alpha_eq_rec(a->fun, b->fun, ab, ba);
    if (save_a)
      ab[a->name] = *save_a;
    else
      ab.erase(a->name);
    if (save_b)
      ba[b->name] = *save_b;
    else
      ba.erase(b->name);
    return ok;
  }
  }
  return false;
}

bool alpha_eq(const UPtr& a, const UPtr& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_eq_rec(a, b, ab, ba);
}

// --- printing --------------------------------------------------------------

namespace {

struct Printer {
  std::set<std::string> taken; // free variables + binders already chosen
  std::size_t counter = 0;

  std::string pick() {
    for (;;) {
      std::string cand = "x" + std::to_string(counter++);
      if (!taken.count(cand)) {
        taken.insert(cand);
        return cand;
      }
    }
  }

  // prec: 0 = top, 1 = function position of application, 2 = argument
  // position of application.
  void print(const UPtr& t, std::map<std::string, std::string>& rn, int prec,
             std::string& out) {
    switch (t->tag) {
    case UTag::Var: {
      auto it = rn.find(t->name);
      out += it == rn.end() ? t->name : it->second;
      return;
    }
    case UTag::App: {
      bool paren = prec >= 2;
      if (paren) out += "(";
      print(t->fun, rn, 1, out);
      out += " ";
      print(t->arg, rn, 2, out);
      if (paren) out += ")";
      return;
    }
    case UTag::Lam: {
      bool paren = prec >= 1;
      if (paren) out += "(";
      std::string fresh = pick();
      auto saved = rn.find(t->name) != rn.end()
                       ? std::optional<std::string>(rn[t->name])
                       : std::nullopt;
      rn[t->name] = fresh;
      out += "\\" + fresh + ". ";
      print(t->fun, rn, 0, out);
      if (saved)
        rn[t->name] = *saved;
      else
        rn.erase(t->name);
      if (paren) out += ")";
      return;
    }
    }
  }
};

} // namespace

std::string print_untyped(const UPtr& t) {
  Printer p;
  p.taken = free_vars_untyped(t);
  std::map<std::string, std::string> rn;
  std::string out;
  p.print(t, rn, 0, out);
  return out;
}

// --- reduction ---------------------------------------------------------------

// One leftmost-outermost beta step, or nullptr when beta-normal.
static UPtr beta_step(const UPtr& t) {
  switch (t->tag) {
  case UTag::Var:
    return nullptr;
  case UTag::App: {
    if (t->fun->tag == UTag::Lam)
      return substitute(t->fun->fun, t->fun->name, t->arg);
    if (UPtr f = beta_step(t->fun)) return u_app(std::move(f), t->arg);
    if (UPtr a = beta_step(t->arg)) return u_app(t->fun, std::move(a));
    return nullptr;
  }
  case UTag::Lam:
    if (UPtr b = beta_step(t->fun)) return u_lam(t->name, std::move(b));
    return nullptr;
  }
  return nullptr;
}

// One leftmost-outermost eta step, or nullptr.
static UPtr eta_step(const UPtr& t) {
  switch (t->tag) {
  case UTag::Var:
    return nullptr;
  case UTag::App: {
    if (UPtr f = eta_step(t->fun)) return u_app(std::move(f), t->arg);
    if (UPtr a = eta_step(t->arg)) return u_app(t->fun, std::move(a));
    return nullptr;
  }
  case UTag::Lam: {
    const UPtr& body = t->fun;
    if (body->tag == UTag::App && body->arg->tag == UTag::Var &&
        body->arg->name == t->name &&
        !free_vars_untyped(body->fun).count(t->name))
      return body->fun;
    if (UPtr b = eta_step(body)) return u_lam(t->name, std::move(b));
    return nullptr;
  }
  }
  return nullptr;
}

UNormResult normalize_untyped(const UPtr& t, std::size_t fuel) {
  UNormResult r;
  r.term = t;
  while (r.steps < fuel) {
    UPtr next = beta_step(r.term);
    if (!next) next = eta_step(r.term);
    if (!next) return r;
    r.term = std::move(next);
    ++r.steps;
  }
  r.normal = !beta_step(r.term) && !eta_step(r.term);
  return r;
}

// --- Church numerals ---------------------------------------------------------

UPtr church_encode(std::size_t n) {
  UPtr body = u_var("x");
  for (std::size_t i = 0; i < n; ++i) body = u_app(u_var("f"), body);
  return u_lam("f", u_lam("x", std::move(body)));
}

std::optional<std::size_t> church_decode(const UPtr& t) {
  // Accept \f. \x. f^n x, plus the eta-reduced forms \f. f (numeral 1) and
  // any other eta-variants by eta-expanding through the checker directly.
  if (t->tag != UTag::Lam) return std::nullopt;
  const std::string& f = t->name;
  UPtr inner = t->fun;
  std::string x;
  UPtr body;
  if (inner->tag == UTag::Lam) {
    x = inner->name;
    body = inner->fun;
  } else if (inner->tag == UTag::Var && inner->name == f) {
    return 1; // \f. f
  } else {
    return std::nullopt;
  }
  std::size_t n = 0;
  while (body->tag == UTag::App) {
    if (body->fun->tag != UTag::Var || body->fun->name != f)
      return std::nullopt;
    ++n;
    body = body->arg;
  }
  if (body->tag != UTag::Var || body->name != x) return std::nullopt;
  if (x == f && n > 0) return std::nullopt; // shadowing corner: \f.\f. f ... f
  return n;
}

// --- parsing -----------------------------------------------------------------

namespace {

// In a lambda file, statements are line-oriented: a definition body or the
// final bare term ends at the first line break outside parentheses (and at
// a `def NAME =` header).  Single-term parses are free-form.
struct PCtx {
  bool stmt_lines = false;
  std::size_t depth = 0;     // open parentheses
  std::size_t last_line = 0; // line of the last consumed token
};

UPtr parse_term_tokens(Lexer& lex, PCtx& cx);

UPtr parse_atom_tokens(Lexer& lex, PCtx& cx) {
  const Token& t = lex.peek();
  if (t.kind == TokKind::Ident) {
    Token tok = lex.next();
    cx.last_line = tok.line;
    return u_var(tok.text);
  }
  if (lex.peek_punct("(")) {
    lex.next();
    ++cx.depth;
    UPtr inner = parse_term_tokens(lex, cx);
    Token close = lex.peek();
    lex.expect_punct(")");
    --cx.depth;
    cx.last_line = close.line;
    return inner;
  }
  lex.fail_at(t, "expected a variable or '('");
}

// `def NAME =` introduces the next declaration in a lambda file; a term
// never continues across it (`=` is not a term token).
bool at_def_boundary(const Lexer& lex) {
  return lex.peek_ident("def") && lex.peek(1).kind == TokKind::Ident &&
         lex.peek_punct("=", 2);
}

bool at_statement_break(const Lexer& lex, const PCtx& cx) {
  if (at_def_boundary(lex)) return true;
  return cx.stmt_lines && cx.depth == 0 && cx.last_line != 0 &&
         lex.peek().line > cx.last_line;
}

bool starts_atom(const Lexer& lex, const PCtx& cx) {
  if (at_statement_break(lex, cx)) return false;
  return lex.peek().kind == TokKind::Ident || lex.peek_punct("(");
}

UPtr parse_term_tokens(Lexer& lex, PCtx& cx) {
  if (lex.peek_punct("\\")) {
    lex.next();
    Token name = lex.expect_ident();
    lex.expect_punct(".");
    cx.last_line = name.line;
    return u_lam(name.text, parse_term_tokens(lex, cx));
  }
  UPtr acc = parse_atom_tokens(lex, cx);
  while (starts_atom(lex, cx)) {
    // A lambda directly in argument position must be parenthesised, so only
    // atoms continue an application chain.
    acc = u_app(std::move(acc), parse_atom_tokens(lex, cx));
  }
  if (lex.peek_punct("\\") && !at_statement_break(lex, cx)) {
    // `f \x. b` — treat a trailing lambda as the final argument, extending
    // to the end of the term (common shorthand).
    acc = u_app(std::move(acc), parse_term_tokens(lex, cx));
  }
  return acc;
}

} // namespace

UPtr parse_untyped(std::string_view src) {
  Lexer lex(src);
  PCtx cx;
  UPtr t = parse_term_tokens(lex, cx);
  if (!lex.at_end())
    lex.fail_at(lex.peek(), "unexpected trailing input after lambda term");
  return t;
}

UPtr LambdaFile::main_term() const {
  if (last) return last;
  for (const auto& d : defs)
    if (d.name == "main") return d.term;
  if (!defs.empty()) return defs.back().term;
  return nullptr;
}

LambdaFile parse_lambda_file(std::string_view src) {
  Lexer lex(src);
  LambdaFile file;
  auto resolve = [&](UPtr t) {
    // Replace free occurrences of earlier definition names, newest first so
    // later definitions may use earlier ones (already resolved).
    for (auto it = file.defs.rbegin(); it != file.defs.rend(); ++it)
      t = substitute(t, it->name, it->term);
    return t;
  };
  while (!lex.at_end()) {
    if (lex.peek_ident("def") && lex.peek(1).kind == TokKind::Ident &&
        lex.peek_punct("=", 2)) {
      lex.next();
      std::string name = lex.expect_ident().text;
      lex.expect_punct("=");
      // A definition body extends to the first line break outside
      // parentheses (or the next `def` header / end of input).
      PCtx cx;
      cx.stmt_lines = true;
      UPtr body = parse_term_tokens(lex, cx);
      for (const auto& d : file.defs)
        if (d.name == name)
          fail_parse("duplicate definition of '" + name + "'");
      file.defs.push_back({std::move(name), resolve(std::move(body))});
      continue;
    }
    PCtx cx;
    cx.stmt_lines = true;
    UPtr t = parse_term_tokens(lex, cx);
    if (!lex.at_end())
      lex.fail_at(lex.peek(), "unexpected input after the final term");
    file.last = resolve(std::move(t));
  }
  return file;
}

} // namespace freecat
