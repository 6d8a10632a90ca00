#include "freecat/lintype.hpp"

#include <map>
#include <set>
#include <utility>

#include "freecat/error.hpp"
#include "freecat/lex.hpp"
#include "freecat/parse.hpp"
#include "freecat/strict.hpp"

namespace freecat {

// --- combinators ---------------------------------------------------------------

namespace {

CombPtr mk_comb(CombTag tag, std::string fn, std::vector<TypePtr> at,
                std::vector<CombPtr> subs, TypePtr dom, TypePtr cod) {
  auto c = std::make_shared<Comb>();
  c->tag = tag;
  c->fn = std::move(fn);
  c->at = std::move(at);
  c->subs = std::move(subs);
  c->dom = std::move(dom);
  c->cod = std::move(cod);
  return c;
}

} // namespace

CombPtr c_fn(std::string name, TypePtr dom, TypePtr cod) {
  TypePtr d = dom, c = cod;
  return mk_comb(CombTag::fn, std::move(name), {}, {}, std::move(d),
                 std::move(c));
}

CombPtr c_id(TypePtr x) {
  return mk_comb(CombTag::id, "", {x}, {}, x, x);
}

CombPtr c_assoc(TypePtr x, TypePtr y, TypePtr z) {
  TypePtr dom = t_tensor(t_tensor(x, y), z);
  TypePtr cod = t_tensor(x, t_tensor(y, z));
  return mk_comb(CombTag::assoc, "", {x, y, z}, {}, std::move(dom),
                 std::move(cod));
}

CombPtr c_unassoc(TypePtr x, TypePtr y, TypePtr z) {
  TypePtr dom = t_tensor(x, t_tensor(y, z));
  TypePtr cod = t_tensor(t_tensor(x, y), z);
  return mk_comb(CombTag::unassoc, "", {x, y, z}, {}, std::move(dom),
                 std::move(cod));
}

CombPtr c_braid(TypePtr x, TypePtr y) {
  TypePtr dom = t_tensor(x, y);
  TypePtr cod = t_tensor(y, x);
  return mk_comb(CombTag::braid, "", {x, y}, {}, std::move(dom),
                 std::move(cod));
}

CombPtr c_left(TypePtr x) {
  return mk_comb(CombTag::left, "", {x}, {}, t_tensor(t_unit(), x), x);
}

CombPtr c_unleft(TypePtr x) {
  return mk_comb(CombTag::unleft, "", {x}, {}, x, t_tensor(t_unit(), x));
}

CombPtr c_right(TypePtr x) {
  return mk_comb(CombTag::right, "", {x}, {}, t_tensor(x, t_unit()), x);
}

CombPtr c_unright(TypePtr x) {
  return mk_comb(CombTag::unright, "", {x}, {}, x, t_tensor(x, t_unit()));
}

CombPtr c_eval(TypePtr x, TypePtr y) {
  TypePtr dom = t_tensor(x, t_hom(x, y));
  return mk_comb(CombTag::eval, "", {x, y}, {}, std::move(dom), y);
}

CombPtr c_comp(CombPtr g, CombPtr f) {
  if (!type_eq(f->cod, g->dom))
    fail_type("combinator composition mismatch: " + print_type(f->cod) +
              " vs " + print_type(g->dom));
  TypePtr dom = f->dom, cod = g->cod;
  return mk_comb(CombTag::comp, "", {}, {std::move(g), std::move(f)},
                 std::move(dom), std::move(cod));
}

CombPtr c_tensor(CombPtr f, CombPtr g) {
  TypePtr dom = t_tensor(f->dom, g->dom);
  TypePtr cod = t_tensor(f->cod, g->cod);
  return mk_comb(CombTag::tensor, "", {}, {std::move(f), std::move(g)},
                 std::move(dom), std::move(cod));
}

CombPtr c_curry(CombPtr f) {
  if (f->dom->tag != TypeTag::Tensor)
    fail_type("curry needs a combinator with a tensor domain, got " +
              print_type(f->dom));
  TypePtr x = f->dom->left, y = f->dom->right;
  TypePtr cod = t_hom(x, f->cod);
  return mk_comb(CombTag::curry, "", {}, {std::move(f)}, y, std::move(cod));
}

bool comb_eq(const CombPtr& a, const CombPtr& b) {
  if (a == b) return true;
  if (a->tag != b->tag || a->fn != b->fn) return false;
  if (a->at.size() != b->at.size() || a->subs.size() != b->subs.size())
    return false;
  for (std::size_t i = 0; i < a->at.size(); ++i)
    if (!type_eq(a->at[i], b->at[i])) return false;
  for (std::size_t i = 0; i < a->subs.size(); ++i)
    if (!comb_eq(a->subs[i], b->subs[i])) return false;
  return a->tag != CombTag::fn ||
         (type_eq(a->dom, b->dom) && type_eq(a->cod, b->cod));
}

static std::string comb_tag_word(CombTag t) {
  switch (t) {
  case CombTag::id: return "id";
  case CombTag::assoc: return "assoc";
  case CombTag::unassoc: return "unassoc";
  case CombTag::braid: return "braid";
  case CombTag::left: return "left";
  case CombTag::unleft: return "unleft";
  case CombTag::right: return "right";
  case CombTag::unright: return "unright";
  case CombTag::eval: return "eval";
  default: return "";
  }
}

std::string print_comb(const CombPtr& c) {
  auto wrap = [](const CombPtr& u, const std::string& s) {
    if (u->tag == CombTag::comp) return "(" + s + ")";
    return s;
  };
  switch (c->tag) {
  case CombTag::fn:
    return c->fn;
  case CombTag::comp:
    return wrap(c->subs[0], print_comb(c->subs[0])) + " . " +
           wrap(c->subs[1], print_comb(c->subs[1]));
  case CombTag::tensor:
    return "(" + print_comb(c->subs[0]) + " (x) " + print_comb(c->subs[1]) +
           ")";
  case CombTag::curry:
    return "curry(" + print_comb(c->subs[0]) + ")";
  default:
    return comb_tag_word(c->tag);
  }
}

// --- linear terms ----------------------------------------------------------------

LinPtr lin_var(std::string name, TypePtr ty) {
  auto t = std::make_shared<LinTerm>();
  t->tag = LinTag::var;
  t->var = std::move(name);
  t->var_type = std::move(ty);
  return t;
}

LinPtr lin_one() {
  auto t = std::make_shared<LinTerm>();
  t->tag = LinTag::one;
  return t;
}

LinPtr lin_tensor(LinPtr s, LinPtr t) {
  auto r = std::make_shared<LinTerm>();
  r->tag = LinTag::tensor;
  r->subs = {std::move(s), std::move(t)};
  return r;
}

LinPtr lin_apply(CombPtr c, LinPtr arg) {
  auto r = std::make_shared<LinTerm>();
  r->tag = LinTag::apply;
  r->comb = std::move(c);
  r->subs = {std::move(arg)};
  return r;
}

TypePtr lin_type(const LinPtr& t) {
  switch (t->tag) {
  case LinTag::var:
    return t->var_type;
  case LinTag::one:
    return t_unit();
  case LinTag::tensor:
    return t_tensor(lin_type(t->subs[0]), lin_type(t->subs[1]));
  case LinTag::apply:
    return t->comb->cod;
  }
  fail_internal("unreachable linear-term tag");
}

namespace {

void collect_lin_vars(const LinPtr& t,
                      std::vector<std::pair<std::string, TypePtr>>& out) {
  switch (t->tag) {
  case LinTag::var:
    out.emplace_back(t->var, t->var_type);
    return;
  case LinTag::one:
    return;
  default:
    for (const auto& s : t->subs) collect_lin_vars(s, out);
    return;
  }
}

TypePtr lin_check_rec(const LinPtr& t) {
  switch (t->tag) {
  case LinTag::var:
    if (!t->var_type) fail_type("variable '" + t->var + "' carries no type");
    return t->var_type;
  case LinTag::one:
    return t_unit();
  case LinTag::tensor:
    return t_tensor(lin_check_rec(t->subs[0]), lin_check_rec(t->subs[1]));
  case LinTag::apply: {
    TypePtr at = lin_check_rec(t->subs[0]);
    if (!type_eq(at, t->comb->dom))
      fail_type("combinator " + print_comb(t->comb) +
                " applied to a term of type " + print_type(at) +
                ", expected " + print_type(t->comb->dom));
    return t->comb->cod;
  }
  }
  fail_internal("unreachable linear-term tag");
}

} // namespace

std::vector<std::pair<std::string, TypePtr>> lin_vars(const LinPtr& t) {
  std::vector<std::pair<std::string, TypePtr>> out;
  collect_lin_vars(t, out);
  return out;
}

TypePtr lin_typecheck(const LinPtr& t) {
  TypePtr ty = lin_check_rec(t);
  std::set<std::string> seen;
  for (const auto& [name, vt] : lin_vars(t)) {
    if (seen.count(name))
      fail_type("variable '" + name +
                "' is used more than once; linear terms use each variable at "
                "most once");
    seen.insert(name);
  }
  return ty;
}

std::string print_lterm(const LinPtr& t) {
  switch (t->tag) {
  case LinTag::var:
    return t->var;
  case LinTag::one:
    return "1";
  case LinTag::tensor:
    return "(" + print_lterm(t->subs[0]) + " (x) " + print_lterm(t->subs[1]) +
           ")";
  case LinTag::apply: {
    std::string head = print_comb(t->comb);
    if (t->comb->tag == CombTag::comp || t->comb->tag == CombTag::tensor)
      head = "(" + head + ")";
    return head + "(" + print_lterm(t->subs[0]) + ")";
  }
  }
  fail_internal("unreachable linear-term tag");
}

bool lterm_eq(const LinPtr& a, const LinPtr& b) {
  if (a == b) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case LinTag::var:
    return a->var == b->var && type_eq(a->var_type, b->var_type);
  case LinTag::one:
    return true;
  case LinTag::tensor:
    return lterm_eq(a->subs[0], b->subs[0]) && lterm_eq(a->subs[1], b->subs[1]);
  case LinTag::apply:
    return comb_eq(a->comb, b->comb) && lterm_eq(a->subs[0], b->subs[0]);
  }
  return false;
}

// --- decomposition ---------------------------------------------------------------

CpVp cpvp(const LinPtr& t) {
  switch (t->tag) {
  case LinTag::var:
    return {c_id(t->var_type), t};
  case LinTag::one:
    return {c_id(t_unit()), t};
  case LinTag::tensor: {
    CpVp a = cpvp(t->subs[0]);
    CpVp b = cpvp(t->subs[1]);
    return {c_tensor(a.cp, b.cp), lin_tensor(a.vp, b.vp)};
  }
  case LinTag::apply: {
    CpVp a = cpvp(t->subs[0]);
    return {c_comp(t->comb, a.cp), a.vp};
  }
  }
  fail_internal("unreachable linear-term tag");
}

// --- translations ------------------------------------------------------------------

LinTheory kernel_to_theory(const Signature& sig) {
  if (!mode_has_closed(sig.mode) || !mode_braiding_symmetric(sig.mode) ||
      mode_has_cartesian(sig.mode) || mode_has_duals(sig.mode))
    fail_invalid("linear type theories correspond to closed symmetric "
                 "signatures; got mode " +
                 std::string(mode_name(sig.mode)));
  return LinTheory{std::make_shared<const Signature>(sig)};
}

Signature theory_to_kernel(const LinTheory& th) {
  if (!th.sig) fail_invalid("empty theory");
  return *th.sig;
}

MorPtr comb_to_kernel(const CombPtr& c) {
  switch (c->tag) {
  case CombTag::fn:
    return m_gen(c->fn);
  case CombTag::id:
    return m_id(c->at[0]);
  case CombTag::assoc:
    return m_assoc(c->at[0], c->at[1], c->at[2]);
  case CombTag::unassoc:
    return m_unassoc(c->at[0], c->at[1], c->at[2]);
  case CombTag::braid:
    return m_braid(c->at[0], c->at[1]);
  case CombTag::left:
    return m_leftu(c->at[0]);
  case CombTag::unleft:
    return m_unleftu(c->at[0]);
  case CombTag::right:
    return m_rightu(c->at[0]);
  case CombTag::unright:
    return m_unrightu(c->at[0]);
  case CombTag::eval:
    return m_ev(c->at[0], c->at[1]);
  case CombTag::comp:
    // comp(g, f) is g after f; kernel composition reads left to right.
    return m_seq(comb_to_kernel(c->subs[1]), comb_to_kernel(c->subs[0]));
  case CombTag::tensor:
    return m_par(comb_to_kernel(c->subs[0]), comb_to_kernel(c->subs[1]));
  case CombTag::curry:
    return m_curry(comb_to_kernel(c->subs[0]));
  }
  fail_internal("unreachable combinator tag");
}

CombPtr kernel_to_comb(const MorPtr& m, const Signature& sig) {
  switch (m->tag) {
  case MorTag::Gen: {
    const GenDecl* g = sig.find_gen(m->gen_name);
    if (!g) fail_type("unknown generator '" + m->gen_name + "'");
    return c_fn(g->name, g->dom, g->cod);
  }
  case MorTag::Id:
    return c_id(m->types[0]);
  case MorTag::Seq:
    return c_comp(kernel_to_comb(m->subs[1], sig),
                  kernel_to_comb(m->subs[0], sig));
  case MorTag::Par:
    return c_tensor(kernel_to_comb(m->subs[0], sig),
                    kernel_to_comb(m->subs[1], sig));
  case MorTag::Assoc:
    return c_assoc(m->types[0], m->types[1], m->types[2]);
  case MorTag::Unassoc:
    return c_unassoc(m->types[0], m->types[1], m->types[2]);
  case MorTag::LeftU:
    return c_left(m->types[0]);
  case MorTag::UnleftU:
    return c_unleft(m->types[0]);
  case MorTag::RightU:
    return c_right(m->types[0]);
  case MorTag::UnrightU:
    return c_unright(m->types[0]);
  case MorTag::Braid:
    return c_braid(m->types[0], m->types[1]);
  case MorTag::BraidInv:
    // the inverse braiding at (X, Y) is the braiding at (Y, X)
    return c_braid(m->types[1], m->types[0]);
  case MorTag::Curry:
    return c_curry(kernel_to_comb(m->subs[0], sig));
  case MorTag::Uncurry: {
    CombPtr g = kernel_to_comb(m->subs[0], sig);
    if (g->cod->tag != TypeTag::Hom)
      fail_type("uncurried term does not end in a function type");
    TypePtr x = g->cod->left, z = g->cod->right;
    return c_comp(c_eval(x, z), c_tensor(c_id(x), g));
  }
  case MorTag::Ev:
    return c_eval(m->types[0], m->types[1]);
  case MorTag::Name:
    return kernel_to_comb(expand_name(m, sig), sig);
  default:
    fail_invalid("no combinator reading for '" +
                 std::string(mor_tag_name(m->tag)) +
                 "'; theories cover the closed symmetric fragment");
  }
}

// --- equivalence --------------------------------------------------------------------

namespace {

// Structural alignment of a variable part over the canonical variable order:
// a kernel morphism tensor(canonical atoms) -> type(vp).
MorPtr vp_alignment(const LinPtr& vp,
                    const std::vector<std::pair<std::string, TypePtr>>& canon,
                    Mode mode) {
  // Atom offsets per canonical variable.
  std::vector<TypePtr> canon_atoms;
  std::map<std::string, std::pair<std::size_t, std::size_t>> block; // off,len
  for (const auto& [name, ty] : canon) {
    std::vector<TypePtr> atoms = flatten_type(ty);
    block[name] = {canon_atoms.size(), atoms.size()};
    for (auto& a : atoms) canon_atoms.push_back(std::move(a));
  }
  // Destination offsets in the flattened variable part.
  TypePtr vp_ty = lin_type(vp);
  std::vector<std::pair<std::string, TypePtr>> order = lin_vars(vp);
  std::vector<std::size_t> perm(canon_atoms.size());
  std::size_t off = 0;
  for (const auto& [name, ty] : order) {
    auto it = block.find(name);
    if (it == block.end())
      fail_internal("variable part mentions a variable outside the canonical "
                    "order");
    for (std::size_t a = 0; a < it->second.second; ++a)
      perm[it->second.first + a] = off + a;
    off += it->second.second;
  }
  if (off != canon_atoms.size())
    fail_internal("variable parts disagree on their atom count");
  MorPtr route = perm_to_mor(perm, canon_atoms, mode);
  return m_seq(std::move(route), structural_nf_inv(vp_ty, mode));
}

} // namespace

EqVerdict lin_equiv_terms(const LinPtr& t1, const LinPtr& t2,
                          const Signature& sig, const Strategy& st) {
  TypePtr ty1 = lin_typecheck(t1);
  TypePtr ty2 = lin_typecheck(t2);
  if (!type_eq(ty1, ty2))
    fail_type("compared terms have different types: " + print_type(ty1) +
              " vs " + print_type(ty2));
  auto v1 = lin_vars(t1);
  auto v2 = lin_vars(t2);
  {
    std::map<std::string, TypePtr> m1;
    for (const auto& [n, ty] : v1) m1[n] = ty;
    if (v1.size() != v2.size())
      fail_type("compared terms use different variables");
    for (const auto& [n, ty] : v2) {
      auto it = m1.find(n);
      if (it == m1.end()) fail_type("compared terms use different variables");
      if (!type_eq(it->second, ty))
        fail_type("variable '" + n + "' occurs with two different types");
    }
  }
  CpVp d1 = cpvp(t1);
  CpVp d2 = cpvp(t2);
  // Canonical variable order: left-to-right order of the first term.
  MorPtr a1 = vp_alignment(d1.vp, v1, sig.mode);
  MorPtr a2 = vp_alignment(d2.vp, v1, sig.mode);
  MorPtr k1 = m_seq(std::move(a1), comb_to_kernel(d1.cp));
  MorPtr k2 = m_seq(std::move(a2), comb_to_kernel(d2.cp));
  return eq_decide(k1, k2, sig, st);
}

namespace {

LinPtr canonical_basic_term(const TypePtr& ty, std::size_t& counter) {
  switch (ty->tag) {
  case TypeTag::Unit:
    return lin_one();
  case TypeTag::Tensor:
    return lin_tensor(canonical_basic_term(ty->left, counter),
                      canonical_basic_term(ty->right, counter));
  default:
    // basic types and function types get a fresh variable
    return lin_var("v" + std::to_string(++counter), ty);
  }
}

} // namespace

EqVerdict lin_equiv_combinators(const CombPtr& f, const CombPtr& g,
                                const Signature& sig, const Strategy& st) {
  if (!type_eq(f->dom, g->dom) || !type_eq(f->cod, g->cod))
    fail_type("compared combinators have different types: " +
              print_type(f->dom) + " -> " + print_type(f->cod) + " vs " +
              print_type(g->dom) + " -> " + print_type(g->cod));
  std::size_t counter = 0;
  LinPtr b = canonical_basic_term(f->dom, counter);
  LinPtr t1 = lin_apply(f, b);
  LinPtr t2 = lin_apply(g, b);
  TypePtr cod = f->cod;
  while (cod->tag == TypeTag::Hom) {
    LinPtr w = lin_var("v" + std::to_string(++counter), cod->left);
    t1 = lin_apply(c_eval(cod->left, cod->right), lin_tensor(w, t1));
    t2 = lin_apply(c_eval(cod->left, cod->right), lin_tensor(w, t2));
    cod = cod->right;
  }
  return lin_equiv_terms(t1, t2, sig, st);
}

// --- parsing -----------------------------------------------------------------------

namespace {

struct LtermParser {
  Lexer& lex;
  const Signature& sig;

  bool basic_comb_name(const std::string& w) const {
    return w == "id" || w == "assoc" || w == "unassoc" || w == "braid" ||
           w == "left" || w == "unleft" || w == "right" || w == "unright" ||
           w == "eval";
  }

  // A combinator applied to a term whose type is already known.
  CombPtr comb_for(const Token& tok, const std::string& w,
                   const TypePtr& arg_ty) {
    if (w == "id") return c_id(arg_ty);
    if (w == "assoc") {
      if (arg_ty->tag != TypeTag::Tensor ||
          arg_ty->left->tag != TypeTag::Tensor)
        lex.fail_at(tok, "assoc needs an argument of type (X (x) Y) (x) Z");
      return c_assoc(arg_ty->left->left, arg_ty->left->right, arg_ty->right);
    }
    if (w == "unassoc") {
      if (arg_ty->tag != TypeTag::Tensor ||
          arg_ty->right->tag != TypeTag::Tensor)
        lex.fail_at(tok, "unassoc needs an argument of type X (x) (Y (x) Z)");
      return c_unassoc(arg_ty->left, arg_ty->right->left,
                       arg_ty->right->right);
    }
    if (w == "braid") {
      if (arg_ty->tag != TypeTag::Tensor)
        lex.fail_at(tok, "braid needs an argument of tensor type");
      return c_braid(arg_ty->left, arg_ty->right);
    }
    if (w == "left") {
      if (arg_ty->tag != TypeTag::Tensor || arg_ty->left->tag != TypeTag::Unit)
        lex.fail_at(tok, "left needs an argument of type I (x) X");
      return c_left(arg_ty->right);
    }
    if (w == "unleft") return c_unleft(arg_ty);
    if (w == "right") {
      if (arg_ty->tag != TypeTag::Tensor ||
          arg_ty->right->tag != TypeTag::Unit)
        lex.fail_at(tok, "right needs an argument of type X (x) I");
      return c_right(arg_ty->left);
    }
    if (w == "unright") return c_unright(arg_ty);
    if (w == "eval") {
      if (arg_ty->tag != TypeTag::Tensor ||
          arg_ty->right->tag != TypeTag::Hom ||
          !type_eq(arg_ty->right->left, arg_ty->left))
        lex.fail_at(tok, "eval needs an argument of type X (x) (X -o Y)");
      return c_eval(arg_ty->left, arg_ty->right->right);
    }
    fail_internal("comb_for called with a non-basic name");
  }

  // Combinators nameable without knowing an argument type: function symbols
  // and curry of those.
  CombPtr closed_comb() {
    Token tok = lex.expect_ident();
    if (tok.text == "curry") {
      lex.expect_punct("(");
      CombPtr inner = closed_comb();
      lex.expect_punct(")");
      return c_curry(inner);
    }
    if (const GenDecl* g = sig.find_gen(tok.text))
      return c_fn(g->name, g->dom, g->cod);
    if (basic_comb_name(tok.text))
      lex.fail_at(tok, "cannot infer the type arguments of '" + tok.text +
                           "' here; apply it to a term directly");
    lex.fail_at(tok, "unknown function symbol '" + tok.text + "'");
  }

  LinPtr term() {
    const Token& t = lex.peek();
    if (lex.peek_punct("(")) {
      lex.next();
      LinPtr s = term();
      // the tensor operator is written (x)
      lex.expect_punct("(");
      Token x = lex.expect_ident();
      if (x.text != "x") lex.fail_at(x, "expected the tensor operator (x)");
      lex.expect_punct(")");
      LinPtr u = term();
      lex.expect_punct(")");
      return lin_tensor(std::move(s), std::move(u));
    }
    if (t.kind != TokKind::Ident) lex.fail_at(t, "expected a linear term");
    if (t.text == "1") {
      lex.next();
      return lin_one();
    }
    // IDENT ':' type  — a variable
    if (lex.peek_punct(":", 1)) {
      Token name = lex.next();
      lex.expect_punct(":");
      TypePtr ty = parse_type_tokens(lex, sig, false);
      return lin_var(name.text, std::move(ty));
    }
    // combinator application: COMB '(' lterm ')'
    if (t.text == "curry") {
      CombPtr c = closed_comb();
      lex.expect_punct("(");
      LinPtr arg = term();
      lex.expect_punct(")");
      TypePtr at = lin_type(arg);
      if (!type_eq(at, c->dom))
        fail_type("combinator " + print_comb(c) +
                  " applied to a term of type " + print_type(at) +
                  ", expected " + print_type(c->dom));
      return lin_apply(std::move(c), std::move(arg));
    }
    Token name = lex.next();
    lex.expect_punct("(");
    LinPtr arg = term();
    lex.expect_punct(")");
    TypePtr at = lin_type(arg);
    if (basic_comb_name(name.text))
      return lin_apply(comb_for(name, name.text, at), std::move(arg));
    if (const GenDecl* g = sig.find_gen(name.text)) {
      if (!type_eq(at, g->dom))
        fail_type("function symbol '" + g->name +
                  "' applied to a term of type " + print_type(at) +
                  ", expected " + print_type(g->dom));
      return lin_apply(c_fn(g->name, g->dom, g->cod), std::move(arg));
    }
    lex.fail_at(name, "unknown combinator or function symbol '" + name.text +
                          "'");
  }
};

} // namespace

LinPtr parse_lterm(std::string_view src, const Signature& sig) {
  Lexer lex(src);
  LtermParser p{lex, sig};
  LinPtr t = p.term();
  if (!lex.at_end())
    lex.fail_at(lex.peek(), "unexpected trailing input after linear term");
  return t;
}

} // namespace freecat
