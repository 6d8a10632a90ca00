#include "freecat/mill.hpp"

#include <utility>

#include "freecat/error.hpp"
#include "freecat/parse.hpp"

namespace freecat {

std::string print_sequent(const Sequent& s, Mode mode) {
  return print_type(s.lhs, mode) + " |- " + print_type(s.rhs, mode);
}

ProofPtr make_proof(std::string rule, std::vector<ProofPtr> premises,
                    Sequent conclusion) {
  return std::make_shared<const ProofNode>(
      ProofNode{std::move(rule), std::move(premises), std::move(conclusion)});
}

bool is_core_rule(std::string_view tag) {
  return tag == "i" || tag == "cut" || tag == "tensor" || tag == "a" ||
         tag == "a-inv" || tag == "l" || tag == "l-inv" || tag == "r" ||
         tag == "r-inv" || tag == "b" || tag == "c" || tag == "c-inv";
}

bool is_macro_rule(std::string_view tag) {
  return tag == "ev" || tag == "alpha" || tag == "alpha-inv" ||
         tag == "icomp";
}

namespace {

std::size_t core_rule_arity(std::string_view tag) {
  if (tag == "i")
    return 0;
  if (tag == "cut" || tag == "tensor")
    return 2;
  return 1;
}

// Types in proofs written without a signature are read against this:
// every identifier is a basic object and the full connective set is legal.
const Signature& permissive_sig() {
  static const Signature s = [] {
    Signature sig;
    sig.mode = Mode::closed_symmetric;
    return sig;
  }();
  return s;
}

Sequent parse_sequent(const Token& tok, const Lexer& outer,
                      const Signature& sig, bool lenient) {
  Lexer lex(tok.text);
  Sequent s;
  try {
    s.lhs = parse_type_tokens(lex, sig, lenient);
    lex.expect_punct("|-");
    s.rhs = parse_type_tokens(lex, sig, lenient);
    if (!lex.at_end())
      lex.fail_at(lex.peek(), "trailing input after sequent");
  } catch (const FcError& e) {
    outer.fail_at(tok, std::string("in sequent \"") + tok.text +
                           "\": " + e.what());
  }
  return s;
}

// Rule tags may contain hyphens (c-inv); the lexer splits those into
// ident/punct/ident, so reassemble.
std::string read_rule_tag(Lexer& lex) {
  Token t = lex.expect_ident();
  std::string tag = t.text;
  while (lex.peek_punct("-") && lex.peek(1).kind == TokKind::Ident) {
    lex.next();
    tag += "-" + lex.next().text;
  }
  return tag;
}

ProofPtr parse_proof_tokens(Lexer& lex, const Signature& sig, bool lenient) {
  lex.expect_punct("(");
  std::string tag = read_rule_tag(lex);
  std::vector<ProofPtr> premises;
  while (lex.peek_punct("("))
    premises.push_back(parse_proof_tokens(lex, sig, lenient));
  if (lex.peek().kind != TokKind::Str)
    lex.fail_at(lex.peek(), "expected the node's conclusion sequent string");
  Token ctok = lex.next();
  Sequent conclusion = parse_sequent(ctok, lex, sig, lenient);
  lex.expect_punct(")");
  return make_proof(std::move(tag), std::move(premises),
                    std::move(conclusion));
}

struct ProofSrcCtx {
  const Signature& sig;
  bool lenient;
};

ProofSrcCtx proof_ctx(const Signature* sig) {
  if (sig)
    return ProofSrcCtx{*sig, false};
  return ProofSrcCtx{permissive_sig(), true};
}

TypePtr hom_at(const TypePtr& x, const TypePtr& z, Mode mode) {
  return canonical_type(t_hom(x, z), mode);
}

} // namespace

ProofPtr parse_proof(std::string_view src, const Signature* sig) {
  ProofSrcCtx ctx = proof_ctx(sig);
  Lexer lex(src);
  if (lex.peek_ident("proof")) {
    lex.next();
    lex.expect_ident();
    lex.expect_punct("=");
  }
  ProofPtr p = parse_proof_tokens(lex, ctx.sig, ctx.lenient);
  if (!lex.at_end())
    lex.fail_at(lex.peek(), "trailing input after proof");
  return p;
}

std::vector<NamedProof> parse_proof_decls(std::string_view src,
                                          const Signature* sig) {
  ProofSrcCtx ctx = proof_ctx(sig);
  Lexer lex(src);
  std::vector<NamedProof> out;
  while (!lex.at_end()) {
    if (!lex.peek_ident("proof"))
      lex.fail_at(lex.peek(), "expected `proof <name> = (...)`");
    lex.next();
    NamedProof np;
    np.name = lex.expect_ident().text;
    lex.expect_punct("=");
    np.proof = parse_proof_tokens(lex, ctx.sig, ctx.lenient);
    out.push_back(std::move(np));
  }
  return out;
}

ProofPtr expand_macro(std::string_view tag,
                      const std::vector<TypePtr>& bindings,
                      const std::vector<ProofPtr>& premises, Mode mode) {
  auto need = [&](std::size_t nb, std::size_t np) {
    if (bindings.size() != nb)
      fail_invalid("macro " + std::string(tag) + " needs " +
                   std::to_string(nb) + " type bindings, got " +
                   std::to_string(bindings.size()));
    if (premises.size() != np)
      fail_invalid("macro " + std::string(tag) + " needs " +
                   std::to_string(np) + " premises, got " +
                   std::to_string(premises.size()));
  };
  if (tag == "ev") {
    need(2, 0);
    const TypePtr& x = bindings[0];
    const TypePtr& y = bindings[1];
    TypePtr h = hom_at(x, y, mode);
    ProofPtr id = make_proof("i", {}, Sequent{h, h});
    return make_proof("c-inv", {id}, Sequent{t_tensor(x, h), y});
  }
  if (tag == "alpha" || tag == "alpha-inv") {
    need(4, 1);
    const TypePtr& a = bindings[0];
    const TypePtr& b = bindings[1];
    const TypePtr& c = bindings[2];
    const TypePtr& d = bindings[3];
    TypePtr left_nested = t_tensor(t_tensor(a, b), c);
    TypePtr right_nested = t_tensor(a, t_tensor(b, c));
    if (tag == "alpha") {
      // Premise A*(B*C) |- D; reassociate the assumption, then cut.
      ProofPtr id = make_proof("i", {}, Sequent{left_nested, left_nested});
      ProofPtr reassoc =
          make_proof("a", {id}, Sequent{left_nested, right_nested});
      if (!type_eq(premises[0]->conclusion.lhs, right_nested))
        fail_invalid("macro alpha premise must conclude from A*(B*C)");
      return make_proof("cut", {reassoc, premises[0]},
                        Sequent{left_nested, d});
    }
    ProofPtr id = make_proof("i", {}, Sequent{right_nested, right_nested});
    ProofPtr reassoc =
        make_proof("a-inv", {id}, Sequent{right_nested, left_nested});
    if (!type_eq(premises[0]->conclusion.lhs, left_nested))
      fail_invalid("macro alpha-inv premise must conclude from (A*B)*C");
    return make_proof("cut", {reassoc, premises[0]},
                      Sequent{right_nested, d});
  }
  if (tag == "icomp") {
    need(3, 0);
    const TypePtr& x = bindings[0];
    const TypePtr& y = bindings[1];
    const TypePtr& z = bindings[2];
    TypePtr hxy = hom_at(x, y, mode);
    TypePtr hyz = hom_at(y, z, mode);
    ProofPtr ev_xy = expand_macro("ev", {x, y}, {}, mode);
    ProofPtr id_yz = make_proof("i", {}, Sequent{hyz, hyz});
    TypePtr lhs_nested = t_tensor(t_tensor(x, hxy), hyz);
    ProofPtr both = make_proof("tensor", {ev_xy, id_yz},
                               Sequent{lhs_nested, t_tensor(y, hyz)});
    ProofPtr ev_yz = expand_macro("ev", {y, z}, {}, mode);
    ProofPtr cut = make_proof("cut", {both, ev_yz}, Sequent{lhs_nested, z});
    ProofPtr reassoc = expand_macro("alpha-inv", {x, hxy, hyz, z}, {cut},
                                    mode);
    return make_proof(
        "c", {reassoc},
        Sequent{t_tensor(hxy, hyz), hom_at(x, z, mode)});
  }
  fail_invalid("unknown macro rule: " + std::string(tag));
}

namespace {

// Read a macro node's bindings off its stated conclusion.
std::vector<TypePtr> macro_bindings(const ProofNode& n, Mode mode) {
  const TypePtr& l = n.conclusion.lhs;
  const TypePtr& r = n.conclusion.rhs;
  auto bad = [&](const std::string& want) -> std::vector<TypePtr> {
    fail_invalid("macro " + n.rule + " conclusion must have the shape " +
                 want + ", got " + print_sequent(n.conclusion, mode));
  };
  if (n.rule == "ev") {
    // X*(X-oY) |- Y
    TypePtr hx, hy;
    if (l->tag != TypeTag::Tensor || !split_hom_type(l->right, mode, hx, hy))
      return bad("X*(X-oY) |- Y");
    if (!type_eq(l->left, hx) || !type_eq(r, hy))
      return bad("X*(X-oY) |- Y");
    return {l->left, r};
  }
  if (n.rule == "alpha") {
    // (A*B)*C |- D
    if (l->tag != TypeTag::Tensor || l->left->tag != TypeTag::Tensor)
      return bad("(A*B)*C |- D");
    return {l->left->left, l->left->right, l->right, r};
  }
  if (n.rule == "alpha-inv") {
    // A*(B*C) |- D
    if (l->tag != TypeTag::Tensor || l->right->tag != TypeTag::Tensor)
      return bad("A*(B*C) |- D");
    return {l->left, l->right->left, l->right->right, r};
  }
  if (n.rule == "icomp") {
    // (X-oY)*(Y-oZ) |- X-oZ
    TypePtr x1, y1, y2, z1, x2, z2;
    if (l->tag != TypeTag::Tensor || !split_hom_type(l->left, mode, x1, y1) ||
        !split_hom_type(l->right, mode, y2, z1) ||
        !split_hom_type(r, mode, x2, z2))
      return bad("(X-oY)*(Y-oZ) |- X-oZ");
    if (!type_eq(y1, y2) || !type_eq(x1, x2) || !type_eq(z1, z2))
      return bad("(X-oY)*(Y-oZ) |- X-oZ");
    return {x1, y1, z1};
  }
  fail_invalid("unknown macro rule: " + n.rule);
}

} // namespace

ProofPtr expand_macros(const ProofPtr& p, Mode mode) {
  std::vector<ProofPtr> premises;
  premises.reserve(p->premises.size());
  for (const auto& q : p->premises)
    premises.push_back(expand_macros(q, mode));
  if (!is_macro_rule(p->rule)) {
    return make_proof(p->rule, std::move(premises), p->conclusion);
  }
  ProofPtr expanded =
      expand_macro(p->rule, macro_bindings(*p, mode), premises, mode);
  if (!type_eq(expanded->conclusion.lhs, p->conclusion.lhs) ||
      !type_eq(expanded->conclusion.rhs, p->conclusion.rhs))
    fail_invalid("macro " + p->rule +
                 " expansion concludes " +
                 print_sequent(expanded->conclusion, mode) +
                 " but the node states " +
                 print_sequent(p->conclusion, mode));
  return expanded;
}

namespace {

struct Checker {
  const Signature* sig;
  Mode mode;
  std::vector<ProofIssue>* issues;

  void report(const std::string& path, const std::string& msg) const {
    issues->push_back(ProofIssue{path, msg});
  }

  void walk(const ProofPtr& p, const std::string& path) const {
    const std::string here =
        path.empty() ? p->rule : path + "/" + p->rule;

    if (is_macro_rule(p->rule)) {
      // Premises are checked inside the expansion, which embeds them.
      ProofPtr expanded;
      try {
        expanded = expand_macros(p, mode);
      } catch (const FcError& e) {
        report(here, e.what());
        return;
      }
      walk(expanded, path);
      return;
    }

    for (std::size_t i = 0; i < p->premises.size(); ++i)
      walk(p->premises[i], here + "[" + std::to_string(i) + "]");

    if (sig) {
      for (const TypePtr* side : {&p->conclusion.lhs, &p->conclusion.rhs})
        if (auto bad = type_mode_violation(*side, mode)) {
          report(here, *bad);
          return;
        }
    }

    if (is_core_rule(p->rule)) {
      const std::size_t arity = core_rule_arity(p->rule);
      if (p->premises.size() != arity) {
        report(here, "rule " + p->rule + " takes " + std::to_string(arity) +
                         " premises, got " +
                         std::to_string(p->premises.size()));
        return;
      }
      check_schema(p, here);
      return;
    }

    // Nonlogical axiom: a generator citation.
    if (!p->premises.empty()) {
      report(here, "unknown rule " + p->rule + " used with premises");
      return;
    }
    if (sig) {
      const GenDecl* g = sig->find_gen(p->rule);
      if (!g) {
        report(here, "axiom leaf cites unknown generator " + p->rule);
        return;
      }
      if (!type_eq(p->conclusion.lhs, canonical_type(g->dom, mode)) ||
          !type_eq(p->conclusion.rhs, canonical_type(g->cod, mode)))
        report(here, "generator " + p->rule + " proves " +
                         print_sequent(Sequent{g->dom, g->cod}, mode) +
                         ", not " + print_sequent(p->conclusion, mode));
    }
  }

  void check_schema(const ProofPtr& p, const std::string& here) const {
    const Sequent& c = p->conclusion;
    auto mismatch = [&](const std::string& why) {
      report(here, "rule " + p->rule + ": " + why + " (conclusion " +
                       print_sequent(c, mode) + ")");
    };

    if (p->rule == "i") {
      if (!type_eq(c.lhs, c.rhs))
        mismatch("both sides must be the same formula");
      return;
    }

    const Sequent& p0 = p->premises[0]->conclusion;
    if (p->rule == "cut") {
      const Sequent& p1 = p->premises[1]->conclusion;
      if (!type_eq(p0.rhs, p1.lhs))
        mismatch("intermediate formulas of the premises disagree");
      else if (!type_eq(c.lhs, p0.lhs) || !type_eq(c.rhs, p1.rhs))
        mismatch("conclusion must join the premises' outer formulas");
      return;
    }
    if (p->rule == "tensor") {
      const Sequent& p1 = p->premises[1]->conclusion;
      if (!type_eq(c.lhs, t_tensor(p0.lhs, p1.lhs)) ||
          !type_eq(c.rhs, t_tensor(p0.rhs, p1.rhs)))
        mismatch("conclusion must tensor the premises pointwise");
      return;
    }
    if (p->rule == "a") {
      if (p0.rhs->tag != TypeTag::Tensor ||
          p0.rhs->left->tag != TypeTag::Tensor) {
        mismatch("premise right side must have the shape (X*Y)*Z");
        return;
      }
      TypePtr want = t_tensor(p0.rhs->left->left,
                              t_tensor(p0.rhs->left->right, p0.rhs->right));
      if (!type_eq(c.lhs, p0.lhs) || !type_eq(c.rhs, want))
        mismatch("conclusion must reassociate the premise to X*(Y*Z)");
      return;
    }
    if (p->rule == "a-inv") {
      if (p0.rhs->tag != TypeTag::Tensor ||
          p0.rhs->right->tag != TypeTag::Tensor) {
        mismatch("premise right side must have the shape X*(Y*Z)");
        return;
      }
      TypePtr want = t_tensor(t_tensor(p0.rhs->left, p0.rhs->right->left),
                              p0.rhs->right->right);
      if (!type_eq(c.lhs, p0.lhs) || !type_eq(c.rhs, want))
        mismatch("conclusion must reassociate the premise to (X*Y)*Z");
      return;
    }
    if (p->rule == "l") {
      if (p0.rhs->tag != TypeTag::Tensor ||
          p0.rhs->left->tag != TypeTag::Unit) {
        mismatch("premise right side must have the shape I*Y");
        return;
      }
      if (!type_eq(c.lhs, p0.lhs) || !type_eq(c.rhs, p0.rhs->right))
        mismatch("conclusion must drop the unit factor");
      return;
    }
    if (p->rule == "l-inv") {
      if (!type_eq(c.lhs, p0.lhs) ||
          !type_eq(c.rhs, t_tensor(t_unit(), p0.rhs)))
        mismatch("conclusion must prepend a unit factor");
      return;
    }
    if (p->rule == "r") {
      if (p0.rhs->tag != TypeTag::Tensor ||
          p0.rhs->right->tag != TypeTag::Unit) {
        mismatch("premise right side must have the shape Y*I");
        return;
      }
      if (!type_eq(c.lhs, p0.lhs) || !type_eq(c.rhs, p0.rhs->left))
        mismatch("conclusion must drop the unit factor");
      return;
    }
    if (p->rule == "r-inv") {
      if (!type_eq(c.lhs, p0.lhs) ||
          !type_eq(c.rhs, t_tensor(p0.rhs, t_unit())))
        mismatch("conclusion must append a unit factor");
      return;
    }
    if (p->rule == "b") {
      if (sig && !mode_has_braiding(mode)) {
        mismatch("rule b needs a braided mode, signature mode is " +
                 std::string(mode_name(mode)));
        return;
      }
      if (p0.rhs->tag != TypeTag::Tensor) {
        mismatch("premise right side must be a tensor");
        return;
      }
      if (!type_eq(c.lhs, p0.lhs) ||
          !type_eq(c.rhs, t_tensor(p0.rhs->right, p0.rhs->left)))
        mismatch("conclusion must swap the tensor factors");
      return;
    }
    if (p->rule == "c") {
      if (sig && !mode_has_closed(mode)) {
        mismatch("rule c needs a closed mode, signature mode is " +
                 std::string(mode_name(mode)));
        return;
      }
      if (p0.lhs->tag != TypeTag::Tensor) {
        mismatch("premise left side must be a tensor");
        return;
      }
      if (!type_eq(c.lhs, p0.lhs->right) ||
          !type_eq(c.rhs, hom_at(p0.lhs->left, p0.rhs, mode)))
        mismatch("conclusion must curry the first tensor factor");
      return;
    }
    if (p->rule == "c-inv") {
      if (sig && !mode_has_closed(mode)) {
        mismatch("rule c-inv needs a closed mode, signature mode is " +
                 std::string(mode_name(mode)));
        return;
      }
      TypePtr x, z;
      if (!split_hom_type(p0.rhs, mode, x, z)) {
        mismatch("premise right side must be an internal hom");
        return;
      }
      if (!type_eq(c.lhs, t_tensor(x, p0.lhs)) || !type_eq(c.rhs, z))
        mismatch("conclusion must uncurry the internal hom");
      return;
    }
  }
};

MorPtr compile(const ProofPtr& p) {
  const Sequent& c = p->conclusion;
  const std::string& r = p->rule;
  if (r == "i")
    return m_id(c.lhs);
  if (r == "cut")
    return m_seq(compile(p->premises[0]), compile(p->premises[1]));
  if (r == "tensor")
    return m_par(compile(p->premises[0]), compile(p->premises[1]));
  MorPtr f = p->premises.empty() ? nullptr : compile(p->premises[0]);
  if (r == "a")
    return m_seq(f, m_assoc(c.rhs->left, c.rhs->right->left,
                            c.rhs->right->right));
  if (r == "a-inv")
    return m_seq(f, m_unassoc(c.rhs->left->left, c.rhs->left->right,
                              c.rhs->right));
  if (r == "l")
    return m_seq(f, m_leftu(c.rhs));
  if (r == "l-inv")
    return m_seq(f, m_unleftu(p->premises[0]->conclusion.rhs));
  if (r == "r")
    return m_seq(f, m_rightu(c.rhs));
  if (r == "r-inv")
    return m_seq(f, m_unrightu(p->premises[0]->conclusion.rhs));
  if (r == "b") {
    const TypePtr& pr = p->premises[0]->conclusion.rhs;
    return m_seq(f, m_braid(pr->left, pr->right));
  }
  if (r == "c")
    return m_curry(f);
  if (r == "c-inv")
    return m_uncurry(f);
  return m_gen(r);
}

} // namespace

ProofReport check_proof(const ProofPtr& p, const Signature* sig) {
  ProofReport rep;
  Mode mode = sig ? sig->mode : Mode::closed_symmetric;
  Checker ck{sig, mode, &rep.issues};
  ck.walk(p, "");
  return rep;
}

MorPtr proof_to_mor(const ProofPtr& p, const Signature& sig) {
  ProofReport rep = check_proof(p, &sig);
  if (!rep.ok())
    fail_invalid("proof does not check: at " + rep.issues.front().path +
                 ": " + rep.issues.front().message);
  ProofPtr expanded = expand_macros(p, sig.mode);
  MorPtr t = compile(expanded);
  const DomCod dc = infer_dom_cod(t, sig);
  if (!type_eq(dc.dom, canonical_type(p->conclusion.lhs, sig.mode)) ||
      !type_eq(dc.cod, canonical_type(p->conclusion.rhs, sig.mode)))
    fail_internal("compiled proof boundary disagrees with its conclusion");
  return t;
}

} // namespace freecat
