#pragma once

// Seeded random generators for the property suites: well-typed kernel terms
// (random strict pipelines plus mode-specific wrappers), untyped lambda
// terms, linear terms and combinators.  Everything is driven by an explicit
// mt19937_64 so failures reproduce from the logged seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "freecat/lambda.hpp"
#include "freecat/lintype.hpp"
#include "freecat/signature.hpp"
#include "freecat/strict.hpp"
#include "freecat/term.hpp"
#include "freecat/types.hpp"

namespace freecat::test {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
inline bool coin(Rng& rng) { return pick(rng, 2) == 0; }

// --- kernel terms ------------------------------------------------------------

// Random diagram-fragment term: a strict pipeline of generator blocks and
// (above monoidal) wire permutations, rebuilt as an ordinary term.
inline MorPtr random_diagram_term(Rng& rng, const Signature& sig,
                                  std::size_t max_atoms = 4,
                                  std::size_t max_layers = 5) {
  std::vector<TypePtr> atoms;
  const std::size_t n0 = 1 + pick(rng, max_atoms);
  for (std::size_t i = 0; i < n0; ++i)
    atoms.push_back(t_basic(sig.objects[pick(rng, sig.objects.size())]));

  StrictTerm st;
  st.dom_atoms = atoms;
  const std::size_t layers = pick(rng, max_layers + 1);
  for (std::size_t l = 0; l < layers; ++l) {
    if (mode_has_braiding(sig.mode) && atoms.size() >= 2 && coin(rng)) {
      std::vector<std::size_t> perm(atoms.size());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<TypePtr> out(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i) out[perm[i]] = atoms[i];
      st.layers.push_back(PermLayer{perm});
      atoms = std::move(out);
      continue;
    }
    // generator applications at matching contiguous offsets
    struct Cand {
      std::size_t gi, off;
    };
    std::vector<Cand> cands;
    for (std::size_t gi = 0; gi < sig.generators.size(); ++gi) {
      auto dflat =
          flatten_type(canonical_type(sig.generators[gi].dom, sig.mode));
      if (dflat.size() > atoms.size()) continue;
      for (std::size_t off = 0; off + dflat.size() <= atoms.size(); ++off) {
        bool match = true;
        for (std::size_t j = 0; j < dflat.size(); ++j)
          if (!type_eq(atoms[off + j], dflat[j])) {
            match = false;
            break;
          }
        if (match) cands.push_back({gi, off});
      }
    }
    if (cands.empty()) continue;
    const Cand c = cands[pick(rng, cands.size())];
    const GenDecl& g = sig.generators[c.gi];
    auto dflat = flatten_type(canonical_type(g.dom, sig.mode));
    auto cflat = flatten_type(canonical_type(g.cod, sig.mode));
    st.layers.push_back(BlockLayer{c.off, g.name});
    std::vector<TypePtr> next(atoms.begin(), atoms.begin() + c.off);
    next.insert(next.end(), cflat.begin(), cflat.end());
    next.insert(next.end(), atoms.begin() + c.off + dflat.size(),
                atoms.end());
    atoms = std::move(next);
  }
  st.cod_atoms = atoms;
  return strict_to_mor(st, sig);
}

// Random term exercising the whole constructor family the mode admits:
// a diagram-fragment core wrapped in curry/uncurry/name, pairing,
// duplication/deletion, or a compact loop.
inline MorPtr random_term(Rng& rng, const Signature& sig,
                          std::size_t max_wraps = 2) {
  MorPtr t = random_diagram_term(rng, sig, 3, 4);
  const std::size_t wraps = pick(rng, max_wraps + 1);
  for (std::size_t w = 0; w < wraps; ++w) {
    DomCod dc = infer_dom_cod(t, sig);
    enum class Op { par, unit_detour, curry, uncurry, name, dup, del, pair,
                    loop };
    std::vector<Op> ops = {Op::par, Op::unit_detour};
    if (mode_has_closed(sig.mode)) {
      if (dc.dom->tag == TypeTag::Tensor) ops.push_back(Op::curry);
      TypePtr hx, hz;
      if (split_hom_type(dc.cod, sig.mode, hx, hz)) ops.push_back(Op::uncurry);
      ops.push_back(Op::name);
    }
    if (mode_has_cartesian(sig.mode)) {
      ops.push_back(Op::dup);
      ops.push_back(Op::del);
      ops.push_back(Op::pair);
    }
    if (mode_has_duals(sig.mode)) ops.push_back(Op::loop);
    switch (ops[pick(rng, ops.size())]) {
    case Op::par: {
      MorPtr s = random_diagram_term(rng, sig, 2, 2);
      t = coin(rng) ? m_par(t, s) : m_par(s, t);
      break;
    }
    case Op::unit_detour:
      t = m_seq(t, m_seq(m_unleftu(dc.cod), m_leftu(dc.cod)));
      break;
    case Op::curry:
      t = m_curry(t);
      break;
    case Op::uncurry:
      t = m_uncurry(t);
      break;
    case Op::name:
      t = m_name(t);
      break;
    case Op::dup:
      t = m_seq(t, m_dup(dc.cod));
      break;
    case Op::del:
      t = m_seq(t, m_del(dc.cod));
      break;
    case Op::pair:
      t = m_pair(t, t);
      break;
    case Op::loop: {
      TypePtr x = t_basic(sig.objects[pick(rng, sig.objects.size())]);
      MorPtr circle = m_seq_all(
          {m_cup(x), m_braid(t_dual(x), x), m_cap(x)});
      t = m_par(t, circle);
      break;
    }
    }
  }
  return t;
}

// --- untyped lambda terms ------------------------------------------------------

inline UPtr random_untyped_in(Rng& rng, std::size_t depth,
                              std::vector<std::string>& scope,
                              std::size_t& fresh) {
  if (depth == 0 || (!scope.empty() && pick(rng, 4) == 0))
    return u_var(scope.empty() ? "u" : scope[pick(rng, scope.size())]);
  if (scope.empty() || pick(rng, 3) == 0) {
    std::string v = "v" + std::to_string(fresh++);
    scope.push_back(v);
    UPtr b = random_untyped_in(rng, depth - 1, scope, fresh);
    scope.pop_back();
    return u_lam(v, b);
  }
  UPtr f = random_untyped_in(rng, depth - 1, scope, fresh);
  UPtr a = random_untyped_in(rng, depth - 1, scope, fresh);
  return u_app(f, a);
}

inline UPtr random_untyped(Rng& rng, std::size_t depth = 4) {
  std::vector<std::string> scope;
  std::size_t fresh = 0;
  return random_untyped_in(rng, depth, scope, fresh);
}

// --- linear terms and combinators ---------------------------------------------

inline TypePtr random_lin_basic(Rng& rng, const Signature& sig) {
  return t_basic(sig.objects[pick(rng, sig.objects.size())]);
}

// A basic combinator (or declared function symbol) applicable to an argument
// of type `at`, for extending terms and compositions; id when nothing else
// fits.
inline CombPtr random_comb_for(Rng& rng, const Signature& sig,
                               const TypePtr& at) {
  std::vector<CombPtr> cands;
  cands.push_back(c_id(at));
  if (at->tag == TypeTag::Tensor) {
    const TypePtr& l = at->left;
    const TypePtr& r = at->right;
    cands.push_back(c_braid(l, r));
    cands.push_back(c_unleft(at));
    cands.push_back(c_unright(at));
    if (l->tag == TypeTag::Tensor)
      cands.push_back(c_assoc(l->left, l->right, r));
    if (r->tag == TypeTag::Tensor)
      cands.push_back(c_unassoc(l, r->left, r->right));
    if (l->tag == TypeTag::Unit) cands.push_back(c_left(r));
    if (r->tag == TypeTag::Unit) cands.push_back(c_right(l));
    if (r->tag == TypeTag::Hom && type_eq(r->left, l))
      cands.push_back(c_eval(r->left, r->right));
  } else {
    cands.push_back(c_unleft(at));
    cands.push_back(c_unright(at));
  }
  for (const auto& g : sig.generators) {
    if (type_eq(g.dom, at)) cands.push_back(c_fn(g.name, g.dom, g.cod));
    // curry(f) : Y -> X -o Z applies to `at` when f : X * at -> Z
    if (g.dom->tag == TypeTag::Tensor && type_eq(g.dom->right, at))
      cands.push_back(c_curry(c_fn(g.name, g.dom, g.cod)));
  }
  return cands[pick(rng, cands.size())];
}

inline LinPtr random_lterm_in(Rng& rng, const Signature& sig,
                              std::size_t depth, std::size_t& var_counter) {
  if (depth == 0) {
    if (pick(rng, 5) == 0) return lin_one();
    TypePtr ty = random_lin_basic(rng, sig);
    if (pick(rng, 4) == 0)
      ty = t_hom(random_lin_basic(rng, sig), random_lin_basic(rng, sig));
    return lin_var("x" + std::to_string(var_counter++), ty);
  }
  switch (pick(rng, 3)) {
  case 0:
    return lin_tensor(random_lterm_in(rng, sig, depth - 1, var_counter),
                      random_lterm_in(rng, sig, depth - 1, var_counter));
  case 1: {
    LinPtr arg = random_lterm_in(rng, sig, depth - 1, var_counter);
    return lin_apply(random_comb_for(rng, sig, lin_type(arg)), arg);
  }
  default:
    return random_lterm_in(rng, sig, 0, var_counter);
  }
}

inline LinPtr random_lterm(Rng& rng, const Signature& sig,
                           std::size_t depth = 3) {
  std::size_t var_counter = 0;
  return random_lterm_in(rng, sig, depth, var_counter);
}

// Random combinator built bottom-up from basic combinators, function
// symbols, tensoring, composition (extending with a combinator applicable at
// the current codomain) and currying.
inline CombPtr random_comb(Rng& rng, const Signature& sig,
                           std::size_t depth = 3) {
  if (depth == 0) {
    switch (pick(rng, 4)) {
    case 0:
      return c_id(random_lin_basic(rng, sig));
    case 1:
      return c_braid(random_lin_basic(rng, sig), random_lin_basic(rng, sig));
    case 2: {
      const GenDecl& g = sig.generators[pick(rng, sig.generators.size())];
      return c_fn(g.name, g.dom, g.cod);
    }
    default:
      return c_unleft(random_lin_basic(rng, sig));
    }
  }
  switch (pick(rng, 3)) {
  case 0:
    return c_tensor(random_comb(rng, sig, depth - 1),
                    random_comb(rng, sig, depth - 1));
  case 1: {
    CombPtr f = random_comb(rng, sig, depth - 1);
    return c_comp(random_comb_for(rng, sig, f->cod), f);
  }
  default: {
    CombPtr f = random_comb(rng, sig, depth - 1);
    if (f->dom->tag == TypeTag::Tensor) return c_curry(f);
    return f;
  }
  }
}

} // namespace freecat::test
