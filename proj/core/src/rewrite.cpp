#include "freecat/rewrite.hpp"

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freecat/error.hpp"

namespace freecat {

MorPtr canonicalize_mor_types(const MorPtr& t, Mode mode) {
  std::vector<TypePtr> types;
  types.reserve(t->types.size());
  for (const auto& ty : t->types)
    types.push_back(canonical_type(ty, mode));
  std::vector<MorPtr> subs;
  subs.reserve(t->subs.size());
  for (const auto& s : t->subs)
    subs.push_back(canonicalize_mor_types(s, mode));
  return std::make_shared<const MorTerm>(t->tag, t->gen_name, std::move(types),
                                         std::move(subs));
}

namespace {

bool structural_invertible(MorTag tag) {
  switch (tag) {
  case MorTag::Assoc:
  case MorTag::Unassoc:
  case MorTag::LeftU:
  case MorTag::UnleftU:
  case MorTag::RightU:
  case MorTag::UnrightU:
  case MorTag::Braid:
  case MorTag::BraidInv:
    return true;
  default:
    return false;
  }
}

// Domain of a structural node (or identity), read off its type arguments.
TypePtr structural_dom(const MorPtr& t) {
  const auto& ty = t->types;
  switch (t->tag) {
  case MorTag::Id:
    return ty[0];
  case MorTag::Assoc:
    return t_tensor(t_tensor(ty[0], ty[1]), ty[2]);
  case MorTag::Unassoc:
    return t_tensor(ty[0], t_tensor(ty[1], ty[2]));
  case MorTag::LeftU:
    return t_tensor(t_unit(), ty[0]);
  case MorTag::UnleftU:
    return ty[0];
  case MorTag::RightU:
    return t_tensor(ty[0], t_unit());
  case MorTag::UnrightU:
    return ty[0];
  case MorTag::Braid:
    return t_tensor(ty[0], ty[1]);
  case MorTag::BraidInv:
    return t_tensor(ty[1], ty[0]);
  default:
    fail_internal("structural_dom: not a structural node");
  }
}

bool same_types(const MorPtr& a, const MorPtr& b) {
  if (a->types.size() != b->types.size())
    return false;
  for (std::size_t i = 0; i < a->types.size(); ++i)
    if (!type_eq(a->types[i], b->types[i]))
      return false;
  return true;
}

// a followed by b composes to an identity.
bool inverse_structural_pair(const MorPtr& a, const MorPtr& b, Mode mode) {
  switch (a->tag) {
  case MorTag::Assoc:
    return b->tag == MorTag::Unassoc && same_types(a, b);
  case MorTag::Unassoc:
    return b->tag == MorTag::Assoc && same_types(a, b);
  case MorTag::LeftU:
    return b->tag == MorTag::UnleftU && same_types(a, b);
  case MorTag::UnleftU:
    return b->tag == MorTag::LeftU && same_types(a, b);
  case MorTag::RightU:
    return b->tag == MorTag::UnrightU && same_types(a, b);
  case MorTag::UnrightU:
    return b->tag == MorTag::RightU && same_types(a, b);
  case MorTag::Braid:
    if (b->tag == MorTag::BraidInv && same_types(a, b))
      return true;
    return mode_braiding_symmetric(mode) && b->tag == MorTag::Braid &&
           type_eq(a->types[0], b->types[1]) &&
           type_eq(a->types[1], b->types[0]);
  case MorTag::BraidInv:
    return b->tag == MorTag::Braid && same_types(a, b);
  default:
    return false;
  }
}

struct Rewriter {
  const Signature& sig;
  Mode mode;
  const std::unordered_map<const MorTerm*, DomCod>& typing;

  const DomCod& types_of(const MorPtr& t) const {
    auto it = typing.find(t.get());
    if (it == typing.end())
      fail_internal("rewrite: subterm missing from the typing map");
    return it->second;
  }

  // One innermost-leftmost rewrite; nullopt when t is in normal form.
  std::optional<MorPtr> rewrite(const MorPtr& t) const {
    for (std::size_t i = 0; i < t->subs.size(); ++i) {
      if (auto r = rewrite(t->subs[i])) {
        auto subs = t->subs;
        subs[i] = std::move(*r);
        return std::make_shared<const MorTerm>(t->tag, t->gen_name, t->types,
                                               std::move(subs));
      }
    }
    return local(t);
  }

  std::optional<MorPtr> local(const MorPtr& t) const {
    switch (t->tag) {
    case MorTag::Seq:
      return local_seq(t);
    case MorTag::Par:
      if (t->subs[0]->tag == MorTag::Id && t->subs[1]->tag == MorTag::Id)
        return m_id(t_tensor(t->subs[0]->types[0], t->subs[1]->types[0]));
      return terminal_rule(t);
    case MorTag::BraidInv:
      if (mode_braiding_symmetric(mode))
        return m_braid(t->types[1], t->types[0]);
      return std::nullopt;
    case MorTag::Curry:
      return local_curry(t);
    case MorTag::Uncurry:
      return local_uncurry(t);
    case MorTag::Pair:
      return local_pair(t);
    case MorTag::Name:
      return expand_name(t, sig);
    default:
      return terminal_rule(t);
    }
  }

  // In cartesian modes the unit is terminal: any morphism into it other
  // than an identity or the deleter itself rewrites to the deleter.
  std::optional<MorPtr> terminal_rule(const MorPtr& t) const {
    if (!mode_has_cartesian(mode))
      return std::nullopt;
    if (t->tag == MorTag::Del || t->tag == MorTag::Id)
      return std::nullopt;
    const DomCod& dc = types_of(t);
    if (dc.cod->tag != TypeTag::Unit)
      return std::nullopt;
    return m_del(dc.dom);
  }

  static MorPtr spine_head(const MorPtr& g) {
    return g->tag == MorTag::Seq ? g->subs[0] : g;
  }
  static MorPtr spine_rest(const MorPtr& g) {
    return g->tag == MorTag::Seq ? g->subs[1] : nullptr;
  }
  // repl stands in for the consumed prefix; rest may be null.
  static MorPtr with_rest(MorPtr repl, const MorPtr& rest) {
    return rest ? m_seq(std::move(repl), rest) : std::move(repl);
  }

  std::optional<MorPtr> local_seq(const MorPtr& t) const {
    const MorPtr& f = t->subs[0];
    const MorPtr& g = t->subs[1];

    // Spine normalization: (a;b);c -> a;(b;c).
    if (f->tag == MorTag::Seq)
      return m_seq(f->subs[0], m_seq(f->subs[1], g));
    // Identity elision.
    if (f->tag == MorTag::Id)
      return g;
    if (g->tag == MorTag::Id)
      return f;

    const MorPtr h = spine_head(g);
    const MorPtr rest = spine_rest(g);

    // Inverse structural pairs cancel.
    if (structural_invertible(f->tag) && inverse_structural_pair(f, h, mode))
      return rest ? rest : m_id(structural_dom(f));

    if (f->tag == MorTag::Par) {
      const MorPtr& a = f->subs[0];
      const MorPtr& b = f->subs[1];

      // Beta: (id & curry(body)) ; ev -> body.
      if (a->tag == MorTag::Id && b->tag == MorTag::Curry &&
          h->tag == MorTag::Ev && type_eq(a->types[0], h->types[0]))
        return with_rest(b->subs[0], rest);

      // Zig-zag straightening, right form:
      // (id & cup) ; unassoc ; (cap & id) -> rightu ; unleftu.
      if (a->tag == MorTag::Id && b->tag == MorTag::Cup &&
          h->tag == MorTag::Unassoc && rest) {
        const TypePtr& x = b->types[0];
        const MorPtr e3 = spine_head(rest);
        const MorPtr rest2 = spine_rest(rest);
        if (type_eq(a->types[0], x) && type_eq(h->types[0], x) &&
            type_eq(h->types[1], t_dual(x)) && type_eq(h->types[2], x) &&
            e3->tag == MorTag::Par && e3->subs[0]->tag == MorTag::Cap &&
            e3->subs[1]->tag == MorTag::Id &&
            type_eq(e3->subs[0]->types[0], x) &&
            type_eq(e3->subs[1]->types[0], x))
          return m_seq(m_rightu(x), with_rest(m_unleftu(x), rest2));
      }
      // Zig-zag straightening, left form:
      // (cup & id) ; assoc ; (id & cap) -> leftu ; unrightu.
      if (a->tag == MorTag::Cup && b->tag == MorTag::Id &&
          h->tag == MorTag::Assoc && rest) {
        const TypePtr& x = a->types[0];
        const TypePtr xd = t_dual(x);
        const MorPtr e3 = spine_head(rest);
        const MorPtr rest2 = spine_rest(rest);
        if (type_eq(b->types[0], xd) && type_eq(h->types[0], xd) &&
            type_eq(h->types[1], x) && type_eq(h->types[2], xd) &&
            e3->tag == MorTag::Par && e3->subs[0]->tag == MorTag::Id &&
            e3->subs[1]->tag == MorTag::Cap &&
            type_eq(e3->subs[0]->types[0], xd) &&
            type_eq(e3->subs[1]->types[0], x))
          return m_seq(m_leftu(xd), with_rest(m_unrightu(xd), rest2));
      }

      // Naturality, oriented to slide structural morphisms leftwards.
      if (h->tag == MorTag::Braid) {
        const TypePtr& da = types_of(a).dom;
        const TypePtr& db = types_of(b).dom;
        return m_seq(m_braid(da, db), with_rest(m_par(b, a), rest));
      }
      if (h->tag == MorTag::BraidInv) {
        const TypePtr& da = types_of(a).dom;
        const TypePtr& db = types_of(b).dom;
        return m_seq(m_braidinv(db, da), with_rest(m_par(b, a), rest));
      }
      if (h->tag == MorTag::RightU && b->tag == MorTag::Id &&
          b->types[0]->tag == TypeTag::Unit)
        return m_seq(m_rightu(types_of(a).dom), with_rest(a, rest));
      if (h->tag == MorTag::LeftU && a->tag == MorTag::Id &&
          a->types[0]->tag == TypeTag::Unit)
        return m_seq(m_leftu(types_of(b).dom), with_rest(b, rest));
      if (h->tag == MorTag::Assoc && a->tag == MorTag::Par) {
        const MorPtr& p = a->subs[0];
        const MorPtr& q = a->subs[1];
        const TypePtr& dp = types_of(p).dom;
        const TypePtr& dq = types_of(q).dom;
        const TypePtr& db = types_of(b).dom;
        return m_seq(m_assoc(dp, dq, db),
                     with_rest(m_par(p, m_par(q, b)), rest));
      }
    }

    if (f->tag == MorTag::Pair) {
      // Projections pick a component of a pairing.
      if (h->tag == MorTag::Proj1)
        return with_rest(f->subs[0], rest);
      if (h->tag == MorTag::Proj2)
        return with_rest(f->subs[1], rest);
    }

    if (f->tag == MorTag::Dup) {
      const TypePtr& x = f->types[0];
      // dup ; proj_i = id.
      if (h->tag == MorTag::Proj1 || h->tag == MorTag::Proj2)
        return rest ? rest : m_id(x);
      // dup ; (u & v) = pair(u, v).
      if (h->tag == MorTag::Par)
        return with_rest(m_pair(h->subs[0], h->subs[1]), rest);
      // dup ; braid = dup.
      if (h->tag == MorTag::Braid && type_eq(h->types[0], x) &&
          type_eq(h->types[1], x))
        return with_rest(m_dup(x), rest);
    }

    return terminal_rule(t);
  }

  std::optional<MorPtr> local_curry(const MorPtr& t) const {
    const MorPtr& u = t->subs[0];
    if (u->tag == MorTag::Uncurry)
      return u->subs[0];
    if (u->tag == MorTag::Ev)
      return m_id(canonical_type(t_hom(u->types[0], u->types[1]), mode));
    // Eta: curry((id & g) ; ev) -> g.
    if (u->tag == MorTag::Seq && u->subs[1]->tag == MorTag::Ev &&
        u->subs[0]->tag == MorTag::Par &&
        u->subs[0]->subs[0]->tag == MorTag::Id &&
        type_eq(u->subs[0]->subs[0]->types[0], u->subs[1]->types[0]))
      return u->subs[0]->subs[1];
    return std::nullopt;
  }

  std::optional<MorPtr> local_uncurry(const MorPtr& t) const {
    const MorPtr& u = t->subs[0];
    if (u->tag == MorTag::Curry)
      return u->subs[0];
    if (u->tag == MorTag::Id) {
      TypePtr x, z;
      if (split_hom_type(u->types[0], mode, x, z))
        return m_ev(x, z);
    }
    return std::nullopt;
  }

  std::optional<MorPtr> local_pair(const MorPtr& t) const {
    const MorPtr& p = t->subs[0];
    const MorPtr& q = t->subs[1];
    if (p->tag == MorTag::Proj1 && q->tag == MorTag::Proj2 &&
        same_types(p, q))
      return m_id(t_tensor(p->types[0], p->types[1]));
    if (p->tag == MorTag::Id && q->tag == MorTag::Id &&
        type_eq(p->types[0], q->types[0]))
      return m_dup(p->types[0]);
    if (p->tag == MorTag::Id && q->tag == MorTag::Del &&
        type_eq(p->types[0], q->types[0]))
      return m_unrightu(p->types[0]);
    if (p->tag == MorTag::Del && q->tag == MorTag::Id &&
        type_eq(p->types[0], q->types[0]))
      return m_unleftu(p->types[0]);
    return terminal_rule(t);
  }
};

} // namespace

NormalizeResult beta_eta_normalize(const MorPtr& t, const Signature& sig,
                                   std::size_t fuel) {
  const DomCod before = infer_dom_cod(t, sig); // validates the input term
  MorPtr cur = canonicalize_mor_types(t, sig.mode);
  NormalizeResult res;
  for (;;) {
    auto typing = infer_all(cur, sig);
    Rewriter rw{sig, sig.mode, typing};
    auto next = rw.rewrite(cur);
    if (!next) {
      res.normal = true;
      break;
    }
    if (res.steps >= fuel) {
      res.normal = false;
      break;
    }
    cur = std::move(*next);
    ++res.steps;
  }
  res.term = cur;
  const DomCod after = infer_dom_cod(cur, sig);
  if (!type_eq(before.dom, after.dom) || !type_eq(before.cod, after.cod))
    fail_internal("normalization changed the boundary of a morphism");
  return res;
}

} // namespace freecat
