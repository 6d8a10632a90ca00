#include "freecat/term.hpp"

#include <functional>
#include <unordered_map>

#include "freecat/error.hpp"
#include "freecat/signature.hpp"

namespace freecat {

namespace {

MorPtr node(MorTag tag, std::string gen, std::vector<TypePtr> types,
            std::vector<MorPtr> subs) {
  return std::make_shared<MorTerm>(tag, std::move(gen), std::move(types),
                                   std::move(subs));
}

} // namespace

MorPtr m_gen(std::string name) {
  return node(MorTag::Gen, std::move(name), {}, {});
}
MorPtr m_id(TypePtr x) { return node(MorTag::Id, "", {std::move(x)}, {}); }
MorPtr m_seq(MorPtr f, MorPtr g) {
  return node(MorTag::Seq, "", {}, {std::move(f), std::move(g)});
}
MorPtr m_seq_all(const std::vector<MorPtr>& fs) {
  if (fs.empty()) fail_invalid("m_seq_all needs at least one morphism");
  MorPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = m_seq(acc, fs[i]);
  return acc;
}
MorPtr m_par(MorPtr f, MorPtr g) {
  return node(MorTag::Par, "", {}, {std::move(f), std::move(g)});
}
MorPtr m_assoc(TypePtr x, TypePtr y, TypePtr z) {
  return node(MorTag::Assoc, "", {std::move(x), std::move(y), std::move(z)},
              {});
}
MorPtr m_unassoc(TypePtr x, TypePtr y, TypePtr z) {
  return node(MorTag::Unassoc, "", {std::move(x), std::move(y), std::move(z)},
              {});
}
MorPtr m_leftu(TypePtr x) { return node(MorTag::LeftU, "", {std::move(x)}, {}); }
MorPtr m_unleftu(TypePtr x) {
  return node(MorTag::UnleftU, "", {std::move(x)}, {});
}
MorPtr m_rightu(TypePtr x) {
  return node(MorTag::RightU, "", {std::move(x)}, {});
}
MorPtr m_unrightu(TypePtr x) {
  return node(MorTag::UnrightU, "", {std::move(x)}, {});
}
MorPtr m_braid(TypePtr x, TypePtr y) {
  return node(MorTag::Braid, "", {std::move(x), std::move(y)}, {});
}
MorPtr m_braidinv(TypePtr x, TypePtr y) {
  return node(MorTag::BraidInv, "", {std::move(x), std::move(y)}, {});
}
MorPtr m_curry(MorPtr f) { return node(MorTag::Curry, "", {}, {std::move(f)}); }
MorPtr m_uncurry(MorPtr f) {
  return node(MorTag::Uncurry, "", {}, {std::move(f)});
}
MorPtr m_ev(TypePtr x, TypePtr y) {
  return node(MorTag::Ev, "", {std::move(x), std::move(y)}, {});
}
MorPtr m_cup(TypePtr x) { return node(MorTag::Cup, "", {std::move(x)}, {}); }
MorPtr m_cap(TypePtr x) { return node(MorTag::Cap, "", {std::move(x)}, {}); }
MorPtr m_dup(TypePtr x) { return node(MorTag::Dup, "", {std::move(x)}, {}); }
MorPtr m_del(TypePtr x) { return node(MorTag::Del, "", {std::move(x)}, {}); }
MorPtr m_pair(MorPtr f, MorPtr g) {
  return node(MorTag::Pair, "", {}, {std::move(f), std::move(g)});
}
MorPtr m_proj1(TypePtr x, TypePtr y) {
  return node(MorTag::Proj1, "", {std::move(x), std::move(y)}, {});
}
MorPtr m_proj2(TypePtr x, TypePtr y) {
  return node(MorTag::Proj2, "", {std::move(x), std::move(y)}, {});
}
MorPtr m_name(MorPtr f) { return node(MorTag::Name, "", {}, {std::move(f)}); }

Mode mor_min_mode(MorTag tag) {
  switch (tag) {
  case MorTag::Braid:
  case MorTag::BraidInv:
    return Mode::braided;
  case MorTag::Dup:
  case MorTag::Del:
  case MorTag::Pair:
  case MorTag::Proj1:
  case MorTag::Proj2:
    return Mode::cartesian;
  case MorTag::Curry:
  case MorTag::Uncurry:
  case MorTag::Ev:
  case MorTag::Name:
    return Mode::closed_monoidal;
  case MorTag::Cup:
  case MorTag::Cap:
    return Mode::compact_symmetric;
  default:
    return Mode::monoidal;
  }
}

bool mode_allows(Mode m, MorTag c) { return mode_leq(mor_min_mode(c), m); }

std::string_view mor_tag_name(MorTag tag) {
  switch (tag) {
  case MorTag::Gen: return "gen";
  case MorTag::Id: return "id";
  case MorTag::Seq: return ";";
  case MorTag::Par: return "*";
  case MorTag::Assoc: return "assoc";
  case MorTag::Unassoc: return "unassoc";
  case MorTag::LeftU: return "left";
  case MorTag::UnleftU: return "unleft";
  case MorTag::RightU: return "right";
  case MorTag::UnrightU: return "unright";
  case MorTag::Braid: return "braid";
  case MorTag::BraidInv: return "braidinv";
  case MorTag::Curry: return "curry";
  case MorTag::Uncurry: return "uncurry";
  case MorTag::Ev: return "ev";
  case MorTag::Cup: return "cup";
  case MorTag::Cap: return "cap";
  case MorTag::Dup: return "dup";
  case MorTag::Del: return "del";
  case MorTag::Pair: return "pair";
  case MorTag::Proj1: return "p1";
  case MorTag::Proj2: return "p2";
  case MorTag::Name: return "name";
  }
  return "?";
}

bool mor_eq(const MorPtr& a, const MorPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag || a->gen_name != b->gen_name ||
      a->types.size() != b->types.size() || a->subs.size() != b->subs.size())
    return false;
  for (std::size_t i = 0; i < a->types.size(); ++i)
    if (!type_eq(a->types[i], b->types[i])) return false;
  for (std::size_t i = 0; i < a->subs.size(); ++i)
    if (!mor_eq(a->subs[i], b->subs[i])) return false;
  return true;
}

namespace {

struct InferCtx {
  const Signature& sig;
  std::unordered_map<const MorTerm*, DomCod> memo;
};

} // namespace

bool split_hom_type(const TypePtr& t, Mode mode, TypePtr& x, TypePtr& z) {
  if (t->tag == TypeTag::Hom) {
    x = t->left;
    z = t->right;
    return true;
  }
  if (mode == Mode::compact_symmetric && t->tag == TypeTag::Tensor) {
    // left factor must be built from duals only
    const std::function<bool(const TypePtr&)> all_dual =
        [&](const TypePtr& u) -> bool {
      switch (u->tag) {
      case TypeTag::Dual:
      case TypeTag::Unit:
        return true;
      case TypeTag::Tensor:
        return all_dual(u->left) && all_dual(u->right);
      default:
        return false;
      }
    };
    if (all_dual(t->left)) {
      x = t_dual(t->left);
      z = t->right;
      return true;
    }
  }
  return false;
}

namespace {

DomCod infer_rec(const MorPtr& t, InferCtx& ctx) {
  auto it = ctx.memo.find(t.get());
  if (it != ctx.memo.end()) return it->second;

  const Mode mode = ctx.sig.mode;
  if (!mode_allows(mode, t->tag))
    fail_type("mode violation: constructor '" +
              std::string(mor_tag_name(t->tag)) + "' needs mode " +
              std::string(mode_name(mor_min_mode(t->tag))) +
              " but signature mode is " + std::string(mode_name(mode)));

  auto canon = [&](const TypePtr& ty) { return canonical_type(ty, mode); };
  auto check_type = [&](const TypePtr& ty) {
    if (auto v = type_mode_violation(ty, mode)) fail_type(*v);
    return canon(ty);
  };

  DomCod r;
  switch (t->tag) {
  case MorTag::Gen: {
    const GenDecl* g = ctx.sig.find_gen(t->gen_name);
    if (!g) fail_type("unknown generator '" + t->gen_name + "'");
    r = {canon(g->dom), canon(g->cod)};
    break;
  }
  case MorTag::Id: {
    TypePtr x = check_type(t->types[0]);
    r = {x, x};
    break;
  }
  case MorTag::Seq: {
    DomCod f = infer_rec(t->subs[0], ctx);
    DomCod g = infer_rec(t->subs[1], ctx);
    if (!type_eq(f.cod, g.dom))
      fail_type("composition mismatch in ';': left codomain " +
                print_type(f.cod, mode) + " != right domain " +
                print_type(g.dom, mode));
    r = {f.dom, g.cod};
    break;
  }
  case MorTag::Par: {
    DomCod f = infer_rec(t->subs[0], ctx);
    DomCod g = infer_rec(t->subs[1], ctx);
    r = {t_tensor(f.dom, g.dom), t_tensor(f.cod, g.cod)};
    break;
  }
  case MorTag::Assoc: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]),
            z = check_type(t->types[2]);
    r = {t_tensor(t_tensor(x, y), z), t_tensor(x, t_tensor(y, z))};
    break;
  }
  case MorTag::Unassoc: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]),
            z = check_type(t->types[2]);
    r = {t_tensor(x, t_tensor(y, z)), t_tensor(t_tensor(x, y), z)};
    break;
  }
  case MorTag::LeftU: {
    TypePtr x = check_type(t->types[0]);
    r = {t_tensor(t_unit(), x), x};
    break;
  }
  case MorTag::UnleftU: {
    TypePtr x = check_type(t->types[0]);
    r = {x, t_tensor(t_unit(), x)};
    break;
  }
  case MorTag::RightU: {
    TypePtr x = check_type(t->types[0]);
    r = {t_tensor(x, t_unit()), x};
    break;
  }
  case MorTag::UnrightU: {
    TypePtr x = check_type(t->types[0]);
    r = {x, t_tensor(x, t_unit())};
    break;
  }
  case MorTag::Braid: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]);
    r = {t_tensor(x, y), t_tensor(y, x)};
    break;
  }
  case MorTag::BraidInv: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]);
    r = {t_tensor(y, x), t_tensor(x, y)};
    break;
  }
  case MorTag::Curry: {
    DomCod f = infer_rec(t->subs[0], ctx);
    if (f.dom->tag != TypeTag::Tensor)
      fail_type("curry needs a tensor domain, got " +
                print_type(f.dom, mode));
    TypePtr x = f.dom->left, y = f.dom->right;
    r = {y, canon(t_hom(x, f.cod))};
    break;
  }
  case MorTag::Uncurry: {
    DomCod g = infer_rec(t->subs[0], ctx);
    TypePtr x, z;
    if (!split_hom_type(g.cod, mode, x, z))
      fail_type("uncurry needs a hom codomain, got " +
                print_type(g.cod, mode));
    r = {t_tensor(x, g.dom), z};
    break;
  }
  case MorTag::Ev: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]);
    r = {t_tensor(x, canon(t_hom(x, y))), y};
    break;
  }
  case MorTag::Cup: {
    TypePtr x = check_type(t->types[0]);
    r = {t_unit(), t_tensor(t_dual(x), x)};
    break;
  }
  case MorTag::Cap: {
    TypePtr x = check_type(t->types[0]);
    r = {t_tensor(x, t_dual(x)), t_unit()};
    break;
  }
  case MorTag::Dup: {
    TypePtr x = check_type(t->types[0]);
    r = {x, t_tensor(x, x)};
    break;
  }
  case MorTag::Del: {
    TypePtr x = check_type(t->types[0]);
    r = {x, t_unit()};
    break;
  }
  case MorTag::Pair: {
    DomCod f = infer_rec(t->subs[0], ctx);
    DomCod g = infer_rec(t->subs[1], ctx);
    if (!type_eq(f.dom, g.dom))
      fail_type("pair needs equal domains, got " + print_type(f.dom, mode) +
                " and " + print_type(g.dom, mode));
    r = {f.dom, t_tensor(f.cod, g.cod)};
    break;
  }
  case MorTag::Proj1: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]);
    r = {t_tensor(x, y), x};
    break;
  }
  case MorTag::Proj2: {
    TypePtr x = check_type(t->types[0]), y = check_type(t->types[1]);
    r = {t_tensor(x, y), y};
    break;
  }
  case MorTag::Name: {
    DomCod f = infer_rec(t->subs[0], ctx);
    r = {t_unit(), canon(t_hom(f.dom, f.cod))};
    break;
  }
  }
  ctx.memo.emplace(t.get(), r);
  return r;
}

} // namespace

DomCod infer_dom_cod(const MorPtr& t, const Signature& sig) {
  InferCtx ctx{sig, {}};
  return infer_rec(t, ctx);
}

std::unordered_map<const MorTerm*, DomCod> infer_all(const MorPtr& t,
                                                     const Signature& sig) {
  InferCtx ctx{sig, {}};
  infer_rec(t, ctx);
  return std::move(ctx.memo);
}

MorPtr expand_name(const MorPtr& name_term, const Signature& sig) {
  if (name_term->tag != MorTag::Name) fail_invalid("expand_name: not a Name");
  const MorPtr& f = name_term->subs[0];
  DomCod dc = infer_dom_cod(f, sig);
  return m_curry(m_seq(m_rightu(dc.dom), f));
}

namespace {

// precedence: Seq 1 < Par 2 < atom 3
int mor_prec(MorTag tag) {
  switch (tag) {
  case MorTag::Seq:
    return 1;
  case MorTag::Par:
    return 2;
  default:
    return 3;
  }
}

void print_types_bracket(const std::vector<TypePtr>& types, Mode mode,
                         std::string& out) {
  out += '[';
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += ',';
    out += print_type(types[i], mode);
  }
  out += ']';
}

void print_rec(const MorPtr& t, Mode mode, int min_prec, std::string& out) {
  int prec = mor_prec(t->tag);
  bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (t->tag) {
  case MorTag::Gen:
    out += t->gen_name;
    break;
  case MorTag::Seq:
    print_rec(t->subs[0], mode, 1, out);
    out += " ; ";
    print_rec(t->subs[1], mode, 2, out);
    break;
  case MorTag::Par:
    print_rec(t->subs[0], mode, 2, out);
    out += " * ";
    print_rec(t->subs[1], mode, 3, out);
    break;
  case MorTag::Curry:
  case MorTag::Uncurry:
  case MorTag::Name: {
    out += mor_tag_name(t->tag);
    out += '(';
    print_rec(t->subs[0], mode, 0, out);
    out += ')';
    break;
  }
  case MorTag::Pair:
    out += "pair(";
    print_rec(t->subs[0], mode, 0, out);
    out += ", ";
    print_rec(t->subs[1], mode, 0, out);
    out += ')';
    break;
  default:
    out += mor_tag_name(t->tag);
    print_types_bracket(t->types, mode, out);
    break;
  }
  if (paren) out += ')';
}

} // namespace

std::string print_mor(const MorPtr& t, Mode mode) {
  std::string out;
  print_rec(t, mode, 0, out);
  return out;
}

} // namespace freecat
