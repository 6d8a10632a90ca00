#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "freecat/types.hpp"

namespace freecat {

struct Signature;

enum class MorTag {
  Gen,
  Id,
  Seq,
  Par,
  Assoc,
  Unassoc,
  LeftU,
  UnleftU,
  RightU,
  UnrightU,
  Braid,
  BraidInv,
  Curry,
  Uncurry,
  Ev,
  Cup,
  Cap,
  Dup,
  Del,
  Pair,
  Proj1,
  Proj2,
  Name,
};

class MorTerm;
using MorPtr = std::shared_ptr<const MorTerm>;

// Immutable morphism term of the free category on a signature.
// `types` holds the constructor's type arguments, `subs` its subterms:
//   Gen f                        -- generator by name
//   Id[X]                        -- identity
//   Seq(f, g)                    -- f then g (diagrammatic order)
//   Par(f, g)                    -- f tensor g
//   Assoc[X,Y,Z]                 -- (X*Y)*Z -> X*(Y*Z), Unassoc its inverse
//   LeftU[X]: I*X -> X           -- UnleftU its inverse
//   RightU[X]: X*I -> X          -- UnrightU its inverse
//   Braid[X,Y]: X*Y -> Y*X       -- BraidInv[X,Y]: Y*X -> X*Y
//   Curry(f: X*Y -> Z): Y -> X-oZ
//   Uncurry(g: Y -> X-oZ): X*Y -> Z
//   Ev[X,Y]: X*(X-oY) -> Y
//   Cup[X]: I -> X^*X            -- Cap[X]: X*X^ -> I
//   Dup[X]: X -> X*X             -- Del[X]: X -> I
//   Pair(f: Q->A, g: Q->B): Q -> A*B
//   Proj1[X,Y]: X*Y -> X         -- Proj2[X,Y]: X*Y -> Y
//   Name(f: X->Y): I -> X-oY
class MorTerm {
public:
  MorTag tag;
  std::string gen_name;       // Gen only
  std::vector<TypePtr> types; // type arguments
  std::vector<MorPtr> subs;   // subterms

  MorTerm(MorTag t, std::string g, std::vector<TypePtr> ty,
          std::vector<MorPtr> s)
      : tag(t), gen_name(std::move(g)), types(std::move(ty)),
        subs(std::move(s)) {}
};

MorPtr m_gen(std::string name);
MorPtr m_id(TypePtr x);
MorPtr m_seq(MorPtr f, MorPtr g);
// Convenience: Seq of a whole pipeline, left-to-right.
MorPtr m_seq_all(const std::vector<MorPtr>& fs);
MorPtr m_par(MorPtr f, MorPtr g);
MorPtr m_assoc(TypePtr x, TypePtr y, TypePtr z);
MorPtr m_unassoc(TypePtr x, TypePtr y, TypePtr z);
MorPtr m_leftu(TypePtr x);
MorPtr m_unleftu(TypePtr x);
MorPtr m_rightu(TypePtr x);
MorPtr m_unrightu(TypePtr x);
MorPtr m_braid(TypePtr x, TypePtr y);
MorPtr m_braidinv(TypePtr x, TypePtr y);
MorPtr m_curry(MorPtr f);
MorPtr m_uncurry(MorPtr f);
MorPtr m_ev(TypePtr x, TypePtr y);
MorPtr m_cup(TypePtr x);
MorPtr m_cap(TypePtr x);
MorPtr m_dup(TypePtr x);
MorPtr m_del(TypePtr x);
MorPtr m_pair(MorPtr f, MorPtr g);
MorPtr m_proj1(TypePtr x, TypePtr y);
MorPtr m_proj2(TypePtr x, TypePtr y);
MorPtr m_name(MorPtr f);

// Weakest mode at which the constructor exists.
Mode mor_min_mode(MorTag tag);
// A term built from `c` is legal in a signature of mode `m`.
bool mode_allows(Mode m, MorTag c);

std::string_view mor_tag_name(MorTag tag);

bool mor_eq(const MorPtr& a, const MorPtr& b);

struct DomCod {
  TypePtr dom;
  TypePtr cod;
};

// Type inference. Types in the result are canonical for sig.mode. Throws
// FcError(type) on composition mismatch, mode violation, unknown generator.
DomCod infer_dom_cod(const MorPtr& t, const Signature& sig);

// One inference pass that records the typing of every subterm (keyed by
// node address; shared subterms appear once).
std::unordered_map<const MorTerm*, DomCod> infer_all(const MorPtr& t,
                                                     const Signature& sig);

std::string print_mor(const MorPtr& t, Mode mode = Mode::monoidal);

// Name(f) unsugars to Curry(Seq(RightU(dom f), f)): X*I -> X -> Y, curried
// to I -> X-oY.
MorPtr expand_name(const MorPtr& name_term, const Signature& sig);

// Reads a canonical type as Hom(X,Z): either a Hom node, or in
// compact-symmetric mode a Tensor whose left factor is built from duals
// (then X = Dual(left)). Returns false if the type has neither shape.
bool split_hom_type(const TypePtr& t, Mode mode, TypePtr& x, TypePtr& z);

} // namespace freecat
