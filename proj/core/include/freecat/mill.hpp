#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

// Single-formula sequent X |- Y.
struct Sequent {
  TypePtr lhs;
  TypePtr rhs;
};

std::string print_sequent(const Sequent& s, Mode mode);

// A deduction tree. `rule` is one of the core tags
//   i, cut, tensor, a, a-inv, l, l-inv, r, r-inv, b, c, c-inv
// or a derived-rule macro
//   ev, alpha, alpha-inv, icomp
// or, as a nonlogical axiom leaf, the name of a signature generator.
// Conclusions are written explicitly at every node and verified, so proof
// files double as readable certificates.
struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  std::string rule;
  std::vector<ProofPtr> premises;
  Sequent conclusion;
};

ProofPtr make_proof(std::string rule, std::vector<ProofPtr> premises,
                    Sequent conclusion);

bool is_core_rule(std::string_view tag);
bool is_macro_rule(std::string_view tag);

// Proof surface syntax (s-expressions):
//   (RULE premise... "LHS |- RHS")
// with types in the kernel type grammar. parse_proof reads one tree,
// tolerating an optional `proof <name> =` prefix. parse_proof_decls reads a
// whole file of `proof <name> = (...)` declarations.
// When `sig` is null, types are read permissively (mode closed-symmetric,
// unknown names treated as basic objects); with a signature they must
// resolve against it.
ProofPtr parse_proof(std::string_view src, const Signature* sig = nullptr);

struct NamedProof {
  std::string name;
  ProofPtr proof;
};
std::vector<NamedProof> parse_proof_decls(std::string_view src,
                                          const Signature* sig = nullptr);

// Instantiate a derived rule as the literal deduction it abbreviates:
//   ev(X,Y):           0 premises, concludes X*(X-oY) |- Y
//   alpha(A,B,C,D):    1 premise A*(B*C) |- D, concludes (A*B)*C |- D
//   alpha-inv(A,B,C,D):1 premise (A*B)*C |- D, concludes A*(B*C) |- D
//   icomp(X,Y,Z):      0 premises, concludes (X-oY)*(Y-oZ) |- X-oZ
// Nested macros inside the expansion are themselves expanded.
// Errors: FcError(invalid) on unknown tag, wrong binding or premise count,
// or premise conclusions that do not fit the macro.
ProofPtr expand_macro(std::string_view tag,
                      const std::vector<TypePtr>& bindings,
                      const std::vector<ProofPtr>& premises, Mode mode);

// Replace every macro node by its expansion (bindings are read off the
// node's stated conclusion). FcError(invalid) when a macro node's
// conclusion does not match its schema.
ProofPtr expand_macros(const ProofPtr& p, Mode mode);

struct ProofIssue {
  std::string path; // slash-joined premise indices with rule tags
  std::string message;
};
struct ProofReport {
  std::vector<ProofIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Validate that every node instantiates its rule schema (macros are
// expanded first). With a signature, generator leaves must cite a declared
// generator whose boundary matches the stated conclusion, rules are gated
// by the signature's mode, and all types must be legal in it. Report-valued;
// never throws on invalid proofs.
ProofReport check_proof(const ProofPtr& p, const Signature* sig = nullptr);

// Compile a checked proof to a kernel morphism:
//   i -> Id, cut -> Seq, tensor -> Par, a/l/r/b and inverses ->
//   post-composition with the structural morphism, c -> Curry,
//   c-inv -> Uncurry, generator leaf -> Gen.
// The result's boundary equals the conclusion sequent. FcError(invalid)
// when the proof does not check.
MorPtr proof_to_mor(const ProofPtr& p, const Signature& sig);

} // namespace freecat
