#pragma once

#include <cstddef>

#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

struct NormalizeResult {
  MorPtr term;
  bool normal = true; // false when fuel ran out with redexes left
  std::size_t steps = 0;
};

inline constexpr std::size_t default_fuel = 10000;

// Oriented rewriting to a normal form, innermost-leftmost, one rule per
// step until fixpoint or fuel exhaustion:
//   - composition spine normalization and identity elision
//   - tensor-of-identities folding
//   - cancellation of inverse structural pairs (associators, unitors,
//     braid/braid-inverse; braid-inverse is replaced by the reversed braid
//     when the braiding is symmetric)
//   - naturality of braid/unitors/associators, oriented to move the
//     structural morphism before the block it slides past
//   - curry/uncurry inverse laws, the ev/curry beta and eta laws
//   - zig-zag straightening for cup/cap
//   - pairing/projection and duplicate/delete laws, and terminal-map
//     collapse (any morphism into the unit is the deleter) in cartesian
//     modes
//   - name expansion into its curried definition
// Every step preserves dom and cod exactly; the result is re-checked and a
// violation raises an internal error. Rewriting never invents equalities:
// each rule instantiates an axiom of the signature's mode.
NormalizeResult beta_eta_normalize(const MorPtr& t, const Signature& sig,
                                   std::size_t fuel = default_fuel);

// Rebuild a term with every stored type argument in canonical form for the
// mode (hom expansion in compact mode). Applied by beta_eta_normalize
// before rewriting so that syntactic comparison of normal forms is
// insensitive to how type annotations were written.
MorPtr canonicalize_mor_types(const MorPtr& t, Mode mode);

} // namespace freecat
