#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

// A wire permutation in one-line notation: the wire at position i moves to
// position perm[i].
struct PermLayer {
  std::vector<std::size_t> perm;
};

// One generator applied at a wire offset; identity wires elsewhere.
struct BlockLayer {
  std::size_t offset = 0;
  std::string gen;
};

using StrictLayer = std::variant<PermLayer, BlockLayer>;

// Strict pipeline form: flat atom lists at the boundary, associators and
// unitors erased, braids turned into wire permutations, one generator per
// block layer.
struct StrictTerm {
  std::vector<TypePtr> dom_atoms;
  std::vector<TypePtr> cod_atoms;
  std::vector<StrictLayer> layers;
};

// The constructors strictification handles: Gen, Id, Seq, Par, the
// associator/unitor family, Braid and BraidInv. Everything else (closed,
// cartesian and compact constructors) lives outside the diagram fragment.
bool in_diagram_fragment(const MorPtr& t);
bool term_braid_free(const MorPtr& t);

// Erase associators/unitors, flatten the boundary, sequentialize the tensor.
// Semantics-preserving in every strict model. Throws FcError(invalid) for
// terms outside the diagram fragment; propagates typing errors.
StrictTerm strictify(const MorPtr& t, const Signature& sig);

std::string print_strict(const StrictTerm& st, Mode mode);

// Anchored wiring graph of a strict term: wires are identities of atom
// occurrences; each wire has one producer (diagram input or box output) and
// one consumer (diagram output or box input).
struct WireBox {
  std::string gen;
  std::vector<std::size_t> ins;
  std::vector<std::size_t> outs;
};
struct WireDiagram {
  std::vector<TypePtr> input_atoms;
  std::vector<TypePtr> output_atoms;
  std::size_t n_wires = 0; // inputs are wires 0..inputs-1
  std::vector<WireBox> boxes;
  std::vector<std::size_t> outputs; // wire at each output port
};
WireDiagram diagram_of_strict(const StrictTerm& st, const Signature& sig);

// Canonical form of the wiring graph. Boxes are scheduled into their
// earliest possible layer (longest path from the inputs), sorted within a
// layer by (input wires, generator name), and wires renumbered canonically.
// Indistinguishable zero-input boxes are resolved by trying every order and
// keeping the least encoding; more than `tie_budget` candidate orders is an
// error. Two diagram-fragment terms of a symmetric-mode signature denote
// the same morphism iff their keys are equal. `has_floating` marks
// components that never touch the boundary (scalar loops); below symmetric
// mode their placement is meaningful, so callers must not conclude equality
// from equal keys when it is set.
struct SymNF {
  std::vector<std::string> dom_atoms; // printed atom types
  std::vector<std::string> cod_atoms;
  std::vector<TypePtr> dom_atom_types;
  std::vector<TypePtr> cod_atom_types;
  std::vector<WireBox> boxes; // canonical wires and order
  std::vector<std::size_t> box_depths;
  std::vector<std::size_t> outputs;
  bool has_floating = false;
  std::string key; // printable canonical encoding; equality <=> same key
};
SymNF symmetric_normal_form(const StrictTerm& st, const Signature& sig,
                            std::size_t tie_budget = 10000);
SymNF symmetric_normal_form(const MorPtr& t, const Signature& sig,
                            std::size_t tie_budget = 10000);

// Re-emit the canonical form as a strict pipeline: route each box's inputs
// to the front, apply the box, finish with the output permutation.
StrictTerm snf_to_strict(const SymNF& nf, const Signature& sig);

// Rebuild an ordinary term from a strict pipeline (left-nested tensors,
// permutations as adjacent braid composites). Throws FcError(invalid) if a
// nontrivial permutation is needed below braided mode.
MorPtr strict_to_mor(const StrictTerm& st, const Signature& sig);

// Structural plumbing over left-nested atom tensors, shared with the
// linear-type module:
//   structural_nf(T):      T -> tensor_of_atoms(flatten(T))
//   structural_nf_inv(T):  tensor_of_atoms(flatten(T)) -> T
//   perm_to_mor(p, atoms): tensor(atoms) -> tensor(permuted atoms), p in
//                          one-line notation (atom i moves to position p[i])
MorPtr structural_nf(const TypePtr& t, Mode mode);
MorPtr structural_nf_inv(const TypePtr& t, Mode mode);
MorPtr perm_to_mor(const std::vector<std::size_t>& one_line,
                   const std::vector<TypePtr>& atoms, Mode mode);

} // namespace freecat
