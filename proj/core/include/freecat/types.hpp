#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freecat/mode.hpp"

namespace freecat {

class TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

enum class TypeTag { Basic, Unit, Tensor, Hom, Dual };

// Immutable object-language type: basic objects, the unit, tensors,
// internal homs (right-closed: X -o Y) and duals (postfix ^).
class TypeExpr {
public:
  TypeTag tag;
  std::string name; // Basic only
  TypePtr left;     // Tensor/Hom left operand, Dual operand
  TypePtr right;    // Tensor/Hom right operand

  TypeExpr(TypeTag t, std::string n, TypePtr l, TypePtr r)
      : tag(t), name(std::move(n)), left(std::move(l)), right(std::move(r)) {}
};

TypePtr t_basic(std::string name);
TypePtr t_unit();
TypePtr t_tensor(TypePtr l, TypePtr r);
TypePtr t_hom(TypePtr l, TypePtr r);
// Normalizing: Dual(Dual(X)) -> X, Dual(I) -> I,
// Dual(X*Y) -> Dual(X)*Dual(Y); Dual ends up wrapping basic names only.
TypePtr t_dual(TypePtr x);

bool type_eq(const TypePtr& a, const TypePtr& b);

// Mode-aware canonical form: expands Hom(X,Y) to Dual(X)*Y in
// compact-symmetric mode and re-normalizes duals bottom-up.
TypePtr canonical_type(const TypePtr& t, Mode mode);

// First mode problem in the type, if any (Hom below closed, Dual below
// compact). Empty means the type is legal at `mode`.
std::optional<std::string> type_mode_violation(const TypePtr& t, Mode mode);

// Tensor-flattened atom list; Unit atoms dropped. Atoms are Basic, Hom or
// Dual(Basic) nodes.
std::vector<TypePtr> flatten_type(const TypePtr& t);

// Rebuild a type from atoms as a left-nested tensor (Unit for the empty
// list).
TypePtr tensor_of_atoms(const std::vector<TypePtr>& atoms);

// Unit prints as "1" in cartesian modes, "I" otherwise; parser accepts both.
std::string print_type(const TypePtr& t, Mode mode = Mode::monoidal);

} // namespace freecat
