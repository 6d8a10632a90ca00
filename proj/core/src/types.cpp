#include "freecat/types.hpp"

#include "freecat/error.hpp"

namespace freecat {

TypePtr t_basic(std::string name) {
  return std::make_shared<TypeExpr>(TypeTag::Basic, std::move(name), nullptr,
                                    nullptr);
}

TypePtr t_unit() {
  static const TypePtr unit =
      std::make_shared<TypeExpr>(TypeTag::Unit, "", nullptr, nullptr);
  return unit;
}

TypePtr t_tensor(TypePtr l, TypePtr r) {
  return std::make_shared<TypeExpr>(TypeTag::Tensor, "", std::move(l),
                                    std::move(r));
}

TypePtr t_hom(TypePtr l, TypePtr r) {
  return std::make_shared<TypeExpr>(TypeTag::Hom, "", std::move(l),
                                    std::move(r));
}

TypePtr t_dual(TypePtr x) {
  switch (x->tag) {
  case TypeTag::Unit:
    return x;
  case TypeTag::Dual:
    return x->left;
  case TypeTag::Tensor:
    return t_tensor(t_dual(x->left), t_dual(x->right));
  default:
    return std::make_shared<TypeExpr>(TypeTag::Dual, "", std::move(x),
                                      nullptr);
  }
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case TypeTag::Basic:
    return a->name == b->name;
  case TypeTag::Unit:
    return true;
  case TypeTag::Tensor:
  case TypeTag::Hom:
    return type_eq(a->left, b->left) && type_eq(a->right, b->right);
  case TypeTag::Dual:
    return type_eq(a->left, b->left);
  }
  return false;
}

TypePtr canonical_type(const TypePtr& t, Mode mode) {
  switch (t->tag) {
  case TypeTag::Basic:
  case TypeTag::Unit:
    return t;
  case TypeTag::Tensor: {
    TypePtr l = canonical_type(t->left, mode);
    TypePtr r = canonical_type(t->right, mode);
    if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
    return t_tensor(std::move(l), std::move(r));
  }
  case TypeTag::Hom: {
    TypePtr l = canonical_type(t->left, mode);
    TypePtr r = canonical_type(t->right, mode);
    if (mode == Mode::compact_symmetric)
      return t_tensor(t_dual(std::move(l)), std::move(r));
    if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
    return t_hom(std::move(l), std::move(r));
  }
  case TypeTag::Dual:
    return t_dual(canonical_type(t->left, mode));
  }
  fail_type("unreachable type tag");
}

std::optional<std::string> type_mode_violation(const TypePtr& t, Mode mode) {
  switch (t->tag) {
  case TypeTag::Basic:
  case TypeTag::Unit:
    return std::nullopt;
  case TypeTag::Tensor:
    if (auto v = type_mode_violation(t->left, mode)) return v;
    return type_mode_violation(t->right, mode);
  case TypeTag::Hom:
    if (!mode_has_closed(mode))
      return "type uses -o but mode " + std::string(mode_name(mode)) +
             " has no internal hom";
    if (auto v = type_mode_violation(t->left, mode)) return v;
    return type_mode_violation(t->right, mode);
  case TypeTag::Dual:
    if (!mode_has_duals(mode))
      return "type uses ^ but mode " + std::string(mode_name(mode)) +
             " has no duals";
    return type_mode_violation(t->left, mode);
  }
  return std::nullopt;
}

namespace {

void flatten_into(const TypePtr& t, std::vector<TypePtr>& out) {
  switch (t->tag) {
  case TypeTag::Unit:
    return;
  case TypeTag::Tensor:
    flatten_into(t->left, out);
    flatten_into(t->right, out);
    return;
  default:
    out.push_back(t);
  }
}

} // namespace

std::vector<TypePtr> flatten_type(const TypePtr& t) {
  std::vector<TypePtr> out;
  flatten_into(t, out);
  return out;
}

TypePtr tensor_of_atoms(const std::vector<TypePtr>& atoms) {
  if (atoms.empty()) return t_unit();
  TypePtr acc = atoms[0];
  for (std::size_t i = 1; i < atoms.size(); ++i)
    acc = t_tensor(acc, atoms[i]);
  return acc;
}

namespace {

// precedence: hom 1 < tensor 2 < dual 3 < atom 4
int type_prec(TypeTag tag) {
  switch (tag) {
  case TypeTag::Hom:
    return 1;
  case TypeTag::Tensor:
    return 2;
  case TypeTag::Dual:
    return 3;
  default:
    return 4;
  }
}

void print_rec(const TypePtr& t, Mode mode, int min_prec, std::string& out) {
  int prec = type_prec(t->tag);
  bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (t->tag) {
  case TypeTag::Basic:
    out += t->name;
    break;
  case TypeTag::Unit:
    out += mode_has_cartesian(mode) ? "1" : "I";
    break;
  case TypeTag::Tensor:
    print_rec(t->left, mode, 2, out);
    out += " * ";
    print_rec(t->right, mode, 3, out);
    break;
  case TypeTag::Hom:
    print_rec(t->left, mode, 2, out);
    out += " -o ";
    print_rec(t->right, mode, 1, out);
    break;
  case TypeTag::Dual:
    print_rec(t->left, mode, 4, out);
    out += '^';
    break;
  }
  if (paren) out += ')';
}

} // namespace

std::string print_type(const TypePtr& t, Mode mode) {
  std::string out;
  print_rec(t, mode, 0, out);
  return out;
}

} // namespace freecat
