#include "freecat/signature.hpp"

#include <set>

#include "freecat/error.hpp"

namespace freecat {

bool Signature::has_object(std::string_view name) const {
  for (const auto& o : objects)
    if (o == name) return true;
  return false;
}

const TypePtr* Signature::find_alias(std::string_view name) const {
  for (const auto& a : aliases)
    if (a.first == name) return &a.second;
  return nullptr;
}

const GenDecl* Signature::find_gen(std::string_view name) const {
  for (const auto& g : generators)
    if (g.name == name) return &g;
  return nullptr;
}

const NamedTerm* Signature::find_term(std::string_view name) const {
  for (const auto& t : terms)
    if (t.name == name) return &t;
  return nullptr;
}

bool is_reserved_word(std::string_view name) {
  static const std::set<std::string_view> words = {
      "id",    "assoc",   "unassoc", "left",  "unleft", "right",
      "unright", "braid", "braidinv", "curry", "uncurry", "ev",
      "cup",   "cap",     "dup",     "del",   "pair",   "p1",
      "p2",    "name",    "I",       "mode",  "obj",    "alias",
      "gen",   "term",    "proof"};
  return words.contains(name);
}

namespace {

// Basic names a type mentions.
void basic_names(const TypePtr& t, std::set<std::string>& out) {
  switch (t->tag) {
  case TypeTag::Basic:
    out.insert(t->name);
    return;
  case TypeTag::Unit:
    return;
  case TypeTag::Tensor:
  case TypeTag::Hom:
    basic_names(t->left, out);
    basic_names(t->right, out);
    return;
  case TypeTag::Dual:
    basic_names(t->left, out);
    return;
  }
}

void check_type_names(const Signature& sig, const TypePtr& t,
                      const std::string& where,
                      std::vector<std::string>& report) {
  std::set<std::string> names;
  basic_names(t, names);
  for (const auto& n : names)
    if (!sig.has_object(n))
      report.push_back(where + " uses undeclared object '" + n + "'");
  if (auto v = type_mode_violation(t, sig.mode))
    report.push_back(where + ": " + *v);
}

} // namespace

std::vector<std::string> validate_signature(const Signature& sig) {
  std::vector<std::string> report;
  std::set<std::string> seen;

  auto claim = [&](const std::string& name, const char* what) {
    if (is_reserved_word(name))
      report.push_back(std::string(what) + " '" + name +
                       "' is a reserved word");
    if (!seen.insert(name).second)
      report.push_back(std::string("duplicate name '") + name + "' (" + what +
                       ")");
  };

  for (const auto& o : sig.objects) claim(o, "object");
  for (const auto& a : sig.aliases) {
    claim(a.first, "alias");
    check_type_names(sig, a.second, "alias '" + a.first + "'", report);
  }
  for (const auto& g : sig.generators) {
    claim(g.name, "generator");
    check_type_names(sig, g.dom, "generator '" + g.name + "' domain", report);
    check_type_names(sig, g.cod, "generator '" + g.name + "' codomain",
                     report);
  }
  for (const auto& nt : sig.terms) {
    claim(nt.name, "term");
    try {
      infer_dom_cod(nt.term, sig);
    } catch (const FcError& e) {
      report.push_back("term '" + nt.name + "' is ill-typed: " + e.what());
    }
  }
  return report;
}

} // namespace freecat
