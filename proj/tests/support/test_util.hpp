#pragma once

// Shared helpers for the test suites: data-file access and small fixture
// signatures.

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "freecat/signature.hpp"
#include "freecat/types.hpp"

namespace freecat::test {

inline std::string data_path(const std::string& name) {
  return std::string(FREECAT_TEST_DATA) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open test data file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Three basic objects and a small generator family legal at every mode;
// closed modes add a generator with an internal-hom codomain.
inline std::shared_ptr<Signature> fixture_sig(Mode mode) {
  auto sig = std::make_shared<Signature>();
  sig->mode = mode;
  sig->objects = {"A", "B", "C"};
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  sig->generators.push_back({"f", a, b});
  sig->generators.push_back({"g", b, a});
  sig->generators.push_back({"e", a, a});
  sig->generators.push_back({"h", t_tensor(a, b), c});
  sig->generators.push_back({"k", c, t_tensor(a, b)});
  if (mode_has_closed(mode))
    sig->generators.push_back(
        {"gg", c, canonical_type(t_hom(a, b), mode)});
  return sig;
}

} // namespace freecat::test
