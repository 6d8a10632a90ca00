#pragma once

#include <stdexcept>
#include <string>

namespace freecat {

// One error family for the whole library; `kind` maps onto the CLI exit-code
// contract (parse/type -> 3, invalid -> 1, io -> 4).
enum class ErrKind { parse, type, invalid, io, internal };

class FcError : public std::runtime_error {
public:
  FcError(ErrKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) {
  throw FcError(ErrKind::parse, msg);
}
[[noreturn]] inline void fail_type(const std::string& msg) {
  throw FcError(ErrKind::type, msg);
}
[[noreturn]] inline void fail_invalid(const std::string& msg) {
  throw FcError(ErrKind::invalid, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw FcError(ErrKind::io, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw FcError(ErrKind::internal, msg);
}

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
  case ErrKind::parse: return "parse";
  case ErrKind::type: return "type";
  case ErrKind::invalid: return "invalid";
  case ErrKind::io: return "io";
  case ErrKind::internal: return "internal";
  }
  return "error";
}

} // namespace freecat
