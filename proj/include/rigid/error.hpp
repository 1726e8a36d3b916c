#pragma once

#include <stdexcept>
#include <string>

namespace rigid {

enum class ErrorKind {
  invalid_argument,
  tower_mismatch,
  insufficient_precision,
  unsupported_algebra,
  not_first_order,
  not_an_oper,
  unsupported_connection,
  parse_error,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

}  // namespace rigid
