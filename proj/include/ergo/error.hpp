#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ergo {

enum class ErrorKind {
  kInvalidInput,
  kParse,
  kIncompleteTable,
  kDuplicate,
  kPrecondition,
  kNotUnique,
  kNotImplemented,
  kNumeric,
  kInvariant,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Exit status the command line tool maps each error kind to.
int exit_code(ErrorKind kind);

}  // namespace ergo
