#pragma once

#include <stdexcept>
#include <string>

namespace holed {

enum class ErrorKind {
  InvalidParameter,
  ModeMismatch,
  Parse,
  ResourceLimit,
  EmptyPartition,
  Truncation,
  NoRoot,
  NotFinitelyMarkov,
  Ambiguity,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Input problems (bad flags, malformed numbers, out-of-range parameters).
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::InvalidParameter || kind_ == ErrorKind::Parse ||
           kind_ == ErrorKind::ModeMismatch;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace holed
