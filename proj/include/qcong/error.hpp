#pragma once

#include <stdexcept>
#include <string>

namespace qcong {

// Error taxonomy used across the library. The CLI maps these onto exit codes:
// bad_config -> 2, window/resource -> 3.
enum class ErrorKind {
  bad_argument,
  modulus_mismatch,
  empty_window,
  window_exceeded,
  support_violation,
  search_exhausted,
  io_failure,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}
