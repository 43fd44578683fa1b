#pragma once

#include <stdexcept>
#include <string>

namespace maps {

enum class ErrorKind {
  kParameter,
  kFormat,
  kValue,
  kMetadata,
  kIo,
  kCapacity,
  kNumerical,
};

/// Single exception type for the library; `kind()` tells callers how to react.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kValue: return "value error";
    case ErrorKind::kMetadata: return "metadata error";
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kCapacity: return "capacity error";
    case ErrorKind::kNumerical: return "numerical error";
  }
  return "error";
}

/// Process exit code for an error kind: 1 input/parameter, 2 capacity, 3 numerical.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacity: return 2;
    case ErrorKind::kNumerical: return 3;
    default: return 1;
  }
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace maps
