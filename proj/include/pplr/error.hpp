#pragma once

#include <stdexcept>
#include <string>

namespace pplr {

enum class ErrorCode {
  kInvalidArgument,
  kData,
  kProtocol,
  kOverflow,
  kDeadlock,
  kIo,
};

/// Base exception for the library. The C API maps `code()` onto its status
/// values, so every throw site picks the category a caller can act on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCode::kData, what) {}
};

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what)
      : Error(ErrorCode::kProtocol, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what)
      : Error(ErrorCode::kOverflow, what) {}
};

class DeadlockError : public Error {
 public:
  explicit DeadlockError(const std::string& what)
      : Error(ErrorCode::kDeadlock, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace pplr
