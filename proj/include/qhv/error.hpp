#pragma once

#include <stdexcept>
#include <string>

namespace qhv {

enum class ErrorCode {
  usage,
  domain,
  division_by_zero,
  degenerate,
  invalid_params,
  invariant_violation,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorCode::usage, w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error(ErrorCode::division_by_zero, "division by zero") {}
};

struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string& w) : Error(ErrorCode::degenerate, w) {}
};

// A combinatorial claim about the varieties failed at a concrete input.
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error(ErrorCode::invariant_violation, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};

}  // namespace qhv
