#pragma once

#include <stdexcept>
#include <string>

namespace catalysis {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int { Success = 0, InputError = 1, NumericalFailure = 2 };

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag written into error records.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what, ExitCode code)
      : std::runtime_error(what), kind_(std::move(kind)), code_(code) {}

  const std::string& kind() const noexcept { return kind_; }
  ExitCode exit_code() const noexcept { return code_; }

private:
  std::string kind_;
  ExitCode code_;
};

/// Caller supplied something outside an operation's domain.
class InputError : public Error {
public:
  explicit InputError(const std::string& what, std::string kind = "input")
      : Error(std::move(kind), what, ExitCode::InputError) {}
};

/// A computation produced a result that violates a numerical contract.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what, std::string kind = "numerical")
      : Error(std::move(kind), what, ExitCode::NumericalFailure) {}
};

class OutOfRangeError : public InputError {
public:
  explicit OutOfRangeError(const std::string& what) : InputError(what, "out_of_range") {}
};

class DomainError : public InputError {
public:
  explicit DomainError(const std::string& what) : InputError(what, "domain") {}
};

class DimensionMismatch : public InputError {
public:
  explicit DimensionMismatch(const std::string& what) : InputError(what, "dimension_mismatch") {}
};

/// Two-mode truncation discarded more probability than allowed; increase N.
class TruncationError : public NumericalError {
public:
  explicit TruncationError(const std::string& what) : NumericalError(what, "truncation") {}
};

/// Conditioning on an event of (numerically) zero probability.
class NoStatisticsError : public NumericalError {
public:
  explicit NoStatisticsError(const std::string& what) : NumericalError(what, "no_statistics") {}
};

class CoverageError : public InputError {
public:
  explicit CoverageError(const std::string& what) : InputError(what, "phase_coverage") {}
};

class DegenerateRecordError : public InputError {
public:
  explicit DegenerateRecordError(const std::string& what) : InputError(what, "degenerate_record") {}
};

}  // namespace catalysis
