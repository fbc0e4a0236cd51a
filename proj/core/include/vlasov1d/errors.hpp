#pragma once

#include <stdexcept>
#include <string>

namespace vlasov1d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument to a mathematical routine (reversed bounds, m <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The epsilon-support of a species reached the boundary buffer during a run.
class SupportBreach : public Error {
 public:
  SupportBreach(const std::string& what, double time) : Error(what), time_(time) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A dissipation density came out negative beyond round-off.
class NegativityError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. Carries the offending line (1-based, 0 if n/a).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Configuration value outside its admissible range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Initial data does not fit inside the grid with the required buffer.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Initial data cannot be made neutral by rescaling.
class NeutralityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line usage (e.g. fewer than three convergence levels).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace vlasov1d
