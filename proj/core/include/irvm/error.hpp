#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irvm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ballot file, seat-record file or manifest. `line()` is 1-based,
/// or 0 when the problem is not tied to a particular line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A profile that violates a structural invariant (duplicate ids, bad counts, ...).
class ProfileError : public Error {
 public:
  using Error::Error;
};

/// The official count hit tied minimal tallies under TieRule::FailOnTie.
class UnresolvedTie : public Error {
 public:
  using Error::Error;
};

class EmptyAlternates : public Error {
 public:
  EmptyAlternates() : Error("alternate set is empty") {}
};

class AlternateIsWinner : public Error {
 public:
  explicit AlternateIsWinner(const std::string& who)
      : Error("alternate '" + who + "' is the winner of the count") {}
};

class CoalitionLacksMajority : public Error {
 public:
  using Error::Error;
};

class MissingMovc : public Error {
 public:
  using Error::Error;
};

/// The LP backend failed in a way that cannot happen for a well-formed model.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle was given an instance outside its configured caps.
class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace irvm
