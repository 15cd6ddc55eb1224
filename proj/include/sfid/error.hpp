#pragma once

#include <stdexcept>
#include <string>

namespace sfid {

// Base class for every error raised by the library. Callers that only need
// to distinguish "bad input" from "bug" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed character in a text pattern. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Ragged rows or an m/r field that disagrees with the matrix.
class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, int line = 0)
      : Error(line > 0 ? what + " at line " + std::to_string(line) : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

class MatchingNotMaximum : public Error {
 public:
  using Error::Error;
};

// A zero row or zero column reached an operation that needs a trimmed pattern.
class UntrimmedPattern : public Error {
 public:
  using Error::Error;
};

// r == 0 where at least one factor is required.
class EmptyPattern : public Error {
 public:
  using Error::Error;
};

class SentinelCut : public Error {
 public:
  using Error::Error;
};

class TooManyColumns : public Error {
 public:
  using Error::Error;
};

// m < 2r + s: no pattern of this shape can satisfy the counting rule.
class InfeasibleDimensions : public Error {
 public:
  using Error::Error;
};

class DeletionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoDecomposition : public Error {
 public:
  using Error::Error;
};

}  // namespace sfid
