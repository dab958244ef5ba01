#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssdlat {

enum class ErrorKind {
  Malformed,         // positions out of range, duplicate edges, empty levels
  NotBoundedPoset,   // missing unique bottom/top or a dangling node
  Crossing,          // two edges of one gap cross
  NotLattice,        // some pair lacks a join or a meet
  BoundaryNotChain,
  CornerIsCoatom,
  RankZero,
  ResourceLimit,
  ParseError,
  MissingRow,
  DomainError,
  BadAnchor,
  CacheMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ssdlat
