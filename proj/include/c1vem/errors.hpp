// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace c1vem {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed mesh file. `line` is 1-based within the input.
class MeshFormatError : public Error {
public:
  MeshFormatError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A cell collapsed below the area tolerance during construction.
class DegenerateCellError : public Error {
public:
  using Error::Error;
};

/// Assembly or factorization failure.
class SolveError : public Error {
public:
  using Error::Error;
};

}  // namespace c1vem
