#pragma once

#include <stdexcept>
#include <string>

namespace minmod {

// Base of every exception the library throws. The CLI maps the concrete
// type onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit together (inner dimensions, ambient dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Parameters outside an operation's domain: non-Hermitian input to a
// Hermitian routine, a non-orthonormal frame, an inconsistent tail rule.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A request that is well formed but not covered (e.g. an exact range for a
// variant that has no closed form).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Configured resource cap exceeded (dense dimension limit).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace minmod
