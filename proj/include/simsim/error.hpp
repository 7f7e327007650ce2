#pragma once

#include <stdexcept>
#include <string>

namespace simsim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An explicit enumeration bound would be exceeded.  Never silently truncated.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A type cannot be realised at the requested field size.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity contradicted an identity that must hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NonCommutingError : public InvalidArgument {
 public:
  NonCommutingError(std::size_t i, std::size_t j)
      : InvalidArgument("tuple entries " + std::to_string(i) + " and " + std::to_string(j) +
                        " do not commute"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

}  // namespace simsim
