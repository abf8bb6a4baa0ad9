#pragma once

#include <stdexcept>
#include <string>

namespace tpmc {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document (bad syntax, unknown references, invalid values).
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// An operation was called outside its stated contract.
class PreconditionError : public Error {
  public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A configured enumeration or size cap would be exceeded.
class CapExceededError : public Error {
  public:
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

/// A structural invariant that is guaranteed by construction failed to hold.
/// This is never expected on valid inputs; it is surfaced as a falsification
/// report instead of being silently repaired.
class FalsificationError : public Error {
  public:
    explicit FalsificationError(const std::string& what) : Error(what) {}
};

} // namespace tpmc
