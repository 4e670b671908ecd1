#pragma once

#include <stdexcept>
#include <string>

namespace mmspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (space files, certificates, numeric literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a precondition of the operation.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Exact search refused because the instance exceeds the configured guard.
class GuardExceeded : public Error {
 public:
  GuardExceeded(const std::string& what, std::string search_space_size)
      : Error(what + " (instance too large for exact search; search space size " +
              search_space_size + ")"),
        search_space_size_(std::move(search_space_size)) {}

  const std::string& search_space_size() const noexcept { return search_space_size_; }

 private:
  std::string search_space_size_;
};

/// An operation's mathematical hypothesis does not hold for the given data.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// The operation's conclusion is only defined under a premise that fails here.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace mmspace
