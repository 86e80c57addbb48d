#pragma once

#include <stdexcept>
#include <string>

namespace pervcheck {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, bad arguments, mismatched rings.
class InputError : public Error {
public:
  using Error::Error;
};

/// A computation exceeded one of the configured budgets (minor size, S-pairs).
class ResourceError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside the hypotheses it is valid under.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Declared loci disagree with what the complex actually computes.
class InconsistencyError : public Error {
public:
  InconsistencyError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

private:
  std::string witness_;
};

} // namespace pervcheck
