#pragma once

#include <stdexcept>
#include <string>

namespace twoadic {

/// An operation was called outside its domain (bad level, inadmissible exponent, ...).
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A document does not match its documented JSON/CSV schema.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace twoadic
