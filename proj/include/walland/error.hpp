#pragma once

#include <stdexcept>
#include <string>

namespace walland {

/// Malformed input documents or arguments (CLI exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (CLI exit code 3).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace walland
