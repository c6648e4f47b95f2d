#pragma once

#include <stdexcept>
#include <string>

namespace stluck {

/// Base class for all engine errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A code tree violates a grammar invariant (literal outside its domain,
/// empty concatenation, non-positive repeat count, ...).
class structural_error : public error {
 public:
  using error::error;
};

/// An input value is outside the range a quantity allows.
class domain_error : public error {
 public:
  using error::error;
};

/// An input exceeds a documented size bound (e.g. the exhaustive-search
/// length limit).
class capacity_error : public error {
 public:
  using error::error;
};

/// A structured document (stories dataset, scene file) does not conform
/// to its schema.
class schema_error : public error {
 public:
  using error::error;
};

/// A request is internally inconsistent (e.g. a numeric scoring rule
/// applied to ordinal-only options).
class config_error : public error {
 public:
  using error::error;
};

}  // namespace stluck
