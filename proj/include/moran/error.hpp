#pragma once

#include <stdexcept>
#include <string>

namespace moran {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A digit is outside the alphabet of its position.
class InvalidDigit : public Error {
 public:
  using Error::Error;
};

/// A digit or address violates a family restriction (0 or u where excluded).
class FamilyConstraint : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this family or input kind.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its cap.
class Blowup : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Family text does not follow the grammar.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace moran
