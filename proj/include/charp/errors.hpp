#pragma once

#include <stdexcept>
#include <string>

namespace charp {

/// Malformed or inconsistent caller input (bad grammar, mixed rings, bad q).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold (e.g. ord(f) != 2).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The characteristic is outside what an algorithm supports (division by 2 or 3).
class UnsupportedCharacteristic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured work budget was exhausted before a decision was reached.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace charp
