#pragma once

#include <stdexcept>
#include <string>

namespace rzg {

// Argument outside the supported mathematical domain (n = 0, empty state, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A move or action was applied in a position where it is not legal.
class IllegalMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constructive strategy was asked to act outside the positions it covers.
class StrategyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NoWinningMoveError : public StrategyError {
 public:
  using StrategyError::StrategyError;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace rzg

namespace rzg {

// A configured node or memory budget was exhausted before the work finished.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rzg
