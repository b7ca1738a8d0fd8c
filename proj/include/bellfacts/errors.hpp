#pragma once

#include <stdexcept>
#include <string>

namespace bellfacts {

// Bad argument: non-finite angle, invalid state, probability out of [0,1].
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidProtocol : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidQuestion : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidResolution : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidConfig : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A computed value left its admissible range by more than the round-off guard.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bellfacts
