#pragma once

#include <stdexcept>
#include <string>

namespace conicquad {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

// Raised when none of the tangency candidates yields free pieces.
class NoTangencyCandidate : public Error {
 public:
  using Error::Error;
};

class SubdivisionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace conicquad
