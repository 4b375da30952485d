#pragma once

#include <stdexcept>
#include <string>

namespace llc {

// Base of every failure raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the open interval or range an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A 2x2 table with an empty case or control row.
class ZeroMargin : public Error {
 public:
  using Error::Error;
};

// A zero cell where the log odds ratio is undefined (no continuity correction).
class ZeroCell : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

// Risk specification with no valid complementary risk in (0, 1).
class InconsistentParams : public Error {
 public:
  using Error::Error;
};

}  // namespace llc
