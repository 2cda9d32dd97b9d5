#pragma once

#include <stdexcept>
#include <string>

namespace dwpf {

// Root of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularArgument : public Error {
 public:
  using Error::Error;
};

class SingularNormalization : public Error {
 public:
  using Error::Error;
};

class DegenerateRapidities : public Error {
 public:
  using Error::Error;
};

class UnreachableSigma : public Error {
 public:
  using Error::Error;
};

class NotInTable : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class GenericityExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace dwpf
