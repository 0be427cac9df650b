#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable files.
class DataError : public Error {
 public:
  using Error::Error;
};

// Raised by the pairing when its partial sums do not settle.
class IllPairedError : public Error {
 public:
  IllPairedError(const std::string& what, double tail_fraction)
      : Error(what), tail_fraction_(tail_fraction) {}
  double tail_fraction() const { return tail_fraction_; }

 private:
  double tail_fraction_;
};

}  // namespace gevrey
