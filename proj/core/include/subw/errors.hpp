#pragma once

#include <stdexcept>
#include <string>

namespace subw {

// Argument outside a function's mathematical domain (bad parameter, bad range).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Sample carries no usable signal (all zeros, too few positive points).
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& what) : std::runtime_error(what) {}
};

// Request is outside the validity region of a bound (x < n*K, alpha >= 1/e, theta > 1).
class OutOfValidityError : public std::runtime_error {
 public:
  explicit OutOfValidityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subw
