#ifndef CVGEOM_ERRORS_HPP
#define CVGEOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvgeom {

// A body variant does not support the requested evaluation.
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A spectral operation was requested outside zonal / n=3 scope.
class scope_error : public std::runtime_error {
 public:
  explicit scope_error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature or evaluation produced a non-finite value.
class numerical_failure : public std::runtime_error {
 public:
  explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cvgeom

#endif
