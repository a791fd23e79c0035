#ifndef ONEBIT_ERRORS_HPP
#define ONEBIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace onebit {

/// Cholesky factorization of a covariance failed (not positive definite).
class SingularCovarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace onebit

#endif  // ONEBIT_ERRORS_HPP
