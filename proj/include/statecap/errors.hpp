#ifndef STATECAP_ERRORS_HPP
#define STATECAP_ERRORS_HPP

#include <stdexcept>

namespace statecap {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// validate(): one of p, q1, q2, n is not strictly positive (or not finite).
struct NonPositiveVariance : Error { using Error::Error; };

// validate(): a correlation coefficient lies outside [-1, 1].
struct CorrelationOutOfRange : Error { using Error::Error; };

// A covariance determinant is zero (or negative) within tolerance.
struct SingularCovariance : Error { using Error::Error; };

// Unknown, duplicate, empty or overlapping variable label sets.
struct LabelError : Error { using Error::Error; };

// An operation that needs |rho| < 1 on both sides was given a channel
// with |rho_xs1| = 1 or |rho_s2z| = 1.
struct DegenerateChannel : Error { using Error::Error; };

// Both correlations are +/-1: the capacity limit is a 0/0 form.
struct IndeterminateCapacity : Error { using Error::Error; };

// maximize_scalar(): lo >= hi, or tol <= 0.
struct InvalidBracket : Error { using Error::Error; };

// maximize_scalar(): the objective returned NaN or +/-inf inside the bracket.
struct NonFiniteValue : Error { using Error::Error; };

// cholesky(): the matrix is not strictly positive definite.
struct NotPositiveDefinite : Error { using Error::Error; };

// Monte Carlo: an empirical covariance came out singular; retry with a new seed.
struct SingularEmpiricalCovariance : Error { using Error::Error; };

}  // namespace statecap

#endif
