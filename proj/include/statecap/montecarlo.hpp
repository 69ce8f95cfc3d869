#ifndef STATECAP_MONTECARLO_HPP
#define STATECAP_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "statecap/model.hpp"

namespace statecap {

// Lower-triangular Cholesky factor, row-major.
struct LowerTriangular {
    std::size_t dim;
    std::vector<double> m;

    double operator()(std::size_t i, std::size_t j) const { return m[i * dim + j]; }
};

// L such that L * L^T reproduces cov (entrywise relative error <= 1e-10).
// Throws NotPositiveDefinite when a pivot is <= 1e-12 * diagonal, which is
// how a degenerate channel (|rho| = 1) announces itself here.
LowerTriangular cholesky(const CovMatrix& cov);

// A block of joint draws, one row per sample, one column per variable.
struct SampleBlock {
    std::vector<std::string> labels;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> data;  // n x labels.size(), row-major

    double at(std::size_t row, std::size_t col) const {
        return data[row * labels.size() + col];
    }
    std::size_t column(const std::string& label) const;
};

// Draws n joint samples of (X, S1, S2, Z, U, Y).  The base quadruple comes
// from the Cholesky factor of base_covariance driven by mt19937_64(seed)
// with the Marsaglia polar transform; U = alpha*S1 + X and Y = X+S1+S2+Z are
// computed from the drawn columns, so they are exact linear images, not
// fresh draws.  Bit-identical output for identical (params, alpha, n, seed).
SampleBlock sample(const ChannelParams& params, double alpha, std::size_t n,
                   std::uint64_t seed);

// Sample covariance (mean-subtracted, n-1 divisor) of the listed columns,
// optionally restricted to rows [row_begin, row_end).
CovMatrix empirical_covariance(const SampleBlock& block,
                               const std::vector<std::string>& labels,
                               std::size_t row_begin = 0,
                               std::size_t row_end = SIZE_MAX);

struct McEstimate {
    double value;       // nats
    std::size_t n;      // samples used
    double std_error;   // nats, from batch replicates
};

// Plug-in mutual information: the closed-form Gaussian functional evaluated
// on the empirical covariance.  std_error is the spread of (up to) 20
// batch replicates of the same estimator.  Requires n >= 10*k^2 for k
// involved variables; throws SingularEmpiricalCovariance on a pathological
// draw (retry with another seed).
McEstimate mc_mutual_info(const SampleBlock& block,
                          const std::vector<std::string>& set_a,
                          const std::vector<std::string>& set_b);

// One closed-form quantity checked against its sampling estimate.
struct VerificationCheck {
    std::string quantity;
    double expected;  // closed form, nats
    McEstimate estimate;
    bool pass;  // |expected - estimate.value| <= 4 * std_error
};

struct VerificationReport {
    ChannelParams params;
    double alpha;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<VerificationCheck> checks;

    bool all_pass() const;
};

// End-to-end oracle: every named entropy, the achievable rate at alpha, the
// capacity and the converse bound, each next to its Monte Carlo estimate.
VerificationReport mc_verify(const ChannelParams& params, double alpha,
                             std::size_t n, std::uint64_t seed);

}  // namespace statecap

#endif
