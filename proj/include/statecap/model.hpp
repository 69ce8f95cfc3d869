#ifndef STATECAP_MODEL_HPP
#define STATECAP_MODEL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "statecap/errors.hpp"

namespace statecap {

// Additive Gaussian channel Y = X + S1 + S2 + Z with two-sided state:
// S1 is known at the transmitter and may correlate with the input X,
// S2 is known at the receiver and may correlate with the noise Z.
// Every other cross-correlation (X-S2, X-Z, S1-S2, S1-Z) is zero by
// definition of the channel, so it is not a parameter.
struct ChannelParams {
    double p = 1.0;        // input power bound, used as E{X^2}
    double q1 = 1.0;       // variance of S1
    double q2 = 1.0;       // variance of S2
    double n = 1.0;        // noise variance
    double rho_xs1 = 0.0;  // correlation between X and S1
    double rho_s2z = 0.0;  // correlation between S2 and Z

    // |rho| = 1 on either side makes some covariance singular; such channels
    // are accepted by validate() but most closed forms refuse them.
    bool degenerate() const;
};

// Checks the channel definition and returns it unchanged.
// Throws NonPositiveVariance or CorrelationOutOfRange.
ChannelParams validate(const ChannelParams& raw);

// Second moments derived from the channel definition.
// The d_* subscripts are historical: d_q2 contains no q2 and d_pq1 contains
// no p or q1.  Both are nonnegative and vanish exactly when the matching
// correlation is +/-1.
struct DerivedMoments {
    double a1;     // E{X S1}  = sqrt(p*q1) * rho_xs1
    double l2;     // E{S2 Z}  = sqrt(q2*n) * rho_s2z
    double d_q2;   // p*q1 - a1^2  = p*q1*(1 - rho_xs1^2)
    double d_pq1;  // q2*n - l2^2  = q2*n*(1 - rho_s2z^2)
};

DerivedMoments derived_moments(const ChannelParams& params);

// Labeled symmetric covariance matrix over a small variable set
// (typically a subset of {X, S1, S2, Z, U, Y}).
class CovMatrix {
  public:
    // `rowmajor` must be dim x dim where dim = labels.size(); the upper
    // triangle is mirrored onto the lower one, so the stored matrix is
    // symmetric to exact equality.  Labels must be unique and the diagonal
    // nonnegative.
    CovMatrix(std::vector<std::string> labels, std::vector<double> rowmajor);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    double operator()(std::size_t i, std::size_t j) const { return m_[i * dim() + j]; }
    double at(const std::string& a, const std::string& b) const;

    // Index of a label; throws LabelError if absent.
    std::size_t index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    // Covariance of the listed variables, in the listed order.
    CovMatrix submatrix(const std::vector<std::string>& subset) const;

    double trace() const;

    // Smallest eigenvalue, by cyclic Jacobi rotations.
    double min_eigenvalue() const;

    // Scale-free positive-semidefiniteness test: min eigenvalue >= -1e-9 * trace.
    bool is_psd() const;

  private:
    std::vector<std::string> labels_;
    std::vector<double> m_;  // row-major, symmetric
};

// Appends a new variable defined as the linear combination
// sum_i coeff_i * base_i of existing variables.  The new row/column is the
// exact image of the base rows, so no sampling or approximation is involved.
CovMatrix extend_linear(const CovMatrix& base, const std::string& new_label,
                        const std::vector<std::pair<std::string, double>>& combo);

// 4x4 covariance of (X, S1, S2, Z) for a validated channel.
CovMatrix base_covariance(const ChannelParams& params);

// 6x6 covariance of (X, S1, S2, Z, U, Y) with U = alpha*S1 + X and
// Y = X + S1 + S2 + Z.
CovMatrix joint_covariance(const ChannelParams& params, double alpha);

// Channel plus a fixed auxiliary coefficient.
struct JointModel {
    ChannelParams params;
    double alpha;   // U = alpha*S1 + X
    CovMatrix base; // over (X, S1, S2, Z)
};

JointModel make_joint_model(const ChannelParams& params, double alpha);

// Gaussian statement of the chain S2 -> S1 -> (U, X): the partial covariance
// of S2 with U and with X given S1 must vanish (within 1e-12, scale-aware).
// True by construction for any base built by this library; false for a
// hand-built base with the independence structure broken.
bool check_structure(const JointModel& model);

}  // namespace statecap

#endif
