#ifndef STATECAP_GAUSSIAN_INFO_HPP
#define STATECAP_GAUSSIAN_INFO_HPP

#include <string>
#include <vector>

#include "statecap/model.hpp"

namespace statecap {

// Everything in this module is in nats; unit conversion is presentation-only.

// Determinant by LU decomposition with partial pivoting.  The matrices here
// are at most 8x8, so a direct routine beats pulling in a dependency.
double determinant(const CovMatrix& cov);

struct EntropyValue {
    double value;                           // nats
    std::vector<std::string> variable_set;  // which variables it refers to
};

// Differential entropy 0.5 * ln((2*pi*e)^k * det(cov)).
// Throws SingularCovariance when det(cov) <= 1e-12 * prod(diagonal), the
// scale-free singularity test; that happens exactly when some |rho| = 1.
EntropyValue diff_entropy(const CovMatrix& cov);

// I(A;B) = H(A) + H(B) - H(A,B), in nats.  Sets must be nonempty, disjoint
// and drawn from cov's labels (LabelError otherwise).
double mutual_info(const CovMatrix& cov, const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b);

// The named closed-form entropies of the channel, each one an explicit
// expression in the channel parameters rather than a log-determinant.
// diff_entropy over joint_covariance submatrices must reproduce every entry;
// the property tests check exactly that.
struct EntropyTable {
    double h_y_s2;            // H(Y, S2)
    double h_u_y_s2;          // H(U, Y, S2)
    double h_s1;              // H(S1)
    double h_u_s1;            // H(U, S1)
    double h_x_plus_z_s1_s2;  // H(X+Z, S1, S2)
    double h_s1_s2;           // H(S1, S2)
    double h_z_s2;            // H(Z, S2)
};

// Throws DegenerateChannel when |rho_xs1| = 1 or |rho_s2z| = 1 (some
// determinant in the table is zero there).
EntropyTable closed_form_entropies(const ChannelParams& params, double alpha);

}  // namespace statecap

#endif
