#ifndef STATECAP_CAPACITY_HPP
#define STATECAP_CAPACITY_HPP

#include "statecap/model.hpp"

namespace statecap {

// All rates are in nats.

// Rate of the linear auxiliary-variable scheme U = alpha*S1 + X, together
// with its two mutual-information components:
//   rate = I(U; Y,S2) - I(U; S1).
struct RateResult {
    double rate;     // nats
    double alpha;    // the coefficient it was evaluated at
    double i_u_ys2;  // I(U; Y, S2), nats
    double i_u_s1;   // I(U; S1), nats
};

// Closed form of the achievable rate at a given alpha.
// Throws DegenerateChannel when |rho_xs1| = 1 or |rho_s2z| = 1.
RateResult achievable_rate(const ChannelParams& params, double alpha);

// The coefficient maximizing achievable_rate:
//   alpha* = (q2*d_q2 - a1*d_pq1) / (q2*d_q2 + q1*d_pq1),
// the minimizer of the strictly convex quadratic denominator of the rate.
// Reduces to the classical p/(p+n) when both correlations are zero.
// Throws DegenerateChannel when either |rho| = 1.
double alpha_star(const ChannelParams& params);

// Capacity together with the two bounds that pin it down.
struct CapacityResult {
    double value;          // nats; +inf when |rho_s2z| = 1 and |rho_xs1| < 1
    double achievability;  // achievable_rate at alpha*
    double converse;       // converse_bound

    bool is_infinite() const;
};

// Capacity of the channel:
//   C = 0.5 * ln(1 + p*(1 - rho_xs1^2) / (n*(1 - rho_s2z^2))).
// Degenerate limits: |rho_xs1| = 1 gives exactly 0 (all three fields);
// |rho_s2z| = 1 gives +inf in all three fields; both at once is a 0/0 form
// and throws IndeterminateCapacity.
CapacityResult channel_capacity(const ChannelParams& params);

// Upper bound from the conditional mutual information I(X; Y | S1, S2):
//   0.5 * ln((q2*d_q2 + q1*d_pq1) / (q1*d_pq1)).
// Defined for |rho_s2z| < 1 (DegenerateChannel otherwise); |rho_xs1| = 1 is
// allowed and gives exactly 0.
double converse_bound(const ChannelParams& params);

// The no-interference reference 0.5 * ln(1 + p/n); equals channel_capacity
// whenever both correlations are zero.
double costa_capacity(double p, double n);

}  // namespace statecap

#endif
