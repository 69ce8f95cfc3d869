#include "statecap/capacity.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace statecap {

namespace {

void require_nondegenerate(const ChannelParams& params, const char* what) {
    if (params.degenerate())
        throw DegenerateChannel(std::string(what) +
                                " needs |rho_xs1| < 1 and |rho_s2z| < 1");
}

}  // namespace

RateResult achievable_rate(const ChannelParams& params, double alpha) {
    require_nondegenerate(params, "achievable_rate");
    const DerivedMoments m = derived_moments(params);

    const double var_u = alpha * alpha * params.q1 + 2.0 * alpha * m.a1 + params.p;
    const double det_ys2 =
        params.q2 * (params.p + params.q1 + 2.0 * m.a1) + m.d_pq1;
    // det of cov(U, Y, S2); a strictly convex quadratic in alpha.
    const double det_uys2 =
        m.d_pq1 * var_u + (alpha - 1.0) * (alpha - 1.0) * params.q2 * m.d_q2;

    RateResult r;
    r.alpha = alpha;
    r.rate = 0.5 * std::log(m.d_q2 * det_ys2 / (params.q1 * det_uys2));
    r.i_u_ys2 = 0.5 * std::log(var_u * det_ys2 / det_uys2);
    r.i_u_s1 = 0.5 * std::log(var_u * params.q1 / m.d_q2);
    return r;
}

double alpha_star(const ChannelParams& params) {
    require_nondegenerate(params, "alpha_star");
    const DerivedMoments m = derived_moments(params);
    const double denom = params.q2 * m.d_q2 + params.q1 * m.d_pq1;
    const double a = (params.q2 * m.d_q2 - m.a1 * m.d_pq1) / denom;
    // |alpha*| <= max(1, |a1|/q1) always; anything else is a logic error.
    assert(std::abs(a) <=
           std::max(1.0, std::abs(m.a1) / params.q1) * (1.0 + 1e-12) + 1e-12);
    return a;
}

bool CapacityResult::is_infinite() const { return std::isinf(value); }

CapacityResult channel_capacity(const ChannelParams& params) {
    const double num =
        params.p * (1.0 - params.rho_xs1) * (1.0 + params.rho_xs1);
    const double den =
        params.n * (1.0 - params.rho_s2z) * (1.0 + params.rho_s2z);

    if (den == 0.0) {
        if (num == 0.0)
            throw IndeterminateCapacity(
                "both correlations are +/-1; the capacity limit is undefined");
        const double inf = std::numeric_limits<double>::infinity();
        return CapacityResult{inf, inf, inf};
    }

    const double value = 0.5 * std::log1p(num / den);
    if (num == 0.0) {
        // |rho_xs1| = 1: the input is a deterministic function of S1, so zero
        // rate is all the scheme can do and the converse closes at exactly 0.
        return CapacityResult{value, 0.0, converse_bound(params)};
    }
    return CapacityResult{value, achievable_rate(params, alpha_star(params)).rate,
                          converse_bound(params)};
}

double converse_bound(const ChannelParams& params) {
    if (std::abs(params.rho_s2z) == 1.0)
        throw DegenerateChannel("converse_bound needs |rho_s2z| < 1");
    const DerivedMoments m = derived_moments(params);
    return 0.5 * std::log((params.q2 * m.d_q2 + params.q1 * m.d_pq1) /
                          (params.q1 * m.d_pq1));
}

double costa_capacity(double p, double n) {
    return 0.5 * std::log1p(p / n);
}

}  // namespace statecap
