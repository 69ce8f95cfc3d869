#ifndef STATECAP_OPTIMIZE_HPP
#define STATECAP_OPTIMIZE_HPP

#include <functional>
#include <vector>

#include "statecap/model.hpp"

namespace statecap {

struct Bracket {
    double lo;
    double hi;
};

struct ScalarMaximum {
    double argmax;
    double max;
};

// Golden-section search for the maximum of a unimodal function on a bracket.
// Derivative-free, deterministic, capped at 200 interval shrinks (the
// interval contracts by ~0.618 per step, so the cap is never the binding
// limit for any realistic tol).  On return |argmax - true maximizer| <= tol.
// Throws InvalidBracket (lo >= hi or tol <= 0) and NonFiniteValue (f returns
// NaN or +/-inf inside the bracket).
ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              Bracket bracket, double tol);

// Bracket guaranteed to contain alpha* for this channel: |alpha*| never
// exceeds max(1, |a1|/q1), padded by one unit.  A fixed bracket does not
// work here; |a1|/q1 grows like sqrt(p/q1) and can pass any constant.
Bracket alpha_search_bracket(const ChannelParams& params);

// One sample of a capacity curve.
struct SweepPoint {
    double x;  // swept parameter value
    double y;  // capacity in nats; +inf on a |rho_s2z| = 1 grid point
};

enum class SweepParameter { rho_s2z, rho_xs1, snr };

// Capacity along a parameter grid.  `snr` sweeps vary p = x * n with n
// fixed.  Grid values that fail validation raise the usual validation
// errors annotated with the offending value; degenerate grid points are
// emitted as +inf (or exact 0) rather than aborting the sweep.
std::vector<SweepPoint> sweep_capacity(const ChannelParams& base,
                                       SweepParameter parameter,
                                       const std::vector<double>& grid);

}  // namespace statecap

#endif
