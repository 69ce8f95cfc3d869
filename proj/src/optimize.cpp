#include "statecap/optimize.hpp"

#include <cmath>
#include <sstream>

#include "statecap/capacity.hpp"

namespace statecap {

ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              Bracket bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw InvalidBracket("bracket needs lo < hi");
    if (!(tol > 0.0)) throw InvalidBracket("tol must be positive");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "objective is not finite at x = " << x;
            throw NonFiniteValue(os.str());
        }
        return y;
    };

    const double stop = tol * 0.25;
    double a = bracket.lo, b = bracket.hi;
    double u = b - inv_phi * (b - a);
    double v = a + inv_phi * (b - a);
    double fu = eval(u), fv = eval(v);
    for (int it = 0; it < 200 && (b - a) > stop; ++it) {
        if (fu >= fv) {
            b = v;
            v = u;
            fv = fu;
            u = b - inv_phi * (b - a);
            fu = eval(u);
        } else {
            a = u;
            u = v;
            fu = fv;
            v = a + inv_phi * (b - a);
            fv = eval(v);
        }
    }

    // Near a smooth maximum the values inside the final interval differ only
    // by rounding noise, which limits pure interval shrinking to an accuracy
    // of about sqrt(eps).  One parabola through points h apart, with h large
    // enough to see real curvature, localizes the vertex far better.
    double x0 = fu >= fv ? u : v;
    double fx0 = fu >= fv ? fu : fv;
    double h = std::max(b - a, 1e-5 * (1.0 + std::abs(x0)));
    h = std::min(h, 0.999 * std::min(x0 - bracket.lo, bracket.hi - x0));
    if (h > 0.0) {
        const double f_lo = eval(x0 - h), f_hi = eval(x0 + h);
        const double denom = f_lo - 2.0 * fx0 + f_hi;
        if (denom < 0.0) {
            double vertex = x0 + 0.5 * h * (f_lo - f_hi) / denom;
            vertex = std::min(std::max(vertex, x0 - h), x0 + h);
            const double f_vertex = eval(vertex);
            if (f_vertex >= fx0 - std::abs(fx0) * 1e-12) {
                x0 = vertex;
                fx0 = f_vertex;
            }
        }
    }
    return ScalarMaximum{x0, fx0};
}

Bracket alpha_search_bracket(const ChannelParams& params) {
    const DerivedMoments m = derived_moments(validate(params));
    const double bound = std::max(1.0, std::abs(m.a1) / params.q1) + 1.0;
    return Bracket{-bound, bound};
}

std::vector<SweepPoint> sweep_capacity(const ChannelParams& base,
                                       SweepParameter parameter,
                                       const std::vector<double>& grid) {
    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (double x : grid) {
        ChannelParams p = base;
        switch (parameter) {
            case SweepParameter::rho_s2z: p.rho_s2z = x; break;
            case SweepParameter::rho_xs1: p.rho_xs1 = x; break;
            case SweepParameter::snr: p.p = x * base.n; break;
        }
        try {
            validate(p);
        } catch (const NonPositiveVariance& e) {
            std::ostringstream os;
            os << e.what() << " (at grid value " << x << ")";
            throw NonPositiveVariance(os.str());
        } catch (const CorrelationOutOfRange& e) {
            std::ostringstream os;
            os << e.what() << " (at grid value " << x << ")";
            throw CorrelationOutOfRange(os.str());
        }
        out.push_back(SweepPoint{x, channel_capacity(p).value});
    }
    return out;
}

}  // namespace statecap
