#include "statecap/gaussian_info.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace statecap {

namespace {

// ln(2*pi*e), the per-dimension term of Gaussian differential entropy.
constexpr double kLogTwoPiE = 2.8378770664093453;

// det <= kSingularRel * prod(diagonal) counts as singular.
constexpr double kSingularRel = 1e-12;

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out += ",";
        out += l;
    }
    return out;
}

double checked_log_det(const CovMatrix& cov) {
    double scale = 1.0;
    for (std::size_t i = 0; i < cov.dim(); ++i) scale *= cov(i, i);
    const double det = determinant(cov);
    if (!(det > kSingularRel * scale)) {
        std::ostringstream os;
        os << "singular covariance over (" << join_labels(cov.labels())
           << "): det = " << det;
        throw SingularCovariance(os.str());
    }
    return std::log(det);
}

}  // namespace

double determinant(const CovMatrix& cov) {
    const std::size_t k = cov.dim();
    std::vector<double> a(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i * k + j] = cov(i, j);

    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
        if (a[pivot * k + col] == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j)
                std::swap(a[pivot * k + j], a[col * k + j]);
            det = -det;
        }
        det *= a[col * k + col];
        for (std::size_t r = col + 1; r < k; ++r) {
            const double factor = a[r * k + col] / a[col * k + col];
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < k; ++j)
                a[r * k + j] -= factor * a[col * k + j];
        }
    }
    return det;
}

EntropyValue diff_entropy(const CovMatrix& cov) {
    const double log_det = checked_log_det(cov);
    const double value =
        0.5 * (static_cast<double>(cov.dim()) * kLogTwoPiE + log_det);
    return EntropyValue{value, cov.labels()};
}

double mutual_info(const CovMatrix& cov, const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b) {
    if (set_a.empty() || set_b.empty())
        throw LabelError("mutual information needs two nonempty variable sets");
    std::set<std::string> seen;
    for (const auto& l : set_a)
        if (!seen.insert(l).second) throw LabelError("duplicate label: " + l);
    for (const auto& l : set_b)
        if (!seen.insert(l).second)
            throw LabelError("label in both sets (or duplicated): " + l);

    std::vector<std::string> joint = set_a;
    joint.insert(joint.end(), set_b.begin(), set_b.end());

    const double log_det_a = checked_log_det(cov.submatrix(set_a));
    const double log_det_b = checked_log_det(cov.submatrix(set_b));
    const double log_det_ab = checked_log_det(cov.submatrix(joint));
    // The (2*pi*e)^k factors cancel since |A| + |B| = |A u B|.
    return 0.5 * (log_det_a + log_det_b - log_det_ab);
}

EntropyTable closed_form_entropies(const ChannelParams& params, double alpha) {
    if (params.degenerate())
        throw DegenerateChannel(
            "closed-form entropies need |rho_xs1| < 1 and |rho_s2z| < 1");
    const DerivedMoments m = derived_moments(params);
    const double var_u = alpha * alpha * params.q1 + 2.0 * alpha * m.a1 + params.p;

    EntropyTable t;
    t.h_y_s2 = 0.5 * (2.0 * kLogTwoPiE +
                      std::log(params.q2 * (params.p + params.q1 + 2.0 * m.a1) +
                               m.d_pq1));
    t.h_u_y_s2 =
        0.5 * (3.0 * kLogTwoPiE +
               std::log(m.d_pq1 * var_u +
                        (alpha - 1.0) * (alpha - 1.0) * params.q2 * m.d_q2));
    t.h_s1 = 0.5 * (kLogTwoPiE + std::log(params.q1));
    t.h_u_s1 = 0.5 * (2.0 * kLogTwoPiE + std::log(m.d_q2));
    t.h_x_plus_z_s1_s2 =
        0.5 * (3.0 * kLogTwoPiE +
               std::log(params.q2 * m.d_q2 + params.q1 * m.d_pq1));
    t.h_s1_s2 = 0.5 * (2.0 * kLogTwoPiE + std::log(params.q1 * params.q2));
    t.h_z_s2 = 0.5 * (2.0 * kLogTwoPiE + std::log(m.d_pq1));
    return t;
}

}  // namespace statecap
