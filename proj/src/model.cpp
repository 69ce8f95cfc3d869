#include "statecap/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace statecap {

bool ChannelParams::degenerate() const {
    return std::abs(rho_xs1) == 1.0 || std::abs(rho_s2z) == 1.0;
}

ChannelParams validate(const ChannelParams& raw) {
    const std::pair<const char*, double> variances[] = {
        {"p", raw.p}, {"q1", raw.q1}, {"q2", raw.q2}, {"n", raw.n}};
    for (const auto& [name, value] : variances) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            std::ostringstream os;
            os << name << " must be strictly positive, got " << value;
            throw NonPositiveVariance(os.str());
        }
    }
    const std::pair<const char*, double> correlations[] = {
        {"rho_xs1", raw.rho_xs1}, {"rho_s2z", raw.rho_s2z}};
    for (const auto& [name, value] : correlations) {
        if (!(std::abs(value) <= 1.0)) {
            std::ostringstream os;
            os << name << " must lie in [-1, 1], got " << value;
            throw CorrelationOutOfRange(os.str());
        }
    }
    return raw;
}

DerivedMoments derived_moments(const ChannelParams& params) {
    DerivedMoments m;
    m.a1 = std::sqrt(params.p * params.q1) * params.rho_xs1;
    m.l2 = std::sqrt(params.q2 * params.n) * params.rho_s2z;
    // (1-rho)*(1+rho) keeps the d's exactly zero at |rho| = 1 and never
    // negative, unlike the cancellation-prone p*q1 - a1^2 form.
    m.d_q2 = params.p * params.q1 * (1.0 - params.rho_xs1) * (1.0 + params.rho_xs1);
    m.d_pq1 = params.q2 * params.n * (1.0 - params.rho_s2z) * (1.0 + params.rho_s2z);
    return m;
}

CovMatrix::CovMatrix(std::vector<std::string> labels, std::vector<double> rowmajor)
    : labels_(std::move(labels)), m_(std::move(rowmajor)) {
    const std::size_t k = labels_.size();
    if (k == 0) throw LabelError("covariance matrix needs at least one label");
    if (m_.size() != k * k)
        throw LabelError("entry count does not match label count");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != k) throw LabelError("duplicate variable label");
    for (std::size_t i = 0; i < k; ++i) {
        if (m_[i * k + i] < 0.0)
            throw LabelError("negative variance on the diagonal: " + labels_[i]);
        for (std::size_t j = i + 1; j < k; ++j) m_[j * k + i] = m_[i * k + j];
    }
}

std::size_t CovMatrix::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw LabelError("unknown variable label: " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

bool CovMatrix::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double CovMatrix::at(const std::string& a, const std::string& b) const {
    return (*this)(index_of(a), index_of(b));
}

CovMatrix CovMatrix::submatrix(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> idx;
    idx.reserve(subset.size());
    for (const auto& label : subset) idx.push_back(index_of(label));
    std::vector<double> out(subset.size() * subset.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            out[i * idx.size() + j] = (*this)(idx[i], idx[j]);
    return CovMatrix(subset, std::move(out));
}

double CovMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
    return t;
}

double CovMatrix::min_eigenvalue() const {
    const std::size_t k = dim();
    std::vector<double> a = m_;
    auto e = [&](std::size_t i, std::size_t j) -> double& { return a[i * k + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            diag += e(i, i) * e(i, i);
            for (std::size_t j = i + 1; j < k; ++j) off += e(i, j) * e(i, j);
        }
        if (off <= 1e-30 * (diag + 1e-300)) break;

        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                if (e(p, q) == 0.0) continue;
                const double theta = (e(q, q) - e(p, p)) / (2.0 * e(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < k; ++i) {
                    const double aip = e(i, p), aiq = e(i, q);
                    e(i, p) = c * aip - s * aiq;
                    e(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < k; ++i) {
                    const double api = e(p, i), aqi = e(q, i);
                    e(p, i) = c * api - s * aqi;
                    e(q, i) = s * api + c * aqi;
                }
            }
        }
    }
    double lo = e(0, 0);
    for (std::size_t i = 1; i < k; ++i) lo = std::min(lo, e(i, i));
    return lo;
}

bool CovMatrix::is_psd() const {
    return min_eigenvalue() >= -1e-9 * trace();
}

CovMatrix extend_linear(const CovMatrix& base, const std::string& new_label,
                        const std::vector<std::pair<std::string, double>>& combo) {
    if (combo.empty()) throw LabelError("linear combination needs at least one term");
    if (base.has_label(new_label))
        throw LabelError("label already present: " + new_label);
    std::vector<std::size_t> idx;
    std::vector<double> coeff;
    for (const auto& [label, c] : combo) {
        idx.push_back(base.index_of(label));
        coeff.push_back(c);
    }

    const std::size_t k = base.dim();
    std::vector<std::string> labels = base.labels();
    labels.push_back(new_label);
    std::vector<double> out((k + 1) * (k + 1), 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out[i * (k + 1) + j] = base(i, j);
    for (std::size_t j = 0; j < k; ++j) {
        double cov = 0.0;
        for (std::size_t t = 0; t < idx.size(); ++t) cov += coeff[t] * base(idx[t], j);
        out[k * (k + 1) + j] = cov;
        out[j * (k + 1) + k] = cov;
    }
    double var = 0.0;
    for (std::size_t t = 0; t < idx.size(); ++t)
        for (std::size_t u = 0; u < idx.size(); ++u)
            var += coeff[t] * coeff[u] * base(idx[t], idx[u]);
    out[k * (k + 1) + k] = var;
    return CovMatrix(std::move(labels), std::move(out));
}

CovMatrix base_covariance(const ChannelParams& params) {
    const DerivedMoments m = derived_moments(params);
    return CovMatrix({"X", "S1", "S2", "Z"},
                     {params.p, m.a1, 0.0, 0.0,      //
                      m.a1, params.q1, 0.0, 0.0,     //
                      0.0, 0.0, params.q2, m.l2,     //
                      0.0, 0.0, m.l2, params.n});
}

CovMatrix joint_covariance(const ChannelParams& params, double alpha) {
    CovMatrix with_u = extend_linear(base_covariance(params), "U",
                                     {{"S1", alpha}, {"X", 1.0}});
    return extend_linear(with_u, "Y",
                         {{"X", 1.0}, {"S1", 1.0}, {"S2", 1.0}, {"Z", 1.0}});
}

JointModel make_joint_model(const ChannelParams& params, double alpha) {
    return JointModel{validate(params), alpha, base_covariance(params)};
}

bool check_structure(const JointModel& model) {
    const CovMatrix& b = model.base;
    const double q1 = b.at("S1", "S1");
    if (!(q1 > 0.0)) return false;

    const double cov_s1_x = b.at("S1", "X");
    const double cov_s2_s1 = b.at("S2", "S1");
    const double cov_s2_x = b.at("S2", "X");
    const double var_s2 = b.at("S2", "S2");
    const double var_x = b.at("X", "X");

    const double cov_s2_u = model.alpha * cov_s2_s1 + cov_s2_x;
    const double cov_s1_u = model.alpha * q1 + cov_s1_x;
    const double var_u =
        model.alpha * model.alpha * q1 + 2.0 * model.alpha * cov_s1_x + var_x;

    const double pc_u = cov_s2_u - cov_s2_s1 * cov_s1_u / q1;
    const double pc_x = cov_s2_x - cov_s2_s1 * cov_s1_x / q1;

    const double tol_u = 1e-12 * std::max(1.0, std::sqrt(var_s2 * std::abs(var_u)));
    const double tol_x = 1e-12 * std::max(1.0, std::sqrt(var_s2 * var_x));
    return std::abs(pc_u) <= tol_u && std::abs(pc_x) <= tol_x;
}

}  // namespace statecap
