#include "statecap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "statecap/capacity.hpp"
#include "statecap/gaussian_info.hpp"

namespace statecap {

namespace {

constexpr std::size_t kMaxBatches = 20;

// Standard normal variates from mt19937_64 via the Marsaglia polar method.
// Both pieces are fully specified, so a given seed reproduces the same
// stream on every platform.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

  private:
    double uniform01() {  // [0, 1) with 53 random bits
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Sums and sums of cross-products; merging accumulators is exact reordering
// of additions, so batches can be combined in any order.
struct MomentAccumulator {
    std::size_t count = 0;
    std::vector<double> sum;    // k
    std::vector<double> cross;  // k x k, row-major

    explicit MomentAccumulator(std::size_t k) : sum(k, 0.0), cross(k * k, 0.0) {}

    void add(const double* row, std::size_t k) {
        ++count;
        for (std::size_t i = 0; i < k; ++i) {
            sum[i] += row[i];
            for (std::size_t j = i; j < k; ++j) cross[i * k + j] += row[i] * row[j];
        }
    }

    void merge(const MomentAccumulator& other) {
        count += other.count;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other.sum[i];
        for (std::size_t i = 0; i < cross.size(); ++i) cross[i] += other.cross[i];
    }

    CovMatrix covariance(const std::vector<std::string>& labels) const {
        const std::size_t k = labels.size();
        if (count < 2)
            throw SingularEmpiricalCovariance("need at least 2 samples");
        std::vector<double> m(k * k, 0.0);
        const double nn = static_cast<double>(count);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                const double c =
                    (cross[i * k + j] - sum[i] * sum[j] / nn) / (nn - 1.0);
                m[i * k + j] = c;
                m[j * k + i] = c;
            }
        for (std::size_t i = 0; i < k; ++i) m[i * k + i] = std::max(m[i * k + i], 0.0);
        return CovMatrix(labels, std::move(m));
    }
};

std::size_t batch_count(std::size_t n) {
    return std::min(kMaxBatches, std::max<std::size_t>(2, n / 10));
}

double batch_std_error(const std::vector<double>& estimates) {
    const double b = static_cast<double>(estimates.size());
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= b;
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    return std::sqrt(ss / (b - 1.0)) / std::sqrt(b);
}

}  // namespace

LowerTriangular cholesky(const CovMatrix& cov) {
    const std::size_t k = cov.dim();
    LowerTriangular lower{k, std::vector<double>(k * k, 0.0)};
    auto l = [&](std::size_t i, std::size_t j) -> double& {
        return lower.m[i * k + j];
    };
    for (std::size_t j = 0; j < k; ++j) {
        double d = cov(j, j);
        for (std::size_t t = 0; t < j; ++t) d -= l(j, t) * l(j, t);
        if (!(d > 1e-12 * cov(j, j))) {
            std::ostringstream os;
            os << "matrix is not positive definite (pivot " << d << " at "
               << cov.labels()[j] << ")";
            throw NotPositiveDefinite(os.str());
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = cov(i, j);
            for (std::size_t t = 0; t < j; ++t) s -= l(i, t) * l(j, t);
            l(i, j) = s / l(j, j);
        }
    }
    return lower;
}

std::size_t SampleBlock::column(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw LabelError("unknown variable label: " + label);
    return static_cast<std::size_t>(it - labels.begin());
}

SampleBlock sample(const ChannelParams& params, double alpha, std::size_t n,
                   std::uint64_t seed) {
    validate(params);
    if (n < 2) throw std::invalid_argument("sample needs n >= 2");
    const LowerTriangular l = cholesky(base_covariance(params));

    SampleBlock block;
    block.labels = {"X", "S1", "S2", "Z", "U", "Y"};
    block.n = n;
    block.seed = seed;
    block.data.resize(n * 6);

    NormalSampler rng(seed);
    double g[4];
    for (std::size_t row = 0; row < n; ++row) {
        for (double& gi : g) gi = rng.next();
        double base[4];
        for (std::size_t i = 0; i < 4; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j) acc += l(i, j) * g[j];
            base[i] = acc;
        }
        double* out = &block.data[row * 6];
        out[0] = base[0];                              // X
        out[1] = base[1];                              // S1
        out[2] = base[2];                              // S2
        out[3] = base[3];                              // Z
        out[4] = alpha * base[1] + base[0];            // U
        out[5] = base[0] + base[1] + base[2] + base[3];// Y
    }
    return block;
}

CovMatrix empirical_covariance(const SampleBlock& block,
                               const std::vector<std::string>& labels,
                               std::size_t row_begin, std::size_t row_end) {
    row_end = std::min(row_end, block.n);
    if (row_begin >= row_end)
        throw std::invalid_argument("empty row range");
    std::vector<std::size_t> cols;
    cols.reserve(labels.size());
    for (const auto& label : labels) cols.push_back(block.column(label));

    MomentAccumulator acc(labels.size());
    std::vector<double> row(labels.size());
    for (std::size_t r = row_begin; r < row_end; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) row[c] = block.at(r, cols[c]);
        acc.add(row.data(), row.size());
    }
    return acc.covariance(labels);
}

McEstimate mc_mutual_info(const SampleBlock& block,
                          const std::vector<std::string>& set_a,
                          const std::vector<std::string>& set_b) {
    std::vector<std::string> joint = set_a;
    joint.insert(joint.end(), set_b.begin(), set_b.end());
    const std::size_t k = joint.size();
    if (block.n < 10 * k * k)
        throw std::invalid_argument("mc_mutual_info needs at least 10*k^2 samples");

    auto plug_in = [&](std::size_t lo, std::size_t hi) {
        try {
            return mutual_info(empirical_covariance(block, joint, lo, hi), set_a,
                               set_b);
        } catch (const SingularCovariance& e) {
            throw SingularEmpiricalCovariance(e.what());
        }
    };

    const std::size_t batches = batch_count(block.n);
    std::vector<double> replicates;
    replicates.reserve(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = block.n * b / batches;
        const std::size_t hi = block.n * (b + 1) / batches;
        replicates.push_back(plug_in(lo, hi));
    }
    return McEstimate{plug_in(0, block.n), block.n, batch_std_error(replicates)};
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerificationCheck& c) { return c.pass; });
}

VerificationReport mc_verify(const ChannelParams& params, double alpha,
                             std::size_t n, std::uint64_t seed) {
    validate(params);
    const EntropyTable table = closed_form_entropies(params, alpha);
    const double astar = alpha_star(params);
    const RateResult rate = achievable_rate(params, alpha);
    const CapacityResult cap = channel_capacity(params);
    const double bound = converse_bound(params);

    const SampleBlock block = sample(params, alpha, n, seed);

    // Extended rows: the six sampled columns plus the derived XZ = X+Z and
    // US = alpha* * S1 + X, both exact per-row linear images.
    const std::vector<std::string> ext = {"X", "S1", "S2", "Z",
                                          "U", "Y",  "XZ", "US"};
    const std::size_t batches = batch_count(n);
    std::vector<MomentAccumulator> acc(batches, MomentAccumulator(ext.size()));
    double row[8];
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 6; ++c) row[c] = block.at(r, c);
        row[6] = row[0] + row[3];
        row[7] = astar * row[1] + row[0];
        acc[r * batches / n].add(row, 8);
    }
    MomentAccumulator full(ext.size());
    for (const auto& a : acc) full.merge(a);

    using Evaluator = std::function<double(const CovMatrix&)>;
    auto entropy_of = [](std::vector<std::string> labels) {
        return Evaluator([labels](const CovMatrix& cov) {
            return diff_entropy(cov.submatrix(labels)).value;
        });
    };
    const std::vector<std::pair<std::string, Evaluator>> quantities = {
        {"H(Y,S2)", entropy_of({"Y", "S2"})},
        {"H(U,Y,S2)", entropy_of({"U", "Y", "S2"})},
        {"H(S1)", entropy_of({"S1"})},
        {"H(U,S1)", entropy_of({"U", "S1"})},
        {"H(X+Z,S1,S2)", entropy_of({"XZ", "S1", "S2"})},
        {"H(S1,S2)", entropy_of({"S1", "S2"})},
        {"H(Z,S2)", entropy_of({"Z", "S2"})},
        {"achievable_rate",
         Evaluator([](const CovMatrix& cov) {
             return mutual_info(cov, {"U"}, {"Y", "S2"}) -
                    mutual_info(cov, {"U"}, {"S1"});
         })},
        {"capacity",
         Evaluator([](const CovMatrix& cov) {
             return mutual_info(cov, {"US"}, {"Y", "S2"}) -
                    mutual_info(cov, {"US"}, {"S1"});
         })},
        {"upper_bound",
         Evaluator([](const CovMatrix& cov) {
             // H(X+Z,S1,S2) - H(S1,S2) - H(Z|S2)
             return diff_entropy(cov.submatrix({"XZ", "S1", "S2"})).value -
                    diff_entropy(cov.submatrix({"S1", "S2"})).value -
                    (diff_entropy(cov.submatrix({"Z", "S2"})).value -
                     diff_entropy(cov.submatrix({"S2"})).value);
         })},
    };
    const double expected[] = {
        table.h_y_s2,  table.h_u_y_s2, table.h_s1,  table.h_u_s1,
        table.h_x_plus_z_s1_s2, table.h_s1_s2,  table.h_z_s2,
        rate.rate,     cap.value,      bound};

    CovMatrix full_cov = full.covariance(ext);
    std::vector<CovMatrix> batch_covs;
    batch_covs.reserve(batches);
    for (const auto& a : acc) batch_covs.push_back(a.covariance(ext));

    VerificationReport report;
    report.params = params;
    report.alpha = alpha;
    report.n = n;
    report.seed = seed;
    for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
        const auto& [name, eval] = quantities[qi];
        try {
            McEstimate est;
            est.n = n;
            est.value = eval(full_cov);
            std::vector<double> replicates;
            replicates.reserve(batches);
            for (const auto& bc : batch_covs) replicates.push_back(eval(bc));
            est.std_error = batch_std_error(replicates);
            const bool pass =
                std::abs(expected[qi] - est.value) <= 4.0 * est.std_error;
            report.checks.push_back(
                VerificationCheck{name, expected[qi], est, pass});
        } catch (const SingularCovariance& e) {
            throw SingularEmpiricalCovariance(e.what());
        }
    }
    return report;
}

}  // namespace statecap
