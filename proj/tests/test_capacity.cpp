#include <cmath>

#include "doctest.h"
#include "statecap/capacity.hpp"
#include "statecap/gaussian_info.hpp"
#include "test_support.hpp"

using namespace statecap;

namespace {

const ChannelParams kWorked{4.0, 1.0, 1.0, 2.0, 0.5, 0.5};
const ChannelParams kAllUnit{1.0, 1.0, 1.0, 1.0, 0.0, 0.0};

// Independent route: both mutual informations straight off the assembled
// joint covariance.
double rate_by_log_det(const ChannelParams& params, double alpha) {
    const CovMatrix cov = joint_covariance(params, alpha);
    return mutual_info(cov, {"U"}, {"Y", "S2"}) - mutual_info(cov, {"U"}, {"S1"});
}

// Independent route for the converse: H(X+Z,S1,S2) - H(S1,S2) - H(Z|S2).
double bound_by_log_det(const ChannelParams& params) {
    const CovMatrix xz = extend_linear(base_covariance(params), "XZ",
                                       {{"X", 1.0}, {"Z", 1.0}});
    const double h_xz_s1_s2 = diff_entropy(xz.submatrix({"XZ", "S1", "S2"})).value;
    const double h_s1_s2 = diff_entropy(xz.submatrix({"S1", "S2"})).value;
    const double h_z_given_s2 = diff_entropy(xz.submatrix({"Z", "S2"})).value -
                                diff_entropy(xz.submatrix({"S2"})).value;
    return h_xz_s1_s2 - h_s1_s2 - h_z_given_s2;
}

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("achievable rate on the worked channel") {
    // numerator d_q2*(q2*(p+q1+2a1)+d_pq1) = 3*8.5 = 25.5;
    // denominator at alpha=1/3: q1*((-2/3)^2*3 + 1.5*(1/9+2/3+4)) = 8.5
    const RateResult at_opt = achievable_rate(kWorked, 1.0 / 3.0);
    CHECK(at_opt.rate == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    // at alpha=1 the denominator is 1.5*(1+2+4) = 10.5
    const RateResult at_one = achievable_rate(kWorked, 1.0);
    CHECK(at_one.rate ==
          doctest::Approx(0.5 * std::log(25.5 / 10.5)).epsilon(1e-12));
    CHECK(at_one.rate < at_opt.rate);
}

TEST_CASE("achievable rate at the Costa coefficient on the all-unit channel") {
    const RateResult r = achievable_rate(kAllUnit, 0.5);  // p/(p+n) = 1/2
    CHECK(r.rate == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(r.rate ==
          doctest::Approx(channel_capacity(kAllUnit).value).epsilon(1e-12));
}

TEST_CASE("rate components are consistent and match the log-det route") {
    test::ParamSampler sampler(301);
    for (int i = 0; i < 500; ++i) {
        const ChannelParams p = sampler.draw();
        const double alpha = sampler.uniform(-2.0, 2.0);
        const RateResult r = achievable_rate(p, alpha);
        CHECK(std::abs(r.rate - (r.i_u_ys2 - r.i_u_s1)) <= 1e-12);
        CHECK(std::abs(r.rate - rate_by_log_det(p, alpha)) <= 1e-9);
        const CovMatrix cov = joint_covariance(p, alpha);
        CHECK(std::abs(r.i_u_ys2 - mutual_info(cov, {"U"}, {"Y", "S2"})) <= 1e-9);
        CHECK(std::abs(r.i_u_s1 - mutual_info(cov, {"U"}, {"S1"})) <= 1e-9);
    }
}

TEST_CASE("achievable rate refuses degenerate channels") {
    ChannelParams p = kWorked;
    p.rho_xs1 = 1.0;
    CHECK_THROWS_AS(achievable_rate(p, 0.5), DegenerateChannel);
    CHECK_THROWS_AS(alpha_star(p), DegenerateChannel);
    p = kWorked;
    p.rho_s2z = -1.0;
    CHECK_THROWS_AS(achievable_rate(p, 0.5), DegenerateChannel);
    CHECK_THROWS_AS(converse_bound(p), DegenerateChannel);
}

TEST_CASE("alpha* reduces to p/(p+n) at zero correlations") {
    test::ParamSampler sampler(302);
    for (int i = 0; i < 200; ++i) {
        ChannelParams p = sampler.draw();
        p.rho_xs1 = 0.0;
        p.rho_s2z = 0.0;
        CHECK(alpha_star(p) == doctest::Approx(p.p / (p.p + p.n)).epsilon(1e-12));
    }
    CHECK(alpha_star(kAllUnit) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("alpha* of the worked channel is 1/3") {
    // (q2*d_q2 - a1*d_pq1) / (q2*d_q2 + q1*d_pq1) = (3-1.5)/(3+1.5)
    CHECK(alpha_star(kWorked) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("alpha* is the strict maximizer") {
    test::ParamSampler sampler(303);
    for (int i = 0; i < 500; ++i) {
        const ChannelParams p = sampler.draw();
        const double astar = alpha_star(p);
        const double best = achievable_rate(p, astar).rate;
        for (double delta : {0.01, -0.01, 0.1, -0.1})
            CHECK(achievable_rate(p, astar + delta).rate < best);
    }
}

TEST_CASE("sign-flipped denominator variant is not the maximizer") {
    // On the worked channel the variant coefficient
    // (q2*d_q2 - a1*d_pq1) / (q2*d_q2 - q1*d_pq1) evaluates to 1 and loses
    // 0.5*ln(3) - 0.5*ln(25.5/10.5) ~ 0.106 nats against alpha* = 1/3.
    const DerivedMoments m = derived_moments(kWorked);
    const double variant = (kWorked.q2 * m.d_q2 - m.a1 * m.d_pq1) /
                           (kWorked.q2 * m.d_q2 - kWorked.q1 * m.d_pq1);
    CHECK(variant == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(achievable_rate(kWorked, variant).rate <
          achievable_rate(kWorked, alpha_star(kWorked)).rate - 0.1);
}

TEST_CASE("capacity spot values") {
    ChannelParams p = kAllUnit;
    p.p = 10.0;
    CHECK(channel_capacity(p).value ==
          doctest::Approx(0.5 * std::log(11.0)).epsilon(1e-12));
    CHECK(channel_capacity(kWorked).value ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    // q1, q2 do not enter the formula
    ChannelParams q = kWorked;
    q.q1 = 17.0;
    q.q2 = 0.03;
    CHECK(channel_capacity(q).value ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("degenerate capacity limits") {
    ChannelParams p = kAllUnit;
    p.rho_xs1 = 1.0;
    CHECK(channel_capacity(p).value == 0.0);
    CHECK(channel_capacity(p).achievability == 0.0);
    CHECK(channel_capacity(p).converse == 0.0);
    p.rho_xs1 = -1.0;
    CHECK(channel_capacity(p).value == 0.0);

    p = kAllUnit;
    p.rho_s2z = 1.0;
    CHECK(channel_capacity(p).is_infinite());
    CHECK(std::isinf(channel_capacity(p).converse));
    p.rho_s2z = -1.0;
    CHECK(channel_capacity(p).is_infinite());

    p.rho_xs1 = 1.0;  // doubly degenerate
    CHECK_THROWS_AS(channel_capacity(p), IndeterminateCapacity);
}

TEST_CASE("converse bound spot values and the log-det route") {
    CHECK(converse_bound(kWorked) ==
          doctest::Approx(0.5 * std::log(4.5 / 1.5)).epsilon(1e-12));
    ChannelParams p = kAllUnit;
    p.p = 10.0;
    CHECK(converse_bound(p) ==
          doctest::Approx(0.5 * std::log1p(10.0)).epsilon(1e-12));
    // q1, q2 cancel
    ChannelParams q = kWorked;
    q.q1 = 2.0;
    q.q2 = 3.0;
    CHECK(converse_bound(q) == doctest::Approx(converse_bound(kWorked)).epsilon(1e-12));
    test::ParamSampler sampler(304);
    for (int i = 0; i < 300; ++i) {
        const ChannelParams r = sampler.draw();
        CHECK(std::abs(converse_bound(r) - bound_by_log_det(r)) <= 1e-9);
    }
}

TEST_CASE("costa capacity") {
    CHECK(costa_capacity(1.0, 1.0) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(costa_capacity(10.0, 1.0) ==
          doctest::Approx(0.5 * std::log(11.0)).epsilon(1e-14));
    test::ParamSampler sampler(305);
    for (int i = 0; i < 100; ++i) {
        ChannelParams p = sampler.draw();
        p.rho_xs1 = 0.0;
        p.rho_s2z = 0.0;
        CHECK(channel_capacity(p).value ==
              doctest::Approx(costa_capacity(p.p, p.n)).epsilon(1e-12));
    }
}

TEST_CASE("achievability and converse sandwich the capacity") {
    test::ParamSampler sampler(306);
    for (int i = 0; i < 1000; ++i) {
        const ChannelParams p = sampler.draw();
        const CapacityResult c = channel_capacity(p);
        CHECK(c.achievability <= c.converse + 1e-9);
        CHECK(std::abs(c.achievability - c.value) <= 1e-9);
        CHECK(std::abs(c.converse - c.value) <= 1e-9);
    }
}

TEST_CASE("with rho_s2z = 0 the capacity is maximized at rho_xs1 = 0") {
    ChannelParams p = kAllUnit;
    p.p = 3.0;
    std::size_t best = 1;
    double best_value = -1.0;
    for (std::size_t i = 0; i <= 200; ++i) {
        p.rho_xs1 = (static_cast<double>(i) - 100.0) / 100.0;
        const double value = channel_capacity(p).value;
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    CHECK(best == 100);  // rho_xs1 = 0
    p.rho_xs1 = 0.0;
    CHECK(best_value == doctest::Approx(costa_capacity(p.p, p.n)).epsilon(1e-12));
}

TEST_CASE("with rho_s2z = 0 the capacity is constant in q2") {
    ChannelParams p = kWorked;
    p.rho_s2z = 0.0;
    p.q2 = 0.01;
    const double ref = channel_capacity(p).value;
    for (double q2 : {0.1, 1.0, 10.0, 100.0}) {
        p.q2 = q2;
        CHECK(channel_capacity(p).value == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("capacity is monotone in the correlation magnitudes") {
    ChannelParams p = kWorked;
    double prev = channel_capacity(p).value;
    for (int i = 1; i <= 100; ++i) {  // |rho_xs1| up => capacity down
        p.rho_xs1 = 0.5 + 0.004 * i;
        const double value = channel_capacity(p).value;
        CHECK(value < prev);
        prev = value;
    }
    p = kWorked;
    prev = channel_capacity(p).value;
    for (int i = 1; i <= 100; ++i) {  // |rho_s2z| up => capacity up
        p.rho_s2z = 0.5 + 0.004 * i;
        const double value = channel_capacity(p).value;
        CHECK(value > prev);
        prev = value;
    }
}

TEST_CASE("capacity depends only on p, n and the correlations") {
    test::ParamSampler sampler(307);
    for (int i = 0; i < 200; ++i) {
        ChannelParams p = sampler.draw();
        const double ref = channel_capacity(p).value;
        p.q1 = sampler.log_uniform(0.1, 100.0);
        p.q2 = sampler.log_uniform(0.1, 100.0);
        CHECK(channel_capacity(p).value == doctest::Approx(ref).epsilon(1e-12));
    }
}

}  // TEST_SUITE
