#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bwp/error.hpp"
#include "bwp/model.hpp"
#include "bwp/numeric.hpp"

namespace {

using bwp::Mode;
using bwp::NetworkParams;
using bwp::PartitionScheme;
namespace model = bwp::model;
using Complex = std::complex<double>;

const NetworkParams kFig1{0.1, 4.0, 0.1, 1.0};
const NetworkParams kFig2{1.0, 3.0, 0.25, 1.0};

TEST(Params, ValidationRejectsOutOfDomain) {
    EXPECT_NO_THROW(kFig1.validate());
    EXPECT_THROW((NetworkParams{0.0, 4.0, 0.1, 1.0}.validate()), bwp::DomainError);
    EXPECT_THROW((NetworkParams{0.1, 2.0, 0.1, 1.0}.validate()), bwp::DomainError);
    EXPECT_THROW((NetworkParams{0.1, 4.0, -0.1, 1.0}.validate()), bwp::DomainError);
    EXPECT_THROW((NetworkParams{0.1, 4.0, 0.1, 0.0}.validate()), bwp::DomainError);
    EXPECT_THROW((NetworkParams{NAN, 4.0, 0.1, 1.0}.validate()), bwp::DomainError);
    EXPECT_THROW((PartitionScheme{Mode::AdaptiveSir, 0}.validate()), bwp::DomainError);
    EXPECT_THROW(bwp::parse_mode("adaptive"), bwp::DomainError);
    EXPECT_EQ(bwp::parse_mode("adaptive-time"), Mode::AdaptiveTime);
    EXPECT_THROW(bwp::ExtendedReal(-1.0), bwp::DomainError);
}

TEST(SirThreshold, GrowsExponentiallyOnlyForAdaptiveSir) {
    EXPECT_NEAR(model::sir_threshold(kFig1, {Mode::AdaptiveSir, 1}), std::pow(2.0, 0.1) - 1.0, 1e-16);
    EXPECT_NEAR(model::sir_threshold(kFig1, {Mode::AdaptiveSir, 5}), std::pow(2.0, 0.5) - 1.0, 1e-15);
    EXPECT_NEAR(model::sir_threshold(kFig1, {Mode::AdaptiveTime, 5}), std::pow(2.0, 0.1) - 1.0, 1e-16);
    // theta_1 = 2^a - 1 without cancellation for tiny a.
    const NetworkParams tiny{0.1, 4.0, 1e-12, 1.0};
    EXPECT_NEAR(tiny.theta_one() / (1e-12 * std::numbers::ln2), 1.0, 1e-11);
}

TEST(Moment, MatchesArbitraryPrecision) {
    EXPECT_NEAR(model::moment(kFig1, {Mode::AdaptiveSir, 2}, 2.0).real(), 0.84661741360617078211, 1e-14);
    const Complex m = model::moment(kFig2, {Mode::AdaptiveSir, 4}, Complex(1.0, 10.0));
    EXPECT_NEAR(std::abs(m - Complex(-0.00012243086282533804481, -0.00049881659023798085508)), 0.0, 1e-15);
    EXPECT_NEAR(model::moment(kFig2, {Mode::AdaptiveSir, 3}, -1.0).real() / 9.4472004247050859371, 1.0, 1e-12);
}

TEST(Moment, FirstMomentIsSuccessProbability) {
    for (int n : {1, 2, 4, 8}) {
        for (Mode mode : {Mode::AdaptiveSir, Mode::AdaptiveTime}) {
            const PartitionScheme s{mode, n};
            const double theta = model::sir_threshold(kFig1, s);
            const double want = std::exp(-kFig1.lambda * bwp::specfun::constant_C(0.5) * std::sqrt(theta) / n);
            EXPECT_NEAR(model::moment(kFig1, s, 1.0).real(), want, 1e-14);
            EXPECT_NEAR(model::success_probability(kFig1, s), want, 1e-15);
        }
    }
}

TEST(Moment, MinusFirstMomentIsLocalDelay) {
    for (int n : {2, 3, 16}) {
        const PartitionScheme s{Mode::AdaptiveSir, n};
        const double m = model::moment(kFig2, s, -1.0).real();
        EXPECT_NEAR(m / model::local_delay(kFig2, s).value(), 1.0, 1e-12);
    }
}

TEST(Moment, ImaginaryOrdersAreBoundedAndConjugateSymmetric) {
    const PartitionScheme s{Mode::AdaptiveSir, 3};
    EXPECT_EQ(model::moment(kFig1, s, 0.0), Complex(1.0));
    for (double t : {0.5, 7.0, 90.0, 1e3, 1e4}) {
        const Complex m = model::moment(kFig1, s, Complex(0.0, t));
        EXPECT_LE(std::abs(m), 1.0 + 1e-15) << t;
        EXPECT_NEAR(std::abs(m - std::conj(model::moment(kFig1, s, Complex(0.0, -t)))), 0.0, 1e-13);
    }
}

TEST(Moment, MeanLogOutageIsSlopeAtZero) {
    const PartitionScheme s{Mode::AdaptiveSir, 4};
    const double h = 1e-6;
    const double slope = (model::moment(kFig2, s, -h).real() - model::moment(kFig2, s, h).real()) / (2 * h);
    EXPECT_NEAR(slope / model::mean_log_outage(kFig2, s), 1.0, 1e-8);
}

TEST(Moment, LargeOrderApproachesAsymptote) {
    const PartitionScheme s{Mode::AdaptiveSir, 2};
    double previous = INFINITY;
    for (double t : {1e2, 1e3, 1e4}) {
        const double exact = model::moment(kFig1, s, t).real();
        const double gap = std::abs(exact / model::moment_large_t_asymptote(kFig1, s, t) - 1.0);
        EXPECT_LT(gap, previous);
        previous = gap;
    }
    EXPECT_LT(previous, 1e-2);
}

TEST(MetaExact, MatchesArbitraryPrecisionForOneBand) {
    const NetworkParams p{0.0584, 4.0, 0.1, 1.0};
    EXPECT_NEAR(model::meta_distribution_exact(p, {Mode::AdaptiveSir, 1}, 0.99), 0.53940078394632993466, 1e-9);
    const NetworkParams q{0.5, 3.0, 0.25, 1.0};
    EXPECT_NEAR(model::meta_distribution_exact(q, {Mode::AdaptiveSir, 1}, 0.8), 6.0923614522782275307e-5, 1e-9);
}

struct MdCase {
    NetworkParams p;
    int n;
    double x;
};

// Large-jump conditioning versus inverting the full distribution.
TEST(MetaExact, SplitAndFullInversionAgree) {
    const MdCase cases[] = {
        {{0.0584, 4.0, 0.1, 1.0}, 2, 0.99},  {{0.0095, 4.0, 0.1, 1.0}, 2, 0.99},
        {{1.0, 3.0, 0.002, 1.0}, 2, 0.9},    {{0.1, 3.0, 0.05, 1.0}, 4, 0.8},
        {{0.1, 4.0, 0.1, 1.0}, 8, 0.95},     {{1.0, 4.0, 0.1, 1.0}, 3, 0.5},
    };
    bwp::MetaControl full;
    full.split_large_jumps = false;
    for (const auto& c : cases) {
        const PartitionScheme s{Mode::AdaptiveSir, c.n};
        const double split = model::meta_distribution_exact(c.p, s, c.x);
        const double direct = model::meta_distribution_exact(c.p, s, c.x, full);
        EXPECT_NEAR(split, direct, 1e-9) << "lambda=" << c.p.lambda << " N=" << c.n << " x=" << c.x;
    }
}

TEST(MetaExact, IsMonotoneAndBounded) {
    const PartitionScheme s{Mode::AdaptiveSir, 2};
    double previous = 1.0;
    for (double x : {0.05, 0.2, 0.4, 0.6, 0.8, 0.9, 0.99, 0.999}) {
        const double v = model::meta_distribution_exact(kFig2, s, x);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, previous + 1e-10) << x;
        previous = v;
    }
    EXPECT_THROW(model::meta_distribution_exact(kFig2, s, 1.0), bwp::DomainError);
    EXPECT_THROW(model::meta_distribution_exact(kFig2, s, 0.0), bwp::DomainError);
}

TEST(MetaExact, IntegratesToFirstMoment) {
    // int_0^1 P(P_s > x) dx = E[P_s] = M_1.
    const NetworkParams p{0.3, 4.0, 0.1, 1.0};
    const PartitionScheme s{Mode::AdaptiveSir, 2};
    const auto& rule = bwp::numeric::gauss_legendre(32);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        // x = 1 - u^2 clusters nodes near x = 1, where the MD falls off.
        const double u = 0.5 * (rule.nodes[i] + 1.0);
        integral += 0.5 * rule.weights[i] * 2.0 * u * model::meta_distribution_exact(p, s, 1.0 - u * u);
    }
    EXPECT_NEAR(integral, model::success_probability(p, s), 2e-4);
}

TEST(MetaAsymptotic, MatchesClosedFormAndTightensAsEpsShrinks) {
    const PartitionScheme s{Mode::AdaptiveSir, 1};
    const double theta = model::sir_threshold(kFig1, s);
    const double want = std::exp(-bwp::specfun::constant_C_delta(0.5) * (theta / 0.01) * kFig1.lambda * kFig1.lambda);
    EXPECT_NEAR(model::meta_distribution_asymptotic(kFig1, s, 0.01), want, 1e-15);
    auto ratio = [&](double eps) {
        return std::log(model::meta_distribution_asymptotic(kFig1, s, eps)) /
               std::log(model::meta_distribution_exact(kFig1, s, 1.0 - eps));
    };
    EXPECT_LT(std::abs(ratio(0.003) - 1.0), std::abs(ratio(0.1) - 1.0));
}

TEST(DensityReliable, IsLambdaTimesMeta) {
    const PartitionScheme s{Mode::AdaptiveSir, 2};
    EXPECT_DOUBLE_EQ(model::density_reliable(kFig1, s, 0.01, bwp::MdMethod::Exact),
                     kFig1.lambda * model::meta_distribution_exact(kFig1, s, 0.99));
    EXPECT_DOUBLE_EQ(model::density_reliable(kFig1, s, 0.01, bwp::MdMethod::Asymptotic),
                     kFig1.lambda * model::meta_distribution_asymptotic(kFig1, s, 0.01));
}

TEST(LocalDelay, InfiniteForOneBandAndMatchesClosedForm) {
    EXPECT_TRUE(model::local_delay(kFig2, {Mode::AdaptiveSir, 1}).is_infinite());
    EXPECT_TRUE(model::local_delay(kFig2, {Mode::AdaptiveTime, 1}).is_infinite());
    EXPECT_TRUE(model::normalized_local_delay(kFig2, {Mode::AdaptiveTime, 1}).is_infinite());
    const double delta = 2.0 / 3.0;
    const double c = bwp::specfun::constant_C(delta);
    for (int n : {2, 5, 30}) {
        const double th1 = kFig2.theta_one();
        const double time = n * std::exp(c * std::pow(th1 / n, delta) * std::pow(n - 1.0, delta - 1.0));
        EXPECT_NEAR(model::local_delay(kFig2, {Mode::AdaptiveTime, n}).value() / time, 1.0, 1e-13);
        EXPECT_NEAR(model::normalized_local_delay(kFig2, {Mode::AdaptiveTime, n}).value() * 0.25 / time, 1.0,
                    1e-13);
        const double sir = model::local_delay(kFig2, {Mode::AdaptiveSir, n}).value();
        EXPECT_NEAR(model::normalized_local_delay(kFig2, {Mode::AdaptiveSir, n}).value() * 0.25 * n / sir, 1.0,
                    1e-13);
    }
}

TEST(LocalDelay, OverflowIsInfinite) {
    const NetworkParams p{1.0, 3.0, 4.0, 1.0};
    EXPECT_TRUE(model::local_delay(p, {Mode::AdaptiveSir, 400}).is_infinite());
}

}  // namespace
