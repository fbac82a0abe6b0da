#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bwp/numeric.hpp"
#include "bwp/quadrature.hpp"
#include "bwp/specfun.hpp"

namespace {

namespace nm = bwp::numeric;

TEST(CompensatedSum, RecoversCancelledTerms) {
    nm::CompensatedSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    EXPECT_EQ(s.value(), 2.0);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n : {4, 16, 32}) {
        const auto& rule = nm::gauss_legendre(n);
        ASSERT_EQ(rule.nodes.size(), std::size_t(n));
        // Degree 2n - 1 is integrated exactly: int_-1^1 x^k dx.
        for (int k = 0; k < 2 * n; k += 2) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            EXPECT_NEAR(sum, 2.0 / (k + 1), 1e-14) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLaguerre, ReproducesGammaMoments) {
    // int_0^inf x^(alpha + k) e^-x dx = Gamma(alpha + k + 1).
    for (double alpha : {-0.5, -2.0 / 3.0, 0.0, 2.0 / 3.0}) {
        const auto& rule = nm::gauss_laguerre(40, alpha);
        for (int k = 0; k <= 20; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double want = std::exp(bwp::specfun::log_gamma(alpha + k + 1.0));
            EXPECT_NEAR(sum / want, 1.0, 1e-12) << "alpha=" << alpha << " k=" << k;
        }
    }
}

TEST(GaussLaguerre, CachedRuleIsStable) {
    const auto& a = nm::gauss_laguerre(40, -0.5);
    const auto& b = nm::gauss_laguerre(40, -0.5);
    EXPECT_EQ(&a, &b);
}

TEST(Bisect, FindsRootToTolerance) {
    const double r = nm::bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    EXPECT_NEAR(r, std::numbers::sqrt2, 1e-14);
    EXPECT_THROW(nm::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::exception);
}

TEST(GoldenSection, FindsInteriorMaximum) {
    const double x = nm::golden_section_max([](double v) { return -(v - 0.3) * (v - 0.3); }, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(x, 0.3, 1e-9);
}

TEST(GaussKronrod, IntegratesSmoothAndComplexIntegrands) {
    const auto r = bwp::quad::integrate<double>([](double x) { return std::exp(-x); }, 0.0, 5.0, 1e-14, 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, -std::expm1(-5.0), 1e-14);
    using C = std::complex<double>;
    const auto c = bwp::quad::integrate<C>([](double x) { return std::exp(C(0.0, 40.0 * x)); }, 0.0, 1.0, 1e-13,
                                           1e-13);
    EXPECT_TRUE(c.converged);
    EXPECT_NEAR(std::abs(c.value - (std::exp(C(0.0, 40.0)) - 1.0) / C(0.0, 40.0)), 0.0, 1e-13);
}

TEST(GaussKronrod, ReportsBudgetExhaustion) {
    const auto r = bwp::quad::integrate<double>([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, 1e-15,
                                                1e-15, 8);
    EXPECT_FALSE(r.converged);
}

TEST(ParallelFor, VisitsEveryIndexOnceForAnyWorkerCount) {
    for (const char* threads : {"1", "3", "8"}) {
        ::setenv("BWP_THREADS", threads, 1);
        EXPECT_EQ(nm::worker_count(), std::atoi(threads));
        std::vector<std::atomic<int>> hits(1000);
        nm::parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    ::unsetenv("BWP_THREADS");
}

TEST(ParallelFor, PropagatesExceptions) {
    ::setenv("BWP_THREADS", "4", 1);
    EXPECT_THROW(nm::parallel_for(100,
                                  [](std::size_t i) {
                                      if (i == 57) throw std::runtime_error("boom");
                                  }),
                 std::runtime_error);
    ::unsetenv("BWP_THREADS");
}

}  // namespace
