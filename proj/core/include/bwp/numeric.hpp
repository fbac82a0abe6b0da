#pragma once

// Small numerical building blocks shared by the model, optimizer and
// simulator: compensated summation, Gauss-Legendre rules, bracketing root
// and extremum searches, and a deterministic parallel loop.

#include <cstddef>
#include <functional>
#include <vector>

namespace bwp::numeric {

/// Neumaier summation; the result depends only on the order of add() calls.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point rule, computed once per n and cached.
const GaussLegendreRule& gauss_legendre(int n);

struct GaussLaguerreRule {
    std::vector<double> nodes;    // on (0, inf)
    std::vector<double> weights;  // for the weight x^alpha e^-x
};

/// n-point generalised Gauss-Laguerre rule, alpha > -1; cached per (n, alpha).
const GaussLaguerreRule& gauss_laguerre(int n, double alpha);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
/// Stops when the bracket is narrower than x_tol * max(1, |x|).
double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol = 1e-14,
              int max_iter = 400);

/// Maximiser of a unimodal f on [lo, hi] by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double x_tol = 1e-10,
                          int max_iter = 200);

/// Worker count: BWP_THREADS if set and positive, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks over
/// worker_count() threads; body must only write to per-index storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bwp::numeric
