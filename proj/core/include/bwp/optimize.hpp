#pragma once

// Optimisation over the intensity lambda and the sub-band count N: the
// interior optimum lambda_0(N) of the ultrareliable density, the maximum
// density of reliable transmissions (closed form and numerical), the
// delay-optimal N for both approaches and a delay-capped density search.

#include <optional>
#include <utility>

#include "bwp/model.hpp"

namespace bwp {

enum class OptMethod { Asymptotic, ExactNumeric };

std::string_view to_string(OptMethod method);

/// Unset optionals mean DIVERGES (the supremum is approached as N, lambda -> inf).
struct DensityOptimum {
    std::optional<int> n_star;
    std::optional<double> lambda_star;
    std::optional<double> s_max;
    OptMethod method = OptMethod::Asymptotic;

    bool diverges() const { return !n_star.has_value(); }
};

struct DelayOptimum {
    int n_star = 2;
    double n_zero = 2.0;  // continuous minimiser
    double d_min = 0.0;
    std::optional<std::pair<int, int>> bracket;  // adaptive-time search interval
};

/// Search grid for the numerical density optimum. With fixed_lambda the
/// template lambda is used for every N; otherwise each N gets `points`
/// log-spaced intensities in [lambda_0(N) / span, lambda_0(N) * span].
struct DensityGrid {
    int points = 64;
    double span = 10.0;
    int n_max = 16;
    bool fixed_lambda = false;
    bool refine = true;  // golden-section pass in lambda at the best N

    void validate() const;
};

struct ConstrainedOptimum {
    DensityOptimum optimum;
    ExtendedReal delay;  // local delay at the optimum
};

namespace optimize {

/// lambda_0(N) = (theta / N)^-delta ((1 - delta) / B)^(1 - delta), B = C_delta / eps^(delta/(1-delta)).
double optimal_lambda_given_n(const NetworkParams& p, const PartitionScheme& s, double eps);

/// Closed-form supremum of the ultrareliable density; the template lambda is ignored.
DensityOptimum max_density_asymptotic(const NetworkParams& p, double eps, Mode mode);

/// Grid argmax of lambda * P(P_s > 1 - eps) with the exact MD. Grid points
/// are evaluated concurrently; ties resolve to the smallest (N, lambda).
DensityOptimum max_density_exact(const NetworkParams& p, double eps, Mode mode, const DensityGrid& grid = {},
                                 const MetaControl& ctl = {});

/// Numerator of g(N) in the delay derivative for the adaptive-SIR approach:
/// (a delta N (N-1) ln 2 - N + delta) 2^(aN) + N - delta.
double delay_stationarity(double a, double delta, double n);

/// g(N) itself; strictly increasing for N > 1.
double delay_slope_factor(double a, double delta, double n);

/// Left side minus one of the adaptive-time fixed point with coefficient
/// L = lambda C theta^delta: (L / N) (N / (N-1))^(1-delta) (N - delta) / (N - 1) - 1.
double time_fixed_point_residual(double l, double delta, double n);

/// Sub-band count that minimises the local delay. Throws ConvergenceError
/// if the stationarity condition is not bracketed below N = 1e6.
DelayOptimum optimal_n_delay(const NetworkParams& p, Mode mode);

/// Exact-MD density argmax over grid points whose local delay is <= d_max.
/// Throws InfeasibleError if no grid point qualifies.
ConstrainedOptimum delay_constrained_max_density(const NetworkParams& p, double eps, double d_max, Mode mode,
                                                 const DensityGrid& grid = {}, const MetaControl& ctl = {});

}  // namespace optimize
}  // namespace bwp
