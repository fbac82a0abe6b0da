#include "bwp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bwp/error.hpp"
#include "bwp/numeric.hpp"
#include "bwp/specfun.hpp"

namespace bwp {

std::string_view to_string(OptMethod method) {
    return method == OptMethod::Asymptotic ? "asymptotic" : "exact-numeric";
}

void DensityGrid::validate() const {
    if (n_max < 1) throw DomainError("grid: n_max must be >= 1");
    if (!fixed_lambda) {
        if (points < 2) throw DomainError("grid: at least two lambda points are required");
        if (!(span > 1.0 && std::isfinite(span))) throw DomainError("grid: span must be > 1");
    }
}

namespace optimize {

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
}

NetworkParams with_lambda(NetworkParams p, double lambda) {
    p.lambda = lambda;
    return p;
}

struct GridPoint {
    int n = 1;
    double lambda = 0.0;
    double value = 0.0;
};

// Largest lambda with local delay <= d_max at this N (+inf without a cap, 0 if none).
double lambda_cap(const NetworkParams& p, const PartitionScheme& s, double d_max) {
    if (std::isinf(d_max)) return INFINITY;
    if (s.n_subbands == 1) return 0.0;
    const double per_lambda = std::log(model::local_delay(with_lambda(p, 1.0), s).value()) -
                              (s.mode == Mode::AdaptiveTime ? std::log(double(s.n_subbands)) : 0.0);
    const double base = s.mode == Mode::AdaptiveTime ? std::log(d_max / s.n_subbands) : std::log(d_max);
    if (!(base > 0.0)) return 0.0;
    return base / per_lambda;
}

ConstrainedOptimum search(const NetworkParams& p, double eps, double d_max, Mode mode, const DensityGrid& grid,
                          const MetaControl& ctl) {
    p.validate();
    check_eps(eps);
    grid.validate();

    std::vector<GridPoint> points;
    for (int n = 1; n <= grid.n_max; ++n) {
        const PartitionScheme s{mode, n};
        if (grid.fixed_lambda) {
            points.push_back({n, p.lambda, 0.0});
            continue;
        }
        const double center = optimal_lambda_given_n(p, s, eps);
        for (int i = 0; i < grid.points; ++i) {
            const double expo = 2.0 * i / (grid.points - 1) - 1.0;
            points.push_back({n, center * std::pow(grid.span, expo), 0.0});
        }
    }

    std::vector<char> feasible(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto d = model::local_delay(with_lambda(p, points[i].lambda), {mode, points[i].n});
        feasible[i] = d.is_finite() ? d.value() <= d_max : std::isinf(d_max);
    }
    numeric::parallel_for(points.size(), [&](std::size_t i) {
        if (!feasible[i]) return;
        auto& pt = points[i];
        pt.value = model::density_reliable(with_lambda(p, pt.lambda), {mode, pt.n}, eps, MdMethod::Exact, ctl);
    });

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (feasible[i] && (!best || points[i].value > points[*best].value)) best = i;
    if (!best) throw InfeasibleError("no grid point meets the local-delay cap");

    GridPoint winner = points[*best];
    if (grid.refine && !grid.fixed_lambda) {
        const PartitionScheme s{mode, winner.n};
        const std::size_t first = *best - *best % grid.points;
        const std::size_t k = *best - first;
        double lo = points[first + (k > 0 ? k - 1 : k)].lambda;
        double hi = points[first + std::min<std::size_t>(k + 1, grid.points - 1)].lambda;
        hi = std::min(hi, lambda_cap(p, s, d_max));
        if (hi > lo) {
            auto f = [&](double lambda) {
                return model::density_reliable(with_lambda(p, lambda), s, eps, MdMethod::Exact, ctl);
            };
            const double lambda = numeric::golden_section_max(f, lo, hi, 1e-7 * hi);
            const double value = f(lambda);
            if (value > winner.value) winner = {winner.n, lambda, value};
        }
    }

    ConstrainedOptimum out;
    out.optimum.n_star = winner.n;
    out.optimum.lambda_star = winner.lambda;
    out.optimum.s_max = winner.value;
    out.optimum.method = OptMethod::ExactNumeric;
    out.delay = model::local_delay(with_lambda(p, winner.lambda), {mode, winner.n});
    return out;
}

}  // namespace

double optimal_lambda_given_n(const NetworkParams& p, const PartitionScheme& s, double eps) {
    check_eps(eps);
    const double delta = p.delta();
    const double theta = model::sir_threshold(p, s);
    const double b = specfun::constant_C_delta(delta) / std::pow(eps, delta / (1.0 - delta));
    return std::pow(theta / s.n_subbands, -delta) * std::pow((1.0 - delta) / b, 1.0 - delta);
}

DensityOptimum max_density_asymptotic(const NetworkParams& p, double eps, Mode mode) {
    p.validate();
    check_eps(eps);
    DensityOptimum out;
    out.method = OptMethod::Asymptotic;
    if (mode == Mode::AdaptiveTime) return out;
    const double delta = p.delta();
    out.n_star = 1;
    out.lambda_star = optimal_lambda_given_n(p, {mode, 1}, eps);
    const double denom = std::numbers::pi * std::exp(1.0 - delta) * std::pow(delta, delta) *
                         std::exp(specfun::log_gamma(1.0 - delta));
    out.s_max = std::pow(eps / p.theta_one(), delta) / denom;
    return out;
}

DensityOptimum max_density_exact(const NetworkParams& p, double eps, Mode mode, const DensityGrid& grid,
                                 const MetaControl& ctl) {
    return search(p, eps, INFINITY, mode, grid, ctl).optimum;
}

double delay_stationarity(double a, double delta, double n) {
    const double grow = std::exp2(a * n);
    return (a * delta * n * (n - 1.0) * std::numbers::ln2 - n + delta) * grow + n - delta;
}

double delay_slope_factor(double a, double delta, double n) {
    if (!(n > 1.0)) throw DomainError("delay_slope_factor: N must be > 1");
    return delay_stationarity(a, delta, n) / (n * (n - 1.0) * std::expm1(a * n * std::numbers::ln2));
}

double time_fixed_point_residual(double l, double delta, double n) {
    if (!(n > 1.0)) throw DomainError("time_fixed_point_residual: N must be > 1");
    return l / n * std::pow(n / (n - 1.0), 1.0 - delta) * (n - delta) / (n - 1.0) - 1.0;
}

DelayOptimum optimal_n_delay(const NetworkParams& p, Mode mode) {
    p.validate();
    const double delta = p.delta();
    constexpr double kMaxN = 1e6;

    // Root of a function that is positive for large N, negative just above 1.
    auto root = [&](auto&& f, double lo) {
        double hi = 2.0;
        while (f(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > kMaxN) throw ConvergenceError("optimal_n_delay: stationarity not bracketed below N = 1e6");
        }
        return numeric::bisect(f, lo, hi);
    };
    auto delay_at = [&](int n) { return model::local_delay(p, {mode, n}); };

    DelayOptimum out;
    if (mode == Mode::AdaptiveSir) {
        const double a = p.a();
        out.n_zero = root([&](double n) { return delay_stationarity(a, delta, n); }, 1.0 + 1e-6);
        out.n_star = out.n_zero <= 2.0 ? 2 : int(std::lround(out.n_zero));
    } else {
        const double l = p.lambda * specfun::constant_C(delta) * std::pow(p.theta_one(), delta);
        // The residual decreases from +inf at N = 1 to -1.
        out.n_zero = root([&](double n) { return -time_fixed_point_residual(l, delta, n); }, 1.0 + 1e-9);
        // D is unimodal in continuous N, so the integer argmin neighbours n_zero.
        const int lo = std::max(2, int(std::floor(out.n_zero)));
        const int hi = std::max(2, int(std::ceil(out.n_zero)));
        out.n_star = delay_at(hi) < delay_at(lo) ? hi : lo;
        out.bracket = std::make_pair(std::max(2, int(std::floor(l))), int(std::ceil(l)) + 2);
    }
    const auto d = delay_at(out.n_star);
    out.d_min = d.value();
    return out;
}

ConstrainedOptimum delay_constrained_max_density(const NetworkParams& p, double eps, double d_max, Mode mode,
                                                 const DensityGrid& grid, const MetaControl& ctl) {
    if (!(d_max > 1.0)) throw DomainError("d_max must be > 1");
    return search(p, eps, d_max, mode, grid, ctl);
}

}  // namespace optimize
}  // namespace bwp
