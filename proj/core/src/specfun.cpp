#include "bwp/specfun.hpp"

#include <math.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bwp/error.hpp"
#include "bwp/numeric.hpp"
#include "bwp/quadrature.hpp"

namespace bwp::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kJ{0.0, 1.0};

// B_2k / (2k (2k - 1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,          -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,           -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

// Shift until |w| is large enough for the asymptotic series to be exact in double.
constexpr double kStirlingRadius = 15.0;

// Bernoulli numbers B_0..B_21.
constexpr std::array<double, 22> kBernoulli = {
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0,
    -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0, -3617.0 / 510.0, 0.0, 43867.0 / 798.0, 0.0, -174611.0 / 330.0, 0.0};

double bernoulli_poly(int n, double x) {
    double binom = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        acc += binom * kBernoulli[k] * std::pow(x, n - k);
        binom = binom * (n - k) / (k + 1);
    }
    return acc;
}

// Phase swing of (1 - zu)^(-a) along [0, 1] beyond which the deformed path is used.
constexpr double kMaxRealAxisPhase = 20.0;

// Strip half-width (in units of the decay scale) above which the fixed
// Laguerre rule replaces adaptive quadrature on the deformed path.
constexpr double kLaguerreWidth = 45.0;
constexpr int kLaguerreNodes = 40;

// Beyond this the Maclaurin terms cancel by more than a digit or so.
constexpr double kMaxSeriesGrowth = 2.0;

// w^p on the principal branch. std::pow routes through clog, whose
// correctly rounded path near |w| = 1 is far slower than needed here.
Complex cpow(Complex w, double p) {
    const double mag = std::abs(w);
    const double lm = std::log(mag);
    const double ph = std::arg(w);
    return std::polar(std::exp(p * lm), p * ph);
}

void require_family(double b, double c, double z) {
    if (!(b > 0.0 && b <= 1.0)) throw DomainError("hyp2f1: b must lie in (0, 1]");
    if (!(c >= 1.0)) throw DomainError("hyp2f1: c must be >= 1");
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1]");
}

ConvergenceError quad_failure(const char* where, double err) {
    std::ostringstream os;
    os << "hyp2f1: " << where << " quadrature did not converge (error estimate " << err << ")";
    return ConvergenceError(os.str());
}

double euler_norm(double b, double c) {
    return std::exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b));
}

Complex euler_real_axis(Complex a, double b, double c, double z, const EvalControl& ctl) {
    const double e = c - b;
    const double tol = ctl.rel_tol * 1e-2;
    // w(u) = (1 - zu)^(-a) with 1 - zu > 0.
    auto power = [&](double u) { return std::exp(-a * std::log1p(-z * u)); };
    // [0, 1/2]: u = v^(1/b) / 2 absorbs u^(b-1).
    auto head = [&](double v) -> Complex {
        const double u = 0.5 * std::pow(v, 1.0 / b);
        return std::pow(1.0 - u, e - 1.0) * power(u);
    };
    // [1/2, 1]: 1 - u = s^(1/e) / 2 absorbs (1-u)^(e-1).
    auto tail = [&](double s) -> Complex {
        const double w = 0.5 * std::pow(s, 1.0 / e);
        return std::pow(1.0 - w, b - 1.0) * power(1.0 - w);
    };
    auto h = quad::integrate<Complex>(head, 0.0, 1.0, 0.0, tol, ctl.quad_points);
    if (!h.converged) throw quad_failure("real-axis", h.abs_error);
    auto t = quad::integrate<Complex>(tail, 0.0, 1.0, tol * std::abs(h.value) * 1e-2, tol,
                                      ctl.quad_points);
    if (!t.converged) throw quad_failure("real-axis", t.abs_error);
    return euler_norm(b, c) * (std::pow(0.5, b) / b * h.value + std::pow(0.5, e) / e * t.value);
}

// Path from u = 0 along 1 - zu = exp(j s rho) and from u = 1 along
// 1 - zu = (1 - z) exp(j s rho), s = -sign(Im a). On both, (1 - zu)^(-a)
// decays like exp(-|Im a| rho); the segment joining their far ends is negligible.
Complex euler_deformed(Complex a, double b, double c, double z, const EvalControl& ctl) {
    const double e = c - b;
    const double sgn = a.imag() < 0.0 ? 1.0 : -1.0;
    const double rho_end = std::min(kPi, 46.0 / std::abs(a.imag()));
    const double tol = ctl.rel_tol * 1e-2;

    // e^{j s rho} - 1, accurate for small rho.
    auto expm1_j = [sgn](double rho) {
        const double hs = std::sin(0.5 * rho);
        return Complex(-2.0 * hs * hs, sgn * std::sin(rho));
    };

    auto from_zero = [&](double v) -> Complex {
        const double rho = rho_end * std::pow(v, 1.0 / b);
        const Complex rot = std::exp(Complex(0.0, sgn * rho));
        const Complex u_over_rho = rho > 0.0 ? -expm1_j(rho) / (z * rho) : Complex(0.0, -sgn / z);
        const Complex u = u_over_rho * rho;
        const Complex du = -kJ * sgn * rot / z;
        return cpow(u_over_rho, b - 1.0) * cpow(1.0 - u, e - 1.0) *
               std::exp(-kJ * sgn * rho * a) * du;
    };
    const double omz = 1.0 - z;
    const Complex scale1 = std::exp(-a * std::log(omz));
    auto from_one = [&](double v) -> Complex {
        const double rho = rho_end * std::pow(v, 1.0 / e);
        const Complex rot = std::exp(Complex(0.0, sgn * rho));
        const Complex w_over_rho =
            rho > 0.0 ? omz * expm1_j(rho) / (z * rho) : Complex(0.0, sgn * omz / z);
        const Complex u = 1.0 - w_over_rho * rho;
        const Complex du = -kJ * sgn * omz * rot / z;
        return cpow(u, b - 1.0) * cpow(w_over_rho, e - 1.0) *
               std::exp(-kJ * sgn * rho * a) * du;
    };

    auto p0 = quad::integrate<Complex>(from_zero, 0.0, 1.0, 0.0, tol, ctl.quad_points);
    if (!p0.converged) throw quad_failure("deformed-path", p0.abs_error);
    auto p1 = quad::integrate<Complex>(from_one, 0.0, 1.0, tol * std::abs(p0.value) * 1e-2, tol,
                                       ctl.quad_points);
    if (!p1.converged) throw quad_failure("deformed-path", p1.abs_error);
    const Complex path0 = std::pow(rho_end, b) / b * p0.value;
    const Complex path1 = scale1 * std::pow(rho_end, e) / e * p1.value;
    return euler_norm(b, c) * (path0 - path1);
}

// Same two paths as euler_deformed, but with rho = tau / |Im a| and a
// generalised Gauss-Laguerre rule in tau absorbing both the endpoint power
// and the exponential decay. The remaining factor is analytic in a strip of
// half-width |Im a| (-ln(1 - z)) around the path, so a fixed rule suffices
// once that width is large.
Complex euler_laguerre(Complex a, double b, double c, double z) {
    const double e = c - b;
    const double sgn = a.imag() < 0.0 ? 1.0 : -1.0;
    const double k = std::abs(a.imag());
    const double omz = 1.0 - z;
    const Complex phase_rate = -kJ * sgn * a.real();  // residual e^{-j s rho Re a}
    auto expm1_j = [sgn](double rho) {
        const double hs = std::sin(0.5 * rho);
        return Complex(-2.0 * hs * hs, sgn * std::sin(rho));
    };

    const auto& r0 = numeric::gauss_laguerre(kLaguerreNodes, b - 1.0);
    Complex path0{};
    for (std::size_t i = 0; i < r0.nodes.size(); ++i) {
        const double rho = r0.nodes[i] / k;
        if (rho >= kPi) break;
        const Complex rot = std::exp(Complex(0.0, sgn * rho));
        const Complex u_over_rho = -expm1_j(rho) / (z * rho);
        const Complex u = u_over_rho * rho;
        const Complex du = -kJ * sgn * rot / z;
        path0 += r0.weights[i] * cpow(u_over_rho, b - 1.0) * cpow(1.0 - u, e - 1.0) *
                 std::exp(phase_rate * rho) * du;
    }
    path0 *= std::pow(k, -b);

    const auto& r1 = numeric::gauss_laguerre(kLaguerreNodes, e - 1.0);
    Complex path1{};
    for (std::size_t i = 0; i < r1.nodes.size(); ++i) {
        const double rho = r1.nodes[i] / k;
        if (rho >= kPi) break;
        const Complex rot = std::exp(Complex(0.0, sgn * rho));
        const Complex w_over_rho = omz * expm1_j(rho) / (z * rho);
        const Complex u = 1.0 - w_over_rho * rho;
        const Complex du = -kJ * sgn * omz * rot / z;
        path1 += r1.weights[i] * cpow(u, b - 1.0) * cpow(w_over_rho, e - 1.0) *
                 std::exp(phase_rate * rho) * du;
    }
    path1 *= std::exp(-a * std::log(omz)) * std::pow(k, -e);
    return euler_norm(b, c) * (path0 - path1);
}

}  // namespace

void EvalControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) throw DomainError("EvalControl: rel_tol must lie in (0, 1e-6]");
    if (max_terms < 64) throw DomainError("EvalControl: max_terms must be >= 64");
    if (quad_points < 64) throw DomainError("EvalControl: quad_points must be >= 64");
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: x must be > 0");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

Complex log_gamma_complex(Complex z) {
    if (!(z.real() > 0.0)) throw DomainError("log_gamma_complex: Re z must be > 0");
    Complex shift{};
    Complex w = z;
    while (std::abs(w) < kStirlingRadius) {
        shift += std::log(w);
        w += 1.0;
    }
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series{};
    Complex p = inv;
    for (double coef : kStirling) {
        series += coef * p;
        p *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift;
}

Complex log_gamma_ratio(Complex w, double shift) {
    if (!(w.real() > 0.0) || !((w + shift).real() > 0.0))
        throw DomainError("log_gamma_ratio: Re w and Re(w + shift) must be > 0");
    Complex acc{};
    while (std::abs(w) < 2.0 * kStirlingRadius) {
        acc -= std::log(w + shift) - std::log(w);
        w += 1.0;
    }
    const Complex inv = 1.0 / w;
    Complex p = inv;
    Complex series{};
    for (int k = 1; k <= 20; ++k) {
        const double coef = (bernoulli_poly(k + 1, shift) - kBernoulli[k + 1]) / (k * (k + 1.0));
        series += (k % 2 == 1 ? coef : -coef) * p;
        p *= inv;
    }
    return acc + shift * std::log(w) + series;
}

Complex hyp2f1_unit(Complex a, double b, double c) {
    const Complex s = c - a - b;
    if (!(s.real() > 0.0)) throw DomainError("hyp2f1: Gauss sum diverges (Re(c - a - b) <= 0)");
    if (c == b) return Complex(0.0);  // Gamma(c - b) pole, Re(-a) > 0
    return std::exp(log_gamma(c) - log_gamma(c - b) + log_gamma_ratio(c - a, -b));
}

Complex hyp2f1_series(Complex a, double b, double c, double z, const EvalControl& ctl) {
    require_family(b, c, z);
    ctl.validate();
    Complex sum = 1.0;
    Complex term = 1.0;
    int small = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= (a + double(k)) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-3 * ctl.rel_tol * std::abs(sum)) {
            if (++small == 2) return sum;
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge within max_terms");
}

Complex hyp2f1_euler(Complex a, double b, double c, double z, const EvalControl& ctl) {
    require_family(b, c, z);
    ctl.validate();
    if (!(z < 1.0)) throw DomainError("hyp2f1_euler: z must be < 1");
    if (c == b) return std::exp(-a * std::log1p(-z));
    const double swing = std::abs(a.imag()) * -std::log1p(-z);
    if (swing > kLaguerreWidth && std::abs(a.real()) * 8.0 < std::abs(a.imag()))
        return euler_laguerre(a, b, c, z);
    if (swing > kMaxRealAxisPhase && std::abs(a.imag()) >= 12.0) return euler_deformed(a, b, c, z, ctl);
    return euler_real_axis(a, b, c, z, ctl);
}

Complex hyp2f1(Complex a, double b, double c, double z, const EvalControl& ctl) {
    require_family(b, c, z);
    ctl.validate();
    if (a == Complex(0.0) || z == 0.0) return 1.0;
    if (z == 1.0) return hyp2f1_unit(a, b, c);
    if (std::abs(a) * -std::log1p(-z) <= kMaxSeriesGrowth) return hyp2f1_series(a, b, c, z, ctl);
    return hyp2f1_euler(a, b, c, z, ctl);
}

double constant_C(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("constant_C: delta must lie in (0, 1)");
    return kPi * std::exp(log_gamma(1.0 - delta) + log_gamma(1.0 + delta));
}

double constant_C_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("constant_C_delta: delta must lie in (0, 1)");
    const double base = kPi * delta * std::exp(log_gamma(1.0 - delta));
    return std::pow(base, 1.0 / (1.0 - delta)) / (delta / (1.0 - delta));
}

}  // namespace bwp::specfun
