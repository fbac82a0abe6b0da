// Exact meta distribution by Gil-Pelaez inversion.
//
// X = -ln P_s is infinitely divisible: each interferer at normalised gain
// v = 1 / (1 + r^alpha / theta) adds a jump -ln(1 - v / N). With
// Lambda = lambda pi theta^delta and s(v) = ((1 - v) / v)^delta the expected
// number of interferers with gain above v is Lambda s(v), and
//
//   ln E[e^{-jtX}] = -Lambda jt J(t),  J(t) = (1/N) int_0^1 s(v) (1 - v/N)^{jt-1} dv,
//
// which is -jt lambda C theta^delta / N * 2F1(1 - jt, 1 - delta; 2; 1/N).
//
// For N >= 2 the largest jump w_max = -ln(1 - 1/N) puts an oscillation of
// frequency w_max into the characteristic function. When w_max is large
// compared with y = -ln x, jumps of size >= y are split off: the event
// X < y requires that none occur, which has probability exp(-Lambda s(v_c))
// with v_c = N (1 - x), and the remaining part has jumps below y only.
// Either way the inverted function takes the form
//
//   phi(t) = exp(A(t) + B(t) e^{-jt omega}),
//
// where, for large t, A and B are smooth and follow from steepest-descent
// paths of J; they are interpolated on wide panels while the two
// exponentials are integrated on a fine grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "bwp/error.hpp"
#include "bwp/model.hpp"
#include "bwp/numeric.hpp"
#include "bwp/quadrature.hpp"
#include "bwp/specfun.hpp"

namespace bwp::model {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr Complex kJ{0.0, 1.0};

// Steepest-descent strip half-width (in units of 1/t) beyond which the fixed
// Laguerre rules are used for J.
constexpr double kSplitWidth = 45.0;
constexpr int kLaguerreNodes = 40;

constexpr int kChebDegree = 24;
constexpr int kChebPoints = kChebDegree + 1;
using ChebValues = std::array<Complex, kChebPoints>;

const std::array<double, 2 * kChebDegree>& cos_table() {
    static const auto table = [] {
        std::array<double, 2 * kChebDegree> t{};
        for (int i = 0; i < 2 * kChebDegree; ++i) t[i] = std::cos(kPi * i / kChebDegree);
        return t;
    }();
    return table;
}

// Values at the Lobatto points cos(pi j / n) -> Chebyshev coefficients.
ChebValues cheb_coefficients(const ChebValues& values) {
    const auto& cs = cos_table();
    ChebValues c{};
    for (int k = 0; k < kChebPoints; ++k) {
        Complex acc{};
        for (int j = 0; j < kChebPoints; ++j) {
            const double w = (j == 0 || j == kChebDegree) ? 0.5 : 1.0;
            acc += w * values[j] * cs[(j * k) % (2 * kChebDegree)];
        }
        c[k] = acc * (2.0 / kChebDegree);
    }
    c[0] *= 0.5;
    c[kChebDegree] *= 0.5;
    return c;
}

Complex clenshaw(const ChebValues& c, double s) {
    Complex b1{}, b2{};
    for (int k = kChebDegree; k >= 1; --k) {
        const Complex b0 = c[k] + 2.0 * s * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + s * b1 - b2;
}

double cheb_tail(const ChebValues& c) {
    return std::abs(c[kChebDegree]) + std::abs(c[kChebDegree - 1]) + std::abs(c[kChebDegree - 2]);
}

// w^p on the principal branch.
Complex cpow(Complex w, double p) { return std::polar(std::exp(p * std::log(std::abs(w))), p * std::arg(w)); }

// e^{j rho} - 1 without cancellation at small rho.
Complex expm1_j(double rho) {
    const double hs = std::sin(0.5 * rho);
    return {-2.0 * hs * hs, std::sin(rho)};
}

struct Split {
    Complex a;
    Complex b;
};

// The characteristic function of the (possibly truncated) log-outage.
class CharFn {
public:
    CharFn(const NetworkParams& p, const PartitionScheme& s, double x, const specfun::EvalControl& hyp,
           bool allow_split)
        : hyp_(hyp), delta_(p.delta()), n_(s.n_subbands), y_(-std::log(x)) {
        const double theta = sir_threshold(p, s);
        big_lambda_ = p.lambda * kPi * std::pow(theta, delta_);
        w_max_ = n_ == 1 ? INFINITY : -std::log1p(-1.0 / n_);
        truncated_ = allow_split && n_ >= 2 && w_max_ >= 2.0 * y_;
        if (truncated_) {
            v_c_ = -n_ * std::expm1(-y_);
            q_ = -std::expm1(-y_);
            omega_ = y_;
            s_c_ = std::pow((1.0 - v_c_) / v_c_, delta_);
            split_from_ = kSplitWidth / y_;
        } else {
            v_c_ = 1.0;
            q_ = 1.0 / n_;
            omega_ = w_max_;
            split_from_ = n_ == 1 ? INFINITY : kSplitWidth / w_max_;
        }
        split_from_ = std::max(split_from_, 20.0);
        pref_ = std::pow(v_c_, 1.0 - delta_) / n_;
        kappa_ = big_lambda_ * specfun::constant_C(delta_) / (kPi * n_);
        mean_ = truncated_ ? big_lambda_ * (direct_j(0.0).real() - omega_ * s_c_) : mean_log_outage(p, s);
    }

    double y() const { return y_; }
    double omega() const { return omega_; }
    double mean() const { return mean_; }
    double split_from() const { return split_from_; }
    // P(no jump of size >= y); 1 without truncation.
    double prefactor() const { return std::exp(-big_lambda_ * s_c_); }

    Complex operator()(double t) const {
        if (t == 0.0) return 1.0;
        const Complex jt(0.0, t);
        if (!truncated_) {
            const Complex f = specfun::hyp2f1(1.0 - jt, 1.0 - delta_, 2.0, q_, hyp_);
            return std::exp(-jt * kappa_ * f);
        }
        const Complex edge = 1.0 - std::exp(Complex(0.0, -t * omega_));
        return std::exp(big_lambda_ * (edge * s_c_ - jt * direct_j(t)));
    }

    // A and B for t >= split_from().
    Split split(double t) const {
        const auto& r0 = numeric::gauss_laguerre(kLaguerreNodes, -delta_);
        Complex j0{};
        for (std::size_t i = 0; i < r0.nodes.size(); ++i) {
            const double rho = r0.nodes[i] / t;
            if (rho >= kPi) break;
            const Complex u_over_rho = -expm1_j(rho) / (q_ * rho);
            const Complex u = u_over_rho * rho;
            j0 += r0.weights[i] * cpow(u_over_rho, -delta_) * cpow(1.0 - v_c_ * u, delta_);
        }
        j0 *= -kJ / q_ * pref_ * std::pow(t, delta_ - 1.0);

        const double alpha1 = truncated_ ? 0.0 : delta_;
        const auto& r1 = numeric::gauss_laguerre(kLaguerreNodes, alpha1);
        Complex j1{};
        for (std::size_t i = 0; i < r1.nodes.size(); ++i) {
            const double rho = r1.nodes[i] / t;
            if (rho >= kPi) break;
            const Complex rest_over_rho = (1.0 - q_) * expm1_j(rho) / (q_ * rho);  // (1 - u) / rho
            const Complex u = 1.0 - rest_over_rho * rho;
            const Complex edge = truncated_ ? cpow(1.0 - v_c_ * u, delta_) : cpow(rest_over_rho, delta_);
            j1 += r1.weights[i] * cpow(u, -delta_) * edge;
        }
        j1 *= -kJ / q_ * pref_ * std::pow(t, -1.0 - alpha1);

        const Complex jt(0.0, t);
        return {big_lambda_ * (s_c_ - jt * j0), big_lambda_ * (jt * j1 - s_c_)};
    }

private:
    // J(t) on the real axis with u = r^(1 / (1 - delta)) absorbing u^-delta.
    Complex direct_j(double t) const {
        const double e = 1.0 / (1.0 - delta_);
        const Complex power(-1.0, t);
        auto f = [&](double r) -> Complex {
            const double u = std::pow(r, e);
            return std::pow(1.0 - v_c_ * u, delta_) * std::exp(power * std::log1p(-q_ * u));
        };
        const auto res = quad::integrate<Complex>(f, 0.0, 1.0, 0.0, 1e-2 * hyp_.rel_tol, hyp_.quad_points);
        if (!res.converged) throw ConvergenceError("meta distribution: truncated moment quadrature failed");
        return pref_ * e * res.value;
    }

    specfun::EvalControl hyp_;
    double delta_;
    int n_;
    double y_;
    double big_lambda_ = 0.0;
    double w_max_ = 0.0;
    bool truncated_ = false;
    double v_c_ = 1.0;
    double q_ = 0.0;
    double omega_ = 0.0;
    double s_c_ = 0.0;
    double pref_ = 0.0;
    double kappa_ = 0.0;  // lambda C theta^delta / N
    double mean_ = 0.0;
    double split_from_ = INFINITY;
};

// Largest |phi| ln-magnitude scale, used to keep acceptance above the noise
// of the moment evaluations.
double noise_floor(const ChebValues& values) {
    double noise = 0.0;
    for (const auto& v : values) {
        const double mag = std::abs(v);
        if (mag > 0.0) noise = std::max(noise, mag * std::abs(std::log(v)));
    }
    return noise;
}

// Integrates Im(e^{jty} g(t)) / t over [lo, lo + width] on GL subpanels no
// wider than max_sub; g is given through its evaluator.
template <typename G>
double dense_integral(double lo, double width, double y, double max_sub, const G& g) {
    const auto& gl = numeric::gauss_legendre(32);
    const int sub = std::max(1, int(std::ceil(width / max_sub)));
    const double sub_width = width / sub;
    numeric::CompensatedSum total;
    for (int k = 0; k < sub; ++k) {
        const double mid = lo + (k + 0.5) * sub_width;
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double t = mid + 0.5 * sub_width * gl.nodes[i];
            acc += gl.weights[i] * std::imag(std::exp(Complex(0.0, t * y)) * g(t)) / t;
        }
        total.add(0.5 * sub_width * acc);
    }
    return total.value();
}

}  // namespace

// F(x) = P(X < y) = 1/2 + (1/pi) int_0^inf Im(e^{jty} phi(t)) / t dt. The
// first panel is integrated directly (the integrand tends to y - E[X] at the
// origin). After it, phi (or A and B) is replaced panel by panel by a
// Chebyshev interpolant checked through its trailing coefficients.
double meta_distribution_exact(const NetworkParams& p, const PartitionScheme& s, double x,
                               const MetaControl& ctl) {
    p.validate();
    s.validate();
    if (!(x > 0.0 && x < 1.0)) throw DomainError("reliability threshold x must lie in (0, 1)");
    ctl.hyp.validate();

    const CharFn cf(p, s, x, ctl.hyp, ctl.split_large_jumps);
    const double y = cf.y();
    const double mean = cf.mean();
    // Markov: P(X >= y) <= E[X] / y.
    if (mean <= 1e-12 * y) return cf.prefactor();

    const double limit0 = y - mean;
    const double rate = y + mean;
    auto direct = [&](double t) -> double {
        if (t * rate < 1e-8) return limit0;
        return std::imag(std::exp(Complex(0.0, t * y)) * cf(t)) / t;
    };

    numeric::CompensatedSum total;
    const double t_split = cf.split_from();
    const double h0 = std::min(0.5 / rate, t_split);
    const auto first = quad::integrate<double>(direct, 0.0, h0, 0.1 * ctl.abs_tol, 0.0, 4000);
    if (!first.converged) throw ConvergenceError("meta distribution: quadrature failed near the origin");
    total.add(first.value);

    const double interp_tol = 1e-2 * ctl.abs_tol;
    // GL-32 is exact to rounding over three half-periods of the fastest exponential.
    const double max_sub = 3.0 * kPi / (y + (std::isfinite(cf.omega()) ? cf.omega() : 0.0));
    const auto& cs = cos_table();
    int panels = 0;
    auto budget = [&] {
        if (++panels > ctl.max_panels) throw ConvergenceError("meta distribution: panel budget exhausted");
    };

    // Direct interpolation of phi on [h0, t_split).
    double ta = h0;
    double width = h0;
    bool done = false;
    Complex phi_ta = cf(ta);
    ChebValues values{};
    while (ta < t_split) {
        budget();
        const double w = std::min(width, t_split - ta);
        const double tb = ta + w;
        const double mid = 0.5 * (ta + tb);
        const double half = 0.5 * w;
        values[kChebDegree] = phi_ta;
        for (int j = 0; j < kChebDegree; ++j) values[j] = cf(mid + half * cs[j]);
        const auto c = cheb_coefficients(values);
        const double tail = cheb_tail(c);
        // An error e in phi over [ta, tb] moves the integral by at most e ln(tb / ta).
        const double accept =
            std::max(interp_tol / std::log1p(w / ta), 1e-2 * ctl.hyp.rel_tol * noise_floor(values));
        if (tail > accept) {
            width = 0.5 * w;
            if (width < 1e-13 * ta) throw ConvergenceError("meta distribution: moment not resolvable");
            continue;
        }
        total.add(dense_integral(ta, w, y, max_sub, [&](double t) { return clenshaw(c, (t - mid) / half); }));
        double peak = 0.0;
        for (const auto& v : values) peak = std::max(peak, std::abs(v));
        ta = tb;
        phi_ta = values[0];
        if (peak < ctl.truncation) {
            done = true;
            break;
        }
        if (tail < 1e-3 * accept) width = 2.0 * w;
        else if (tail < 1e-1 * accept) width = 1.5 * w;
    }

    // Split form on [t_split, inf): interpolate A and B, integrate the exponentials densely.
    const double omega = cf.omega();
    width = ta;
    while (!done) {
        budget();
        const double tb = ta + width;
        const double mid = 0.5 * (ta + tb);
        const double half = 0.5 * width;
        ChebValues va{}, vb{}, phis{};
        for (int j = 0; j <= kChebDegree; ++j) {
            const double t = mid + half * cs[j];
            const auto ab = cf.split(t);
            va[j] = ab.a;
            vb[j] = ab.b;
            phis[j] = std::exp(ab.a + ab.b * std::exp(Complex(0.0, -t * omega)));
        }
        const auto ca = cheb_coefficients(va);
        const auto cb = cheb_coefficients(vb);
        double peak = 0.0, bmax = 0.0;
        for (int j = 0; j <= kChebDegree; ++j) {
            peak = std::max(peak, std::exp(va[j].real()));
            bmax = std::max(bmax, std::abs(vb[j]));
        }
        peak *= std::exp(bmax);
        const double err = peak * (cheb_tail(ca) + cheb_tail(cb));
        const double accept =
            std::max(interp_tol / std::log1p(width / ta), 1e-2 * ctl.hyp.rel_tol * noise_floor(phis));
        if (err > accept) {
            width *= 0.5;
            if (width < 1e-13 * ta) throw ConvergenceError("meta distribution: moment not resolvable");
            continue;
        }
        total.add(dense_integral(ta, width, y, max_sub, [&](double t) {
            const double sc = (t - mid) / half;
            return std::exp(clenshaw(ca, sc) + clenshaw(cb, sc) * std::exp(Complex(0.0, -t * omega)));
        }));
        ta = tb;
        if (peak < ctl.truncation) break;
        if (err < 1e-3 * accept) width *= 2.0;
        else if (err < 1e-1 * accept) width *= 1.5;
    }

    const double md = cf.prefactor() * (0.5 + total.value() / kPi);
    return std::clamp(md, 0.0, 1.0);
}

}  // namespace bwp::model
