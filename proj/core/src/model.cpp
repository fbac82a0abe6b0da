#include "bwp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bwp/error.hpp"

namespace bwp {

using Complex = std::complex<double>;

void NetworkParams::validate() const {
    if (!(lambda > 0.0 && std::isfinite(lambda))) throw DomainError("lambda must be > 0");
    if (!(alpha > 2.0 && std::isfinite(alpha))) throw DomainError("alpha must be > 2");
    if (!(rate > 0.0 && std::isfinite(rate))) throw DomainError("rate must be > 0");
    if (!(bandwidth > 0.0 && std::isfinite(bandwidth))) throw DomainError("bandwidth must be > 0");
}

double NetworkParams::theta_one() const { return std::expm1(a() * std::numbers::ln2); }

std::string_view to_string(Mode mode) {
    return mode == Mode::AdaptiveSir ? "adaptive-sir" : "adaptive-time";
}

Mode parse_mode(std::string_view text) {
    if (text == "adaptive-sir") return Mode::AdaptiveSir;
    if (text == "adaptive-time") return Mode::AdaptiveTime;
    throw DomainError("unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(MdMethod method) {
    return method == MdMethod::Exact ? "exact" : "asymptotic";
}

MdMethod parse_md_method(std::string_view text) {
    if (text == "exact") return MdMethod::Exact;
    if (text == "asymptotic") return MdMethod::Asymptotic;
    throw DomainError("unknown method '" + std::string(text) + "'");
}

void PartitionScheme::validate() const {
    if (n_subbands < 1) throw DomainError("number of sub-bands must be >= 1");
}

ExtendedReal::ExtendedReal(double value) : value_(value) {
    if (!(value >= 0.0)) throw DomainError("ExtendedReal must be nonnegative");
}

namespace model {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const NetworkParams& p, const PartitionScheme& s) {
    p.validate();
    s.validate();
}

// lambda C theta^delta / N
double interference_scale(const NetworkParams& p, const PartitionScheme& s) {
    const double delta = p.delta();
    return p.lambda * specfun::constant_C(delta) * std::pow(sir_threshold(p, s), delta) / s.n_subbands;
}

}  // namespace

double sir_threshold(const NetworkParams& p, const PartitionScheme& s) {
    check(p, s);
    const double n = s.mode == Mode::AdaptiveSir ? double(s.n_subbands) : 1.0;
    return std::expm1(n * p.a() * std::numbers::ln2);
}

Complex moment(const NetworkParams& p, const PartitionScheme& s, Complex b, const specfun::EvalControl& ctl) {
    check(p, s);
    if (b == Complex(0.0)) return 1.0;
    const double delta = p.delta();
    const Complex f = specfun::hyp2f1(1.0 - b, 1.0 - delta, 2.0, 1.0 / s.n_subbands, ctl);
    return std::exp(-b * interference_scale(p, s) * f);
}

double success_probability(const NetworkParams& p, const PartitionScheme& s) {
    check(p, s);
    return std::exp(-interference_scale(p, s));
}

double mean_log_outage(const NetworkParams& p, const PartitionScheme& s) {
    check(p, s);
    const double f = specfun::hyp2f1(1.0, 1.0 - p.delta(), 2.0, 1.0 / s.n_subbands).real();
    return interference_scale(p, s) * f;
}

double meta_distribution_asymptotic(const NetworkParams& p, const PartitionScheme& s, double eps) {
    check(p, s);
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    const double delta = p.delta();
    const double ratio = sir_threshold(p, s) / (s.n_subbands * eps);
    return std::exp(-specfun::constant_C_delta(delta) * std::pow(ratio, delta / (1.0 - delta)) *
                    std::pow(p.lambda, 1.0 / (1.0 - delta)));
}

double density_reliable(const NetworkParams& p, const PartitionScheme& s, double eps, MdMethod method,
                        const MetaControl& ctl) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    const double md = method == MdMethod::Exact ? meta_distribution_exact(p, s, 1.0 - eps, ctl)
                                                : meta_distribution_asymptotic(p, s, eps);
    return p.lambda * md;
}

ExtendedReal local_delay(const NetworkParams& p, const PartitionScheme& s) {
    check(p, s);
    const int n = s.n_subbands;
    if (n == 1) return ExtendedReal::infinity();
    const double delta = p.delta();
    const double theta = sir_threshold(p, s);
    const double exponent = p.lambda * specfun::constant_C(delta) * std::pow(theta / n, delta) *
                            std::pow(n - 1.0, delta - 1.0);
    const double d = std::exp(exponent);
    if (s.mode == Mode::AdaptiveSir) return ExtendedReal(d);
    return ExtendedReal(n * d);
}

ExtendedReal normalized_local_delay(const NetworkParams& p, const PartitionScheme& s) {
    const auto d = local_delay(p, s);
    if (d.is_infinite()) return d;
    // log2(1 + theta) = N R / W or R / W
    const double bits = s.mode == Mode::AdaptiveSir ? s.n_subbands * p.a() : p.a();
    return ExtendedReal(d.value() / bits);
}

double moment_large_t_asymptote(const NetworkParams& p, const PartitionScheme& s, double t) {
    check(p, s);
    if (!(t > 0.0)) throw DomainError("t must be > 0");
    const double delta = p.delta();
    const double scale = p.lambda * specfun::constant_C(delta) * std::pow(sir_threshold(p, s) / s.n_subbands, delta);
    return std::exp(-scale * std::pow(t, delta) / std::exp(specfun::log_gamma(1.0 + delta)));
}

}  // namespace model
}  // namespace bwp
