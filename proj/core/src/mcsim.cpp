#include "bwp/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bwp/error.hpp"
#include "bwp/numeric.hpp"

namespace bwp {

void SimConfig::validate() const {
    if (!(window_radius == 0.0 || (window_radius >= 10.0 && std::isfinite(window_radius))))
        throw DomainError("window radius must be >= 10 (or 0 for the bias rule)");
    if (realizations < 100) throw DomainError("realizations must be >= 100");
    if (max_slots < 1) throw DomainError("max_slots must be >= 1");
    if (!(bias_tol > 0.0 && bias_tol < 1.0)) throw DomainError("bias tolerance must lie in (0, 1)");
}

std::string_view to_string(DelayMethod method) {
    return method == DelayMethod::ConditionalMean ? "conditional-mean" : "slot-count";
}

DelayMethod parse_delay_method(std::string_view text) {
    if (text == "conditional-mean") return DelayMethod::ConditionalMean;
    if (text == "slot-count") return DelayMethod::SlotCount;
    throw DomainError("unknown delay method '" + std::string(text) + "'");
}

namespace mcsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinWindow = 10.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based seed: a different generator per (seed, stream, index).
std::mt19937_64 engine_for(const SimConfig& cfg, std::uint64_t index) {
    const std::uint64_t k = splitmix64(splitmix64(splitmix64(cfg.seed) ^ cfg.stream_id) ^ index);
    std::seed_seq seq{std::uint32_t(k), std::uint32_t(k >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
    return std::mt19937_64(seq);
}

struct Setup {
    double theta;
    double radius;
    double bias;
    double far_log;
};

Setup prepare(const NetworkParams& p, const PartitionScheme& s, const SimConfig& cfg, double b) {
    p.validate();
    s.validate();
    cfg.validate();
    const bool mean = cfg.far_field_mean;
    const double radius =
        cfg.window_radius > 0.0 ? cfg.window_radius : bias_window_radius(p, s, b, cfg.bias_tol, mean);
    return {model::sir_threshold(p, s), radius, far_field_bound(p, s, b, radius, mean),
            mean ? far_field_log_mean(p, s, radius) : 0.0};
}

// Draws the interferers of one realization and returns ln P_s; the caller's
// engine stays usable afterwards. `keep` receives distances when non-null.
// Points arrive in increasing distance (unit-rate gaps in lambda pi r^2), so a
// larger window extends the same realization.
double draw_log_ps(const NetworkParams& p, const PartitionScheme& s, const Setup& st, std::mt19937_64& eng,
                   std::vector<double>* keep) {
    std::exponential_distribution<double> gap(1.0);
    const double inv_n = 1.0 / s.n_subbands;
    const double inv_density = 1.0 / (p.lambda * kPi);
    numeric::CompensatedSum log_ps;
    for (double mass = gap(eng);; mass += gap(eng)) {
        const double r = std::sqrt(mass * inv_density);
        if (r > st.radius) break;
        if (r == 0.0) continue;  // a zero first gap has probability 2^-53; drop it to keep r > 0
        if (keep) keep->push_back(r);
        log_ps.add(std::log1p(-inv_n / (1.0 + std::pow(r, p.alpha) / st.theta)));
    }
    return log_ps.value() + st.far_log;
}

// Mean and standard error of per-realization samples, summed in index order.
Estimate summarize(const std::vector<double>& x, const Setup& st) {
    numeric::CompensatedSum sum;
    for (double v : x) sum.add(v);
    const double n = double(x.size());
    const double mean = sum.value() / n;
    numeric::CompensatedSum sq;
    for (double v : x) sq.add((v - mean) * (v - mean));
    Estimate e;
    e.value = mean;
    e.std_error = x.size() > 1 ? std::sqrt(sq.value() / (n - 1.0) / n) : 0.0;
    e.count = long(x.size());
    e.window_radius = st.radius;
    e.bias_bound = st.bias;
    return e;
}

}  // namespace

double far_field_log_mean(const NetworkParams& p, const PartitionScheme& s, double r) {
    p.validate();
    s.validate();
    if (!(r > 0.0)) throw DomainError("window radius must be > 0");
    const double theta = model::sir_threshold(p, s);
    const double inv_n = 1.0 / s.n_subbands;
    const double k = p.alpha - 2.0;
    // x = r t^(-1/k) maps (r, inf) onto t in (0, 1); the integrand tends to a constant as t -> 0.
    const auto& rule = numeric::gauss_legendre(48);
    numeric::CompensatedSum sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = 0.5 * (rule.nodes[i] + 1.0);
        const double x = r * std::pow(t, -1.0 / k);
        const double jacobian = x / (k * t);
        sum.add(0.5 * rule.weights[i] * x * std::log1p(-inv_n / (1.0 + std::pow(x, p.alpha) / theta)) * jacobian);
    }
    return 2.0 * kPi * p.lambda * sum.value();
}

double far_field_bound(const NetworkParams& p, const PartitionScheme& s, double b, double r, bool mean) {
    p.validate();
    s.validate();
    if (!(r > 0.0)) throw DomainError("window radius must be > 0");
    const double theta = model::sir_threshold(p, s);
    const double n = s.n_subbands;
    if (!mean) return 2.0 * kPi * p.lambda * std::abs(b) * theta * std::pow(r, 2.0 - p.alpha) / (n * (p.alpha - 2.0));
    const double q = std::min(theta * std::pow(r, -p.alpha) / n, 0.5);
    const double excess = std::exp(std::abs(b) * q / (1.0 - q));
    return kPi * p.lambda * b * b * theta * theta * std::pow(r, 2.0 - 2.0 * p.alpha) * excess /
           (n * n * (2.0 * p.alpha - 2.0) * (1.0 - q) * (1.0 - q));
}

double bias_window_radius(const NetworkParams& p, const PartitionScheme& s, double b, double tol, bool mean) {
    if (!(tol > 0.0)) throw DomainError("bias tolerance must be > 0");
    const auto excess = [&](double r) { return far_field_bound(p, s, b, r, mean) - tol; };
    if (excess(kMinWindow) <= 0.0) return kMinWindow;
    // The bound decreases in r; double then bisect.
    double lo = kMinWindow, hi = 2.0 * kMinWindow;
    while (excess(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    return numeric::bisect(excess, lo, hi, 1e-13);
}

double conditional_success_probability(const std::vector<double>& distances, double theta, int n, double alpha) {
    if (!(theta > 0.0)) throw DomainError("theta must be > 0");
    if (n < 1) throw DomainError("N must be >= 1");
    if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
    numeric::CompensatedSum log_ps;
    for (double r : distances) {
        if (!(r > 0.0)) throw DomainError("interferer distances must be > 0");
        log_ps.add(std::log1p(-(1.0 / n) / (1.0 + std::pow(r, alpha) / theta)));
    }
    return std::exp(log_ps.value());
}

RealizationSnapshot sample_realization(const NetworkParams& p, const PartitionScheme& s, const SimConfig& cfg,
                                       std::uint64_t index) {
    if (cfg.window_radius == 0.0) throw DomainError("sample_realization needs an explicit window radius");
    const Setup st = prepare(p, s, cfg, 1.0);
    auto eng = engine_for(cfg, index);
    RealizationSnapshot snap;
    draw_log_ps(p, s, st, eng, &snap.interferer_distances);
    snap.far_field_log = st.far_log;
    snap.p_s = conditional_success_probability(snap.interferer_distances, st.theta, s.n_subbands, p.alpha) *
               std::exp(st.far_log);
    return snap;
}

Estimate estimate_moment(const NetworkParams& p, const PartitionScheme& s, double b, const SimConfig& cfg) {
    const Setup st = prepare(p, s, cfg, std::max(1.0, std::abs(b)));
    std::vector<double> x(cfg.realizations);
    numeric::parallel_for(x.size(), [&](std::size_t i) {
        auto eng = engine_for(cfg, i);
        x[i] = b == 0.0 ? 1.0 : std::exp(b * draw_log_ps(p, s, st, eng, nullptr));
    });
    return summarize(x, st);
}

Estimate estimate_meta(const NetworkParams& p, const PartitionScheme& s, double eps, const SimConfig& cfg) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
    const Setup st = prepare(p, s, cfg, 1.0);
    const double log_x = std::log1p(-eps);
    std::vector<double> x(cfg.realizations);
    numeric::parallel_for(x.size(), [&](std::size_t i) {
        auto eng = engine_for(cfg, i);
        x[i] = draw_log_ps(p, s, st, eng, nullptr) > log_x ? 1.0 : 0.0;
    });
    return summarize(x, st);
}

Estimate estimate_local_delay(const NetworkParams& p, const PartitionScheme& s, const SimConfig& cfg,
                              DelayMethod method) {
    const Setup st = prepare(p, s, cfg, 1.0);
    const double slots_per_attempt = s.mode == Mode::AdaptiveTime ? double(s.n_subbands) : 1.0;
    std::vector<double> x(cfg.realizations);
    std::vector<char> censored(cfg.realizations, 0);
    numeric::parallel_for(x.size(), [&](std::size_t i) {
        auto eng = engine_for(cfg, i);
        const double log_ps = draw_log_ps(p, s, st, eng, nullptr);
        if (method == DelayMethod::ConditionalMean) {
            x[i] = slots_per_attempt * std::exp(-log_ps);
            return;
        }
        std::bernoulli_distribution success(std::exp(log_ps));
        int attempts = 1;
        while (!success(eng)) {
            if (attempts == cfg.max_slots) {
                censored[i] = 1;
                break;
            }
            ++attempts;
        }
        x[i] = slots_per_attempt * attempts;
    });
    Estimate e = summarize(x, st);
    if (method == DelayMethod::SlotCount) {
        e.censored_fraction = double(std::count(censored.begin(), censored.end(), 1)) / double(censored.size());
        e.censoring_unreliable = e.censored_fraction > 0.01;
    }
    e.divergent_model = model::local_delay(p, s).is_infinite();
    return e;
}

}  // namespace mcsim
}  // namespace bwp
