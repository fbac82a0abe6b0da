#pragma once

// Closed-form and Gil-Pelaez evaluations for bandwidth partitioning in a
// Poisson bipolar network with unit link distance, unit power and Rayleigh
// fading: SIR thresholds, moments of the conditional success probability,
// the SIR meta distribution (MD), the density of reliable transmissions and
// the local delay, for both partitioning approaches.

#include <compare>
#include <complex>
#include <limits>
#include <string_view>

#include "bwp/specfun.hpp"

namespace bwp {

/// Physical parameters. Derived quantities are computed on demand.
struct NetworkParams {
    double lambda = 0.1;    // transmitter intensity per unit area
    double alpha = 4.0;     // path-loss exponent, > 2
    double rate = 0.1;      // target data rate R (bits/s)
    double bandwidth = 1.0; // total bandwidth W (Hz)

    void validate() const;
    double delta() const { return 2.0 / alpha; }
    double a() const { return rate / bandwidth; }
    /// theta_1 = 2^(R/W) - 1
    double theta_one() const;
};

/// ADAPTIVE_SIR keeps the rate and raises the SIR threshold with N;
/// ADAPTIVE_TIME keeps the threshold and spends N slots per packet.
enum class Mode { AdaptiveSir, AdaptiveTime };

std::string_view to_string(Mode mode);
/// Accepts "adaptive-sir" / "adaptive-time"; throws DomainError otherwise.
Mode parse_mode(std::string_view text);

struct PartitionScheme {
    Mode mode = Mode::AdaptiveSir;
    int n_subbands = 1;

    void validate() const;
};

/// Nonnegative real or +inf.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    /// Values that overflowed to +inf are kept as +inf.
    explicit ExtendedReal(double value);
    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.value_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
    bool is_finite() const { return !is_infinite(); }
    double value() const { return value_; }

    friend auto operator<=>(const ExtendedReal&, const ExtendedReal&) = default;

private:
    double value_ = 0.0;
};

/// Which MD evaluation a density query uses.
enum class MdMethod { Exact, Asymptotic };

std::string_view to_string(MdMethod method);
MdMethod parse_md_method(std::string_view text);

/// Budget for the Gil-Pelaez inversion.
struct MetaControl {
    specfun::EvalControl hyp{};
    double truncation = 1e-9;  // stop once |M_{jt}| drops below this
    double abs_tol = 1e-10;    // target absolute error of the MD
    int max_panels = 200000;
    // Condition on the absence of jumps of -ln P_s above -ln x when the largest
    // possible jump is much bigger; false inverts the full distribution.
    bool split_large_jumps = true;
};

namespace model {

/// theta(N) = 2^(N R / W) - 1 for ADAPTIVE_SIR, 2^(R / W) - 1 for ADAPTIVE_TIME.
double sir_threshold(const NetworkParams& p, const PartitionScheme& s);

/// b-th moment of the conditional success probability,
/// exp(-b lambda C 2F1(1 - b, 1 - delta; 2; 1/N) theta^delta / N).
std::complex<double> moment(const NetworkParams& p, const PartitionScheme& s, std::complex<double> b,
                            const specfun::EvalControl& ctl = {});

/// M_1 = exp(-lambda C theta^delta / N).
double success_probability(const NetworkParams& p, const PartitionScheme& s);

/// E[-ln P_s] = lambda C theta^delta / N * 2F1(1, 1 - delta; 2; 1/N).
double mean_log_outage(const NetworkParams& p, const PartitionScheme& s);

/// P(P_s > x) by Gil-Pelaez inversion of the imaginary moments, x in (0, 1).
double meta_distribution_exact(const NetworkParams& p, const PartitionScheme& s, double x,
                               const MetaControl& ctl = {});

/// Ultrareliable closed form exp(-C_delta (theta / (N eps))^(delta/(1-delta)) lambda^(1/(1-delta))).
double meta_distribution_asymptotic(const NetworkParams& p, const PartitionScheme& s, double eps);

/// lambda * P(P_s > 1 - eps).
double density_reliable(const NetworkParams& p, const PartitionScheme& s, double eps, MdMethod method,
                        const MetaControl& ctl = {});

/// Mean slots to deliver a packet; +inf for N = 1 and on overflow.
ExtendedReal local_delay(const NetworkParams& p, const PartitionScheme& s);

/// local_delay / log2(1 + theta).
ExtendedReal normalized_local_delay(const NetworkParams& p, const PartitionScheme& s);

/// Large-t form exp(-lambda C (theta / N)^delta t^delta / Gamma(1 + delta)).
double moment_large_t_asymptote(const NetworkParams& p, const PartitionScheme& s, double t);

}  // namespace model
}  // namespace bwp
