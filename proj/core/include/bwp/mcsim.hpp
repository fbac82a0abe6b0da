#pragma once

// Monte Carlo reference for the analytic model. Each realization draws the
// interferers of a Poisson bipolar network in a disk around the typical
// receiver and evaluates the conditional success probability with fading and
// sub-band selection averaged out. Realization i uses its own generator
// derived from (seed, stream_id, i), and reductions run in index order, so
// results do not depend on the worker count.

#include <cstdint>
#include <string_view>
#include <vector>

#include "bwp/model.hpp"

namespace bwp {

struct SimConfig {
    double window_radius = 0.0;  // 0 selects the bias rule below; otherwise >= 10
    int realizations = 10000;    // >= 100
    int max_slots = 100000;      // slot cap per realization in slot-count mode
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;
    double bias_tol = 1e-3;      // admissible |ln M_b| shift from the far field, in (0, 1)
    bool far_field_mean = true;  // add far_field_log_mean to every realization; false truncates

    void validate() const;
};

struct RealizationSnapshot {
    std::vector<double> interferer_distances;  // all > 0
    double far_field_log = 0.0;  // far_field_log_mean at the simulated radius, <= 0
    double p_s = 1.0;            // product over interferers times exp(far_field_log)
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(count)
    long count = 0;
    double censored_fraction = 0.0;  // slot-count mode only
    double window_radius = 0.0;      // radius actually simulated
    double bias_bound = 0.0;         // far-field exponent bound at that radius
    bool divergent_model = false;    // analytic value is +inf; estimate is a window artifact
    bool censoring_unreliable = false;  // censored_fraction > 0.01
};

enum class DelayMethod { ConditionalMean, SlotCount };

std::string_view to_string(DelayMethod method);
DelayMethod parse_delay_method(std::string_view text);

namespace mcsim {

/// E[ln P_s] contributed by interferers beyond radius r,
/// 2 pi lambda int_r^inf x ln(1 - (1/N) / (1 + x^alpha / theta)) dx. Every
/// realization adds it to the in-window sum, so the far field enters by its mean.
double far_field_log_mean(const NetworkParams& p, const PartitionScheme& s, double r);

/// Upper bound on |ln E[P_s^b]| lost by replacing the far field with its mean:
/// pi lambda b^2 theta^2 r^(2 - 2 alpha) e^|b q| / (N^2 (2 alpha - 2) (1 - q)^2), q = theta r^-alpha / N.
/// With mean = false, the bound for dropping it: 2 pi lambda |b| theta r^(2 - alpha) / (N (alpha - 2)).
double far_field_bound(const NetworkParams& p, const PartitionScheme& s, double b, double r, bool mean = true);

/// Smallest radius >= 10 whose far_field_bound is <= tol.
double bias_window_radius(const NetworkParams& p, const PartitionScheme& s, double b, double tol, bool mean = true);

/// prod over interferers of 1 - (1/N) / (1 + r^alpha / theta); 1 when empty.
double conditional_success_probability(const std::vector<double>& distances, double theta, int n, double alpha);

/// Interferers of realization `index`; window_radius must be set (non-zero).
RealizationSnapshot sample_realization(const NetworkParams& p, const PartitionScheme& s, const SimConfig& cfg,
                                       std::uint64_t index);

/// Sample mean of P_s^b; the auto window uses |b| (at least 1) in the bias rule.
Estimate estimate_moment(const NetworkParams& p, const PartitionScheme& s, double b, const SimConfig& cfg);

/// Fraction of realizations with P_s > 1 - eps, binomial standard error.
Estimate estimate_meta(const NetworkParams& p, const PartitionScheme& s, double eps, const SimConfig& cfg);

/// Mean slots per delivered packet (N slots per attempt in adaptive-time mode).
Estimate estimate_local_delay(const NetworkParams& p, const PartitionScheme& s, const SimConfig& cfg,
                              DelayMethod method);

}  // namespace mcsim
}  // namespace bwp
