// SPDX-License-Identifier: Apache-2.0
//
// Seeded, deterministic Monte Carlo estimation of the outage rates, used as
// a simulation oracle for the closed forms and as the only route to the
// multi-coherence-block information outage rate.
//
// Sample stream ("splitmix64-counter"): the uniform variate consumed by
// draw j of trial i under master seed s is
//
//     key  = mix64(s   + (i + 1) * 0x9E3779B97F4A7C15)
//     bits = mix64(key + (j + 1) * 0x9E3779B97F4A7C15)
//     u    = (bits >> 11) * 2^-53                       in [0, 1)
//
// with mix64 the SplitMix64 finalizer. Each variate is a pure function of
// (seed, i, j), so estimates are independent of how the trial index space is
// partitioned across threads: the OpenMP kernels and the serial reference
// produce identical results for any worker count.

#ifndef DEEM_MONTECARLO_HPP
#define DEEM_MONTECARLO_HPP

#include <cstdint>
#include <variant>

#include "deem/metrics.hpp"

namespace deem::mc {

struct OutageEstimate {
    double p_hat = 0.0;     ///< estimated probability
    std::uint64_t n = 0;    ///< sample count
    double std_error = 0.0; ///< sqrt(p_hat*(1-p_hat)/n)
    std::uint64_t seed = 0; ///< reproducibility seed
};

struct SimConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 1; ///< parallelism degree, >= 1; never affects the result
};

using StrategyConfig = std::variant<CraConfig, CpaConfig>;

/// Uniform variate for draw `draw` of trial `trial` (the stream contract
/// documented above).
double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw);

/// Inverse-transform draw from the distribution conditioned on g >= cutoff:
/// quantile at F(cutoff) + u * (1 - F(cutoff)).
double truncated_sample(const FadingModel& model, double cutoff_gain, double u);

/// Empirical P[MEC(data) > threshold]. CPA trials sample the gain
/// conditioned on transmission occurring, matching the conditional closed
/// form.
OutageEstimate estimate_eor(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, DataAmount data, EnergyThreshold threshold,
                            const SimConfig& sim);

/// Empirical P[MID(energy) < threshold]; mirrors estimate_eor.
OutageEstimate estimate_ior(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, EnergyAmount energy,
                            EntropyThreshold threshold, const SimConfig& sim);

/// Empirical P[MID(energy) < threshold] for CRA when the airtime E/P_t spans
/// several coherence blocks; draws ceil(E/(P_t*T_c)) independent per-block
/// gains per trial. Block counts above 10^6 are refused.
OutageEstimate estimate_ior_multiblock(const LinkParams& link, const CraConfig& cra,
                                       const FadingModel& fading, EnergyAmount energy,
                                       double coherence_time_s, EntropyThreshold threshold,
                                       const SimConfig& sim);

/// Serial reference estimators: same per-trial arithmetic as the OpenMP
/// kernels, plain loops. Kept for testing and benchmarking; results are
/// identical by construction.
namespace serial {

OutageEstimate estimate_eor(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, DataAmount data, EnergyThreshold threshold,
                            const SimConfig& sim);

OutageEstimate estimate_ior(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, EnergyAmount energy,
                            EntropyThreshold threshold, const SimConfig& sim);

OutageEstimate estimate_ior_multiblock(const LinkParams& link, const CraConfig& cra,
                                       const FadingModel& fading, EnergyAmount energy,
                                       double coherence_time_s, EntropyThreshold threshold,
                                       const SimConfig& sim);

} // namespace serial

} // namespace deem::mc

#endif
