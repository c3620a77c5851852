// SPDX-License-Identifier: Apache-2.0

#include "deem/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deem::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kMaxBlocks = 1'000'000;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

void check_sim(const SimConfig& sim) {
    if (sim.n_samples < 1) {
        throw std::domain_error("sim: need at least one sample");
    }
    if (sim.workers < 1) {
        throw std::domain_error("sim: workers must be >= 1");
    }
}

OutageEstimate finish(std::uint64_t hits, const SimConfig& sim) {
    const double n = static_cast<double>(sim.n_samples);
    const double p = static_cast<double>(hits) / n;
    return OutageEstimate{p, sim.n_samples, std::sqrt(p * (1.0 - p) / n), sim.seed};
}

// Counts trials where `trial` returns true. The OpenMP driver and the serial
// driver share the per-trial functor, so they agree bit for bit; the count is
// an integer sum of per-trial indicators, so the OpenMP schedule cannot
// affect it either.
template <typename Trial>
std::uint64_t count_hits_parallel(const SimConfig& sim, const Trial& trial) {
    std::uint64_t hits = 0;
    const auto n = static_cast<long long>(sim.n_samples);
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : hits) num_threads(sim.workers) schedule(static)
#endif
    for (long long i = 0; i < n; ++i) {
        hits += trial(static_cast<std::uint64_t>(i)) ? 1 : 0;
    }
    return hits;
}

template <typename Trial>
std::uint64_t count_hits_serial(const SimConfig& sim, const Trial& trial) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < sim.n_samples; ++i) {
        hits += trial(i) ? 1 : 0;
    }
    return hits;
}

struct CpaSampler {
    double cutoff = 0.0;
    double f_cut = 0.0;
};

// Prepares the conditional-sampling state for CPA (and checks the cutoff is
// not degenerate, mirroring the closed forms).
CpaSampler prepare_cpa(const CpaConfig& cpa, const LinkParams& link, const FadingModel& fading) {
    const double cutoff = cpa.cutoff_gain(link);
    const double f_cut = cdf(fading, cutoff);
    if (f_cut >= 1.0) {
        throw degenerate_cutoff_error("cutoff gain swallows the whole fading distribution; "
                                      "raise peak power or lower the target SNR");
    }
    return CpaSampler{cutoff, f_cut};
}

// Inverse transform on the distribution conditioned on g >= cutoff. The
// quantile round trip can land an ulp below the cutoff; the support starts
// at the cutoff, so clamp up.
double truncated_quantile(const FadingModel& fading, double cutoff, double f_cut, double u) {
    double shifted = f_cut + u * (1.0 - f_cut);
    if (shifted >= 1.0) {
        shifted = std::nextafter(1.0, 0.0);
    }
    const double g = quantile(fading, shifted);
    return g < cutoff ? cutoff : g;
}

// Shared EOR/IOR estimator body: `Outcome` maps one sampled gain to the
// per-trial metric value, `Event` decides whether that value counts as an
// outage.
template <typename Outcome>
OutageEstimate estimate_outage(const StrategyConfig& strategy, const LinkParams& link,
                               const FadingModel& fading, const SimConfig& sim,
                               const Outcome& outcome, bool parallel) {
    check_sim(sim);
    std::uint64_t hits = 0;
    if (const auto* cra = std::get_if<CraConfig>(&strategy)) {
        auto trial = [&](std::uint64_t i) {
            const double g = quantile(fading, stream_uniform(sim.seed, i, 0));
            return outcome(*cra, g);
        };
        hits = parallel ? count_hits_parallel(sim, trial) : count_hits_serial(sim, trial);
    } else {
        const auto& cpa = std::get<CpaConfig>(strategy);
        const CpaSampler sampler = prepare_cpa(cpa, link, fading);
        auto trial = [&](std::uint64_t i) {
            const double g = truncated_quantile(fading, sampler.cutoff, sampler.f_cut,
                                                stream_uniform(sim.seed, i, 0));
            return outcome(cpa, g);
        };
        hits = parallel ? count_hits_parallel(sim, trial) : count_hits_serial(sim, trial);
    }
    return finish(hits, sim);
}

OutageEstimate eor_impl(const StrategyConfig& strategy, const LinkParams& link,
                        const FadingModel& fading, DataAmount data, EnergyThreshold threshold,
                        const SimConfig& sim, bool parallel) {
    if (!(std::isfinite(threshold.joules) && threshold.joules > 0.0)) {
        throw std::domain_error("estimate_eor: energy threshold must be finite and > 0");
    }
    auto outcome = [&](const auto& cfg, double g) {
        using Cfg = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<Cfg, CraConfig>) {
            return mec_cra(link, cfg, data, g) > threshold.joules;
        } else {
            // Conditional sampling keeps g at or above the cutoff.
            return *mec_cpa(link, cfg, data, g) > threshold.joules;
        }
    };
    return estimate_outage(strategy, link, fading, sim, outcome, parallel);
}

OutageEstimate ior_impl(const StrategyConfig& strategy, const LinkParams& link,
                        const FadingModel& fading, EnergyAmount energy, EntropyThreshold threshold,
                        const SimConfig& sim, bool parallel) {
    if (!(std::isfinite(threshold.bits) && threshold.bits > 0.0)) {
        throw std::domain_error("estimate_ior: entropy threshold must be finite and > 0");
    }
    auto outcome = [&](const auto& cfg, double g) {
        using Cfg = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<Cfg, CraConfig>) {
            return mid_cra_single(link, cfg, energy, g) < threshold.bits;
        } else {
            return *mid_cpa(link, cfg, energy, g) < threshold.bits;
        }
    };
    return estimate_outage(strategy, link, fading, sim, outcome, parallel);
}

std::uint64_t blocks_needed(const CraConfig& cra, EnergyAmount energy, double coherence_time_s) {
    const double airtime = energy.joules / cra.tx_power_w;
    const double ratio = airtime / coherence_time_s;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw std::domain_error("multiblock: airtime must be finite and > 0");
    }
    const double full = std::floor(ratio);
    const double needed = full + (ratio > full ? 1.0 : 0.0);
    if (needed > static_cast<double>(kMaxBlocks)) {
        throw std::length_error("multiblock: block count exceeds 10^6");
    }
    return needed < 1.0 ? 1 : static_cast<std::uint64_t>(needed);
}

OutageEstimate ior_multiblock_impl(const LinkParams& link, const CraConfig& cra,
                                   const FadingModel& fading, EnergyAmount energy,
                                   double coherence_time_s, EntropyThreshold threshold,
                                   const SimConfig& sim, bool parallel) {
    check_sim(sim);
    if (!(std::isfinite(threshold.bits) && threshold.bits >= 0.0)) {
        throw std::domain_error("multiblock: entropy threshold must be finite and >= 0");
    }
    if (!(std::isfinite(coherence_time_s) && coherence_time_s > 0.0)) {
        throw std::domain_error("multiblock: coherence time must be finite and > 0");
    }
    const std::uint64_t n_blocks = blocks_needed(cra, energy, coherence_time_s);
    std::uint64_t hits = 0;

    auto run = [&](auto&& counter) {
        std::vector<double> gains(n_blocks);
        auto trial = [&](std::uint64_t i) {
            for (std::uint64_t j = 0; j < n_blocks; ++j) {
                gains[j] = quantile(fading, stream_uniform(sim.seed, i, j));
            }
            return mid_cra_multi(link, cra, energy, gains, coherence_time_s) < threshold.bits;
        };
        return counter(trial);
    };

    if (parallel) {
#ifdef _OPENMP
        const auto n = static_cast<long long>(sim.n_samples);
#pragma omp parallel num_threads(sim.workers) reduction(+ : hits)
        {
            std::vector<double> gains(n_blocks);
#pragma omp for schedule(static)
            for (long long i = 0; i < n; ++i) {
                const auto trial = static_cast<std::uint64_t>(i);
                for (std::uint64_t j = 0; j < n_blocks; ++j) {
                    gains[j] = quantile(fading, stream_uniform(sim.seed, trial, j));
                }
                if (mid_cra_multi(link, cra, energy, gains, coherence_time_s) < threshold.bits) {
                    hits += 1;
                }
            }
        }
#else
        hits = run([&](auto& trial) { return count_hits_serial(sim, trial); });
#endif
    } else {
        hits = run([&](auto& trial) { return count_hits_serial(sim, trial); });
    }
    return finish(hits, sim);
}

} // namespace

double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
    const std::uint64_t key = mix64(seed + (trial + 1) * kGolden);
    return to_unit(mix64(key + (draw + 1) * kGolden));
}

double truncated_sample(const FadingModel& model, double cutoff_gain, double u) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::domain_error("truncated_sample: u must lie in [0, 1)");
    }
    return truncated_quantile(model, cutoff_gain, cdf(model, cutoff_gain), u);
}

OutageEstimate estimate_eor(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, DataAmount data, EnergyThreshold threshold,
                            const SimConfig& sim) {
    return eor_impl(strategy, link, fading, data, threshold, sim, true);
}

OutageEstimate estimate_ior(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, EnergyAmount energy,
                            EntropyThreshold threshold, const SimConfig& sim) {
    return ior_impl(strategy, link, fading, energy, threshold, sim, true);
}

OutageEstimate estimate_ior_multiblock(const LinkParams& link, const CraConfig& cra,
                                       const FadingModel& fading, EnergyAmount energy,
                                       double coherence_time_s, EntropyThreshold threshold,
                                       const SimConfig& sim) {
    return ior_multiblock_impl(link, cra, fading, energy, coherence_time_s, threshold, sim, true);
}

namespace serial {

OutageEstimate estimate_eor(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, DataAmount data, EnergyThreshold threshold,
                            const SimConfig& sim) {
    return eor_impl(strategy, link, fading, data, threshold, sim, false);
}

OutageEstimate estimate_ior(const StrategyConfig& strategy, const LinkParams& link,
                            const FadingModel& fading, EnergyAmount energy,
                            EntropyThreshold threshold, const SimConfig& sim) {
    return ior_impl(strategy, link, fading, energy, threshold, sim, false);
}

OutageEstimate estimate_ior_multiblock(const LinkParams& link, const CraConfig& cra,
                                       const FadingModel& fading, EnergyAmount energy,
                                       double coherence_time_s, EntropyThreshold threshold,
                                       const SimConfig& sim) {
    return ior_multiblock_impl(link, cra, fading, energy, coherence_time_s, threshold, sim, false);
}

} // namespace serial

} // namespace deem::mc
