// SPDX-License-Identifier: Apache-2.0
//
// Closed-form data-oriented energy-efficiency metrics for two adaptive
// transmission strategies over a fading link:
//
//   CRA  continuous rate adaptation at constant transmit power; the rate
//        tracks the channel at the Shannon limit.
//   CPA  continuous power adaptation (truncated channel inversion); the
//        power holds the received SNR at a target under a peak constraint,
//        and transmission is held while the gain sits below the cutoff.
//
// Metrics: MEC (minimum energy to move a data amount), MID (maximum data
// a given energy can move), and their outage rates EOR / IOR over the
// fading distribution. All functions are pure.

#ifndef DEEM_METRICS_HPP
#define DEEM_METRICS_HPP

#include <optional>
#include <span>
#include <stdexcept>

#include "deem/fading.hpp"
#include "deem/link.hpp"

namespace deem {

/// CRA: constant transmit power.
struct CraConfig {
    double tx_power_w = 0.0; ///< P_t, > 0
};

/// CPA: constant received SNR under a peak power constraint.
struct CpaConfig {
    double target_snr = 0.0;   ///< linear, > 0
    double peak_power_w = 0.0; ///< > 0

    /// Cutoff gain below which transmission is held:
    /// target_snr * N0 * B / peak_power.
    double cutoff_gain(const LinkParams& link) const;
};

// Thin semantic wrappers; all strictly positive and finite.
struct DataAmount {
    double bits;
};
struct EnergyAmount {
    double joules;
};
struct EnergyThreshold {
    double joules;
};
struct EntropyThreshold {
    double bits;
};

/// Peak power cannot reach the target SNR under this fading model:
/// the whole gain distribution sits below the cutoff.
class degenerate_cutoff_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A single-coherence-time formula was asked to cover more than one block.
class coherence_regime_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// --- minimum energy consumption -------------------------------------------

/// Energy to move `data` bits at gain `g` with CRA: P_t * H / rate.
/// Returns +infinity when g == 0 (no rate, the energy demand diverges).
double mec_cra(const LinkParams& link, const CraConfig& cra, DataAmount data, double gain);

/// Energy to move `data` bits with CPA when gain >= cutoff; std::nullopt
/// when the transmitter holds (gain below cutoff).
std::optional<double> mec_cpa(const LinkParams& link, const CpaConfig& cpa, DataAmount data,
                              double gain);

// --- energy outage rate ----------------------------------------------------

/// P[MEC(data) > threshold] with CRA over the fading distribution.
/// Saturates to exactly 1.0 for thresholds small enough to overflow the
/// intermediate exponential.
double eor_cra(const LinkParams& link, const CraConfig& cra, const FadingModel& fading,
               DataAmount data, EnergyThreshold threshold);

/// P[MEC(data) > threshold | transmission occurs] with CPA, clamped to [0, 1].
/// Throws degenerate_cutoff_error when the cutoff swallows the whole
/// distribution.
double eor_cpa(const LinkParams& link, const CpaConfig& cpa, const FadingModel& fading,
               DataAmount data, EnergyThreshold threshold);

// --- maximum information delivery ------------------------------------------

/// Bits deliverable with `energy` at gain `g` under CRA within one coherence
/// time: (E/P_t) * rate. Pass the coherence time to enforce the
/// single-block regime (throws coherence_regime_error if E/P_t exceeds it;
/// use mid_cra_multi instead).
double mid_cra_single(const LinkParams& link, const CraConfig& cra, EnergyAmount energy,
                      double gain, std::optional<double> coherence_time_s = std::nullopt);

/// Bits deliverable when the airtime E/P_t spans several coherence blocks
/// with independent per-block gains: full blocks at T_c plus a fractional
/// remainder block. Needs ceil(E/(P_t*T_c)) gains. Equals mid_cra_single
/// when the airtime fits in one block.
double mid_cra_multi(const LinkParams& link, const CraConfig& cra, EnergyAmount energy,
                     std::span<const double> gains, double coherence_time_s);

/// Bits deliverable with CPA when gain >= cutoff; std::nullopt when held.
std::optional<double> mid_cpa(const LinkParams& link, const CpaConfig& cpa, EnergyAmount energy,
                              double gain, std::optional<double> coherence_time_s = std::nullopt);

// --- information outage rate -------------------------------------------------

/// P[MID(energy) < threshold] with CRA (single-coherence-block regime).
/// Identical expression to eor_cra under (data, energy-threshold) ->
/// (entropy-threshold, energy); the implementations share one path so the
/// identity is bit-exact.
double ior_cra(const LinkParams& link, const CraConfig& cra, const FadingModel& fading,
               EnergyAmount energy, EntropyThreshold threshold);

/// P[MID(energy) < threshold | transmission occurs] with CPA, clamped to [0, 1].
double ior_cpa(const LinkParams& link, const CpaConfig& cpa, const FadingModel& fading,
               EnergyAmount energy, EntropyThreshold threshold);

} // namespace deem

#endif
