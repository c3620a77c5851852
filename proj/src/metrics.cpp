// SPDX-License-Identifier: Apache-2.0

#include "deem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace deem {

namespace {

// ln(DBL_MAX) is ~709.78; past this the outage exponential overflows and the
// probability has analytically saturated.
constexpr double kExpSaturation = 709.0;

void check_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be finite and > 0");
    }
}

void check_gain(double gain) {
    if (std::isnan(gain) || std::isinf(gain) || gain < 0.0) {
        throw std::domain_error("gain must be finite and >= 0");
    }
}

void check_cra(const CraConfig& cra) { check_positive(cra.tx_power_w, "tx power"); }

void check_cpa(const CpaConfig& cpa) {
    check_positive(cpa.target_snr, "target SNR");
    check_positive(cpa.peak_power_w, "peak power");
}

// Shared conditional outage form for CPA: both EOR and IOR reduce to
// P[g < a | g >= g_T] with a = gamma_c*N0*X/(Y*log2(1+gamma_c)).
double cpa_conditional_outage(const LinkParams& link, const CpaConfig& cpa,
                              const FadingModel& fading, double numerator_bits,
                              double denominator) {
    detail::check_link(link);
    check_cpa(cpa);
    const double cutoff = cpa.cutoff_gain(link);
    const double f_cut = cdf(fading, cutoff);
    if (f_cut >= 1.0) {
        throw degenerate_cutoff_error("cutoff gain swallows the whole fading distribution; "
                                      "raise peak power or lower the target SNR");
    }
    const double a = cpa.target_snr * link.noise_density_w_per_hz * numerator_bits /
                     (denominator * std::log2(1.0 + cpa.target_snr));
    const double raw = (cdf(fading, a) - f_cut) / (1.0 - f_cut);
    return std::clamp(raw, 0.0, 1.0);
}

// Shared CRA outage form: P[g < (N0*B/P_t)*(exp(ln2*bits*P_t/(B*joules)) - 1)].
double cra_outage(const LinkParams& link, const CraConfig& cra, const FadingModel& fading,
                  double bits, double joules) {
    detail::check_link(link);
    check_cra(cra);
    const double t =
        std::numbers::ln2 * bits * cra.tx_power_w / (link.bandwidth_hz * joules);
    if (t >= kExpSaturation) {
        return 1.0;
    }
    const double arg = link.noise_power_w() / cra.tx_power_w * std::expm1(t);
    if (!std::isfinite(arg)) {
        return 1.0;
    }
    return cdf(fading, arg);
}

} // namespace

double CpaConfig::cutoff_gain(const LinkParams& link) const {
    detail::check_link(link);
    check_cpa(*this);
    return target_snr * link.noise_power_w() / peak_power_w;
}

double mec_cra(const LinkParams& link, const CraConfig& cra, DataAmount data, double gain) {
    check_cra(cra);
    check_positive(data.bits, "data amount");
    check_gain(gain);
    if (gain == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return cra.tx_power_w * data.bits / shannon_rate(link, cra.tx_power_w, gain);
}

std::optional<double> mec_cpa(const LinkParams& link, const CpaConfig& cpa, DataAmount data,
                              double gain) {
    check_positive(data.bits, "data amount");
    check_gain(gain);
    if (gain < cpa.cutoff_gain(link)) {
        return std::nullopt;
    }
    return cpa.target_snr * link.noise_density_w_per_hz / gain * data.bits /
           std::log2(1.0 + cpa.target_snr);
}

double eor_cra(const LinkParams& link, const CraConfig& cra, const FadingModel& fading,
               DataAmount data, EnergyThreshold threshold) {
    check_positive(data.bits, "data amount");
    check_positive(threshold.joules, "energy threshold");
    return cra_outage(link, cra, fading, data.bits, threshold.joules);
}

double eor_cpa(const LinkParams& link, const CpaConfig& cpa, const FadingModel& fading,
               DataAmount data, EnergyThreshold threshold) {
    check_positive(data.bits, "data amount");
    check_positive(threshold.joules, "energy threshold");
    return cpa_conditional_outage(link, cpa, fading, data.bits, threshold.joules);
}

double mid_cra_single(const LinkParams& link, const CraConfig& cra, EnergyAmount energy,
                      double gain, std::optional<double> coherence_time_s) {
    check_cra(cra);
    check_positive(energy.joules, "energy amount");
    check_gain(gain);
    const double airtime = energy.joules / cra.tx_power_w;
    if (coherence_time_s && airtime > *coherence_time_s) {
        throw coherence_regime_error(
            "airtime E/P_t exceeds the coherence time; use mid_cra_multi");
    }
    return airtime * shannon_rate(link, cra.tx_power_w, gain);
}

double mid_cra_multi(const LinkParams& link, const CraConfig& cra, EnergyAmount energy,
                     std::span<const double> gains, double coherence_time_s) {
    check_cra(cra);
    check_positive(energy.joules, "energy amount");
    check_positive(coherence_time_s, "coherence time");
    if (gains.empty()) {
        throw std::domain_error("mid_cra_multi: need at least one per-block gain");
    }
    const double airtime = energy.joules / cra.tx_power_w;
    if (airtime <= coherence_time_s) {
        return mid_cra_single(link, cra, energy, gains.front());
    }
    const auto full_blocks = static_cast<std::size_t>(std::floor(airtime / coherence_time_s));
    const double remainder = airtime - static_cast<double>(full_blocks) * coherence_time_s;
    const std::size_t needed = full_blocks + (remainder > 0.0 ? 1 : 0);
    if (gains.size() < needed) {
        throw std::domain_error("mid_cra_multi: need ceil(E/(P_t*T_c)) per-block gains");
    }
    double bits = 0.0;
    for (std::size_t i = 0; i < full_blocks; ++i) {
        bits += coherence_time_s * shannon_rate(link, cra.tx_power_w, gains[i]);
    }
    if (remainder > 0.0) {
        bits += remainder * shannon_rate(link, cra.tx_power_w, gains[full_blocks]);
    }
    return bits;
}

std::optional<double> mid_cpa(const LinkParams& link, const CpaConfig& cpa, EnergyAmount energy,
                              double gain, std::optional<double> coherence_time_s) {
    check_positive(energy.joules, "energy amount");
    check_gain(gain);
    if (gain < cpa.cutoff_gain(link)) {
        return std::nullopt;
    }
    if (coherence_time_s &&
        energy.joules * gain / (cpa.target_snr * link.noise_power_w()) >= *coherence_time_s) {
        throw coherence_regime_error("transmission would outlast the coherence time");
    }
    return energy.joules * gain / (cpa.target_snr * link.noise_density_w_per_hz) *
           std::log2(1.0 + cpa.target_snr);
}

double ior_cra(const LinkParams& link, const CraConfig& cra, const FadingModel& fading,
               EnergyAmount energy, EntropyThreshold threshold) {
    // Same expression as eor_cra under the argument swap, so the duality is
    // bit-exact by construction.
    check_positive(energy.joules, "energy amount");
    check_positive(threshold.bits, "entropy threshold");
    return cra_outage(link, cra, fading, threshold.bits, energy.joules);
}

double ior_cpa(const LinkParams& link, const CpaConfig& cpa, const FadingModel& fading,
               EnergyAmount energy, EntropyThreshold threshold) {
    check_positive(energy.joules, "energy amount");
    check_positive(threshold.bits, "entropy threshold");
    return cpa_conditional_outage(link, cpa, fading, threshold.bits, energy.joules);
}

} // namespace deem
