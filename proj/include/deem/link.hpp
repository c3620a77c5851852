// SPDX-License-Identifier: Apache-2.0

#ifndef DEEM_LINK_HPP
#define DEEM_LINK_HPP

#include <cmath>
#include <stdexcept>

namespace deem {

/// Point-to-point link budget parameters.
struct LinkParams {
    double bandwidth_hz = 0.0;          ///< B, > 0
    double noise_density_w_per_hz = 0.0; ///< N0, > 0

    double noise_power_w() const { return bandwidth_hz * noise_density_w_per_hz; }
};

namespace detail {
inline void check_link(const LinkParams& link) {
    if (!(std::isfinite(link.bandwidth_hz) && link.bandwidth_hz > 0.0) ||
        !(std::isfinite(link.noise_density_w_per_hz) && link.noise_density_w_per_hz > 0.0)) {
        throw std::domain_error("link: bandwidth and noise density must be finite and > 0");
    }
}
} // namespace detail

/// Received SNR p_t*g / (N0*B), linear.
inline double snr(const LinkParams& link, double tx_power_w, double gain) {
    detail::check_link(link);
    if (!(std::isfinite(tx_power_w) && tx_power_w >= 0.0) ||
        !(std::isfinite(gain) && gain >= 0.0)) {
        throw std::domain_error("snr: power and gain must be finite and >= 0");
    }
    return tx_power_w * gain / link.noise_power_w();
}

/// Shannon-limit instantaneous rate B*log2(1 + snr) in bits/s; 0 when gain is 0.
inline double shannon_rate(const LinkParams& link, double tx_power_w, double gain) {
    return link.bandwidth_hz * std::log2(1.0 + snr(link, tx_power_w, gain));
}

} // namespace deem

#endif
