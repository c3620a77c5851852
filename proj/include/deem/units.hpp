// SPDX-License-Identifier: Apache-2.0
//
// Unit-suffixed quantity parsing for the CLI boundary. Library-level values
// are always SI (linear gains, bits, joules, hertz, watts); this is the one
// place dB and decimal data multiples are converted.
//
// Accepted suffixes: dB (gains and SNRs), kB / MB / bits (data, decimal,
// 8 bits per byte), J / mJ / uJ, Hz / kHz / MHz, W / mW, s / ms / us.
// Bare numbers are taken as SI.

#ifndef DEEM_UNITS_HPP
#define DEEM_UNITS_HPP

#include <string_view>

namespace deem {

enum class Quantity {
    Gain,      ///< linear power gain; dB accepted
    Snr,       ///< linear SNR; dB accepted
    DataBits,  ///< bits; kB/MB/bits accepted
    EnergyJ,   ///< joules; J/mJ/uJ accepted
    FrequencyHz, ///< hertz; Hz/kHz/MHz accepted
    PowerW,    ///< watts; W/mW accepted
    TimeS,     ///< seconds; s/ms/us accepted
    Bare,      ///< dimensionless; no suffix allowed
};

/// Parses `text` (e.g. "-10dB", "50kB", "80mJ", "200kHz", "0.2W", "1e-9")
/// into the SI value for `kind`. Sub-unit scaling divides by exact powers of
/// ten so round trips like 80mJ -> 0.08 J are exact.
/// Throws std::invalid_argument on malformed input or a suffix that does not
/// fit the quantity kind.
double parse_quantity(std::string_view text, Quantity kind);

} // namespace deem

#endif
