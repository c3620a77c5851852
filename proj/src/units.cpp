// SPDX-License-Identifier: Apache-2.0

#include "deem/units.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace deem {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view text, const char* why) {
    throw std::invalid_argument("cannot parse quantity '" + std::string(text) + "': " + why);
}

// Scaling divides by exact powers of ten where the factor is fractional, so
// 80mJ parses to the correctly rounded 0.08.
double apply_suffix(double v, std::string_view suffix, Quantity kind, std::string_view text) {
    if (suffix.empty()) {
        return v; // bare numbers are SI
    }
    switch (kind) {
    case Quantity::Gain:
    case Quantity::Snr:
        if (suffix == "dB") return std::pow(10.0, v / 10.0);
        break;
    case Quantity::DataBits:
        if (suffix == "bits" || suffix == "bit") return v;
        if (suffix == "kB") return v * 8000.0;
        if (suffix == "MB") return v * 8e6;
        break;
    case Quantity::EnergyJ:
        if (suffix == "J") return v;
        if (suffix == "mJ") return v / 1e3;
        if (suffix == "uJ") return v / 1e6;
        break;
    case Quantity::FrequencyHz:
        if (suffix == "Hz") return v;
        if (suffix == "kHz") return v * 1e3;
        if (suffix == "MHz") return v * 1e6;
        break;
    case Quantity::PowerW:
        if (suffix == "W") return v;
        if (suffix == "mW") return v / 1e3;
        break;
    case Quantity::TimeS:
        if (suffix == "s") return v;
        if (suffix == "ms") return v / 1e3;
        if (suffix == "us") return v / 1e6;
        break;
    case Quantity::Bare:
        break;
    }
    bad(text, "suffix does not fit the expected quantity");
}

} // namespace

double parse_quantity(std::string_view text, Quantity kind) {
    const std::string_view trimmed = trim(text);
    if (trimmed.empty()) {
        bad(text, "empty");
    }
    const std::string buf(trimmed);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) {
        bad(text, "no leading number");
    }
    const double result = apply_suffix(v, trim(std::string_view(end)), kind, text);
    if (std::isnan(result)) {
        bad(text, "not a number");
    }
    return result;
}

} // namespace deem
