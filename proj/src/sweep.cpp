// SPDX-License-Identifier: Apache-2.0

#include "deem/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "deem/version.hpp"

namespace deem {

namespace {

[[noreturn]] void incomplete(const char* what) {
    throw std::invalid_argument(std::string("sweep spec: ") + what);
}

void check_grid(const SweepGrid& grid) {
    if (grid.points < 2) incomplete("grid needs at least 2 points");
    if (!(std::isfinite(grid.min) && std::isfinite(grid.max) && grid.min < grid.max))
        incomplete("grid needs finite min < max");
    if (grid.log_spacing && grid.min <= 0.0) incomplete("log spacing needs min > 0");
}

bool fading_required(const SweepSpec& spec) {
    return spec.metric == Metric::Eor || spec.metric == Metric::Ior ||
           spec.swept == SweptParam::AvgGainDb || spec.swept == SweptParam::NakagamiM;
}

void check_spec(const SweepSpec& spec) {
    check_grid(spec.grid);
    detail::check_link(spec.link);
    if (fading_required(spec) && !spec.fading) incomplete("fading model required");
    const bool cra = spec.strategy == Strategy::Cra;
    if (cra && spec.swept != SweptParam::TxPowerW && !(spec.tx_power_w > 0.0))
        incomplete("CRA needs tx power");
    if (!cra && spec.swept != SweptParam::TargetSnr && !(spec.target_snr > 0.0))
        incomplete("CPA needs target SNR");
    if (!cra && spec.swept != SweptParam::PeakPowerW && !(spec.peak_power_w > 0.0))
        incomplete("CPA needs peak power");
    switch (spec.metric) {
    case Metric::Eor:
        if (!(spec.data_bits > 0.0)) incomplete("EOR needs the data amount");
        if (spec.swept != SweptParam::EnergyThresholdJ && !(spec.energy_threshold_j > 0.0))
            incomplete("EOR needs the energy threshold");
        break;
    case Metric::Ior:
        if (!(spec.energy_j > 0.0)) incomplete("IOR needs the energy amount");
        if (spec.swept != SweptParam::EntropyThresholdBits &&
            !(spec.entropy_threshold_bits > 0.0))
            incomplete("IOR needs the entropy threshold");
        break;
    case Metric::Mec:
        if (!(spec.data_bits > 0.0)) incomplete("MEC needs the data amount");
        if (!(spec.gain >= 0.0)) incomplete("MEC needs the channel gain");
        break;
    case Metric::Mid:
        if (!(spec.energy_j > 0.0)) incomplete("MID needs the energy amount");
        if (!(spec.gain >= 0.0)) incomplete("MID needs the channel gain");
        break;
    }
}

void apply_swept(SweepSpec& s, double x) {
    switch (s.swept) {
    case SweptParam::EnergyThresholdJ: s.energy_threshold_j = x; break;
    case SweptParam::EntropyThresholdBits: s.entropy_threshold_bits = x; break;
    case SweptParam::TxPowerW: s.tx_power_w = x; break;
    case SweptParam::BandwidthHz: s.link.bandwidth_hz = x; break;
    case SweptParam::TargetSnr: s.target_snr = x; break;
    case SweptParam::PeakPowerW: s.peak_power_w = x; break;
    case SweptParam::AvgGainDb:
        s.fading = (s.fading->kind == Fading::Rayleigh)
                       ? FadingModel::rayleigh(std::pow(10.0, x / 10.0))
                       : FadingModel::nakagami(s.fading->m, std::pow(10.0, x / 10.0));
        break;
    case SweptParam::NakagamiM:
        s.fading = FadingModel::nakagami(x, s.fading->avg_gain);
        break;
    }
}

std::optional<double> evaluate(const SweepSpec& s) {
    const bool cra = s.strategy == Strategy::Cra;
    const CraConfig cra_cfg{s.tx_power_w};
    const CpaConfig cpa_cfg{s.target_snr, s.peak_power_w};
    switch (s.metric) {
    case Metric::Eor:
        return cra ? eor_cra(s.link, cra_cfg, *s.fading, DataAmount{s.data_bits},
                             EnergyThreshold{s.energy_threshold_j})
                   : eor_cpa(s.link, cpa_cfg, *s.fading, DataAmount{s.data_bits},
                             EnergyThreshold{s.energy_threshold_j});
    case Metric::Ior:
        return cra ? ior_cra(s.link, cra_cfg, *s.fading, EnergyAmount{s.energy_j},
                             EntropyThreshold{s.entropy_threshold_bits})
                   : ior_cpa(s.link, cpa_cfg, *s.fading, EnergyAmount{s.energy_j},
                             EntropyThreshold{s.entropy_threshold_bits});
    case Metric::Mec:
        return cra ? std::optional<double>(
                         mec_cra(s.link, cra_cfg, DataAmount{s.data_bits}, s.gain))
                   : mec_cpa(s.link, cpa_cfg, DataAmount{s.data_bits}, s.gain);
    case Metric::Mid:
        return cra ? std::optional<double>(
                         mid_cra_single(s.link, cra_cfg, EnergyAmount{s.energy_j}, s.gain))
                   : mid_cpa(s.link, cpa_cfg, EnergyAmount{s.energy_j}, s.gain);
    }
    incomplete("unknown metric");
}

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

const char* metric_name(Metric m) {
    switch (m) {
    case Metric::Eor: return "eor";
    case Metric::Ior: return "ior";
    case Metric::Mec: return "mec";
    case Metric::Mid: return "mid";
    }
    return "?";
}

} // namespace

const char* swept_param_name(SweptParam p) {
    switch (p) {
    case SweptParam::EnergyThresholdJ: return "E_th";
    case SweptParam::EntropyThresholdBits: return "H_th";
    case SweptParam::TxPowerW: return "p_t";
    case SweptParam::BandwidthHz: return "B";
    case SweptParam::TargetSnr: return "gamma_c";
    case SweptParam::PeakPowerW: return "p_max";
    case SweptParam::AvgGainDb: return "avg_gain_db";
    case SweptParam::NakagamiM: return "m";
    }
    return "?";
}

double grid_value(const SweepGrid& grid, int i) {
    const double frac = static_cast<double>(i) / (grid.points - 1);
    if (grid.log_spacing) {
        return std::exp(std::log(grid.min) + frac * (std::log(grid.max) - std::log(grid.min)));
    }
    return grid.min + frac * (grid.max - grid.min);
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
    check_spec(spec);
    std::vector<SweepPoint> points;
    points.reserve(spec.grid.points);
    for (int i = 0; i < spec.grid.points; ++i) {
        SweepSpec at = spec;
        const double x = grid_value(spec.grid, i);
        apply_swept(at, x);
        points.push_back(SweepPoint{x, evaluate(at)});
    }
    return points;
}

void write_csv(std::ostream& out, const SweepSpec& spec, std::span<const SweepPoint> points) {
    out << "# tool=deem " << kVersion << "\n";
    out << "# metric=" << metric_name(spec.metric)
        << " strategy=" << (spec.strategy == Strategy::Cra ? "cra" : "cpa") << "\n";
    out << "# swept=" << swept_param_name(spec.swept)
        << " spacing=" << (spec.grid.log_spacing ? "log" : "linear") << " min=";
    put(out, spec.grid.min);
    out << " max=";
    put(out, spec.grid.max);
    out << " points=" << spec.grid.points << "\n";
    out << "# B_hz=";
    put(out, spec.link.bandwidth_hz);
    out << " N0_w_per_hz=";
    put(out, spec.link.noise_density_w_per_hz);
    out << "\n";
    if (spec.fading) {
        out << "# fading=" << (spec.fading->kind == Fading::Rayleigh ? "rayleigh" : "nakagami")
            << " avg_gain=";
        put(out, spec.fading->avg_gain);
        out << " m=";
        put(out, spec.fading->m);
        out << "\n";
    }
    out << "#";
    if (spec.strategy == Strategy::Cra && spec.tx_power_w > 0.0) {
        out << " Pt_w=";
        put(out, spec.tx_power_w);
    }
    if (spec.strategy == Strategy::Cpa) {
        if (spec.target_snr > 0.0) {
            out << " gamma_c=";
            put(out, spec.target_snr);
        }
        if (spec.peak_power_w > 0.0) {
            out << " Pmax_w=";
            put(out, spec.peak_power_w);
        }
    }
    if (spec.data_bits > 0.0) {
        out << " H_bits=";
        put(out, spec.data_bits);
    }
    if (spec.energy_j > 0.0) {
        out << " E_j=";
        put(out, spec.energy_j);
    }
    if (spec.energy_threshold_j > 0.0 && spec.swept != SweptParam::EnergyThresholdJ) {
        out << " Eth_j=";
        put(out, spec.energy_threshold_j);
    }
    if (spec.entropy_threshold_bits > 0.0 && spec.swept != SweptParam::EntropyThresholdBits) {
        out << " Hth_bits=";
        put(out, spec.entropy_threshold_bits);
    }
    if (spec.gain >= 0.0) {
        out << " g=";
        put(out, spec.gain);
    }
    out << "\n";
    out << "swept_param,value\n";
    for (const SweepPoint& p : points) {
        put(out, p.x);
        out << ",";
        if (p.value) {
            put(out, *p.value);
        } else {
            out << "HELD";
        }
        out << "\n";
    }
}

} // namespace deem
