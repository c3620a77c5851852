// SPDX-License-Identifier: Apache-2.0
//
// Parameter-sweep engine: one swept parameter over a grid, everything else
// fixed, one CSV curve out. Output is deterministic and byte-identical for
// identical inputs.

#ifndef DEEM_SWEEP_HPP
#define DEEM_SWEEP_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deem/fading.hpp"
#include "deem/link.hpp"
#include "deem/metrics.hpp"

namespace deem {

enum class Metric { Eor, Ior, Mec, Mid };
enum class Strategy { Cra, Cpa };

enum class SweptParam {
    EnergyThresholdJ, ///< E_th
    EntropyThresholdBits, ///< H_th
    TxPowerW,   ///< P_t (CRA)
    BandwidthHz,
    TargetSnr,  ///< gamma_c (CPA)
    PeakPowerW, ///< P_max (CPA)
    AvgGainDb,  ///< average gain axis in dB, applied to the fading model
    NakagamiM,
};

struct SweepGrid {
    double min = 0.0;
    double max = 0.0;
    int points = 0;       ///< >= 2
    bool log_spacing = false;
};

/// Full description of one sweep. Fixed fields irrelevant to the chosen
/// metric may stay unset; the swept parameter may be one the formula ignores
/// (the column is then constant).
struct SweepSpec {
    Metric metric = Metric::Eor;
    Strategy strategy = Strategy::Cra;
    SweptParam swept = SweptParam::EnergyThresholdJ;
    SweepGrid grid;

    LinkParams link;
    std::optional<FadingModel> fading; ///< required for EOR/IOR and fading sweeps
    double tx_power_w = 0.0;           ///< CRA
    double target_snr = 0.0;           ///< CPA
    double peak_power_w = 0.0;         ///< CPA
    double data_bits = 0.0;            ///< H (EOR, MEC)
    double energy_j = 0.0;             ///< E (IOR, MID)
    double energy_threshold_j = 0.0;   ///< E_th (EOR, unless swept)
    double entropy_threshold_bits = 0.0; ///< H_th (IOR, unless swept)
    double gain = -1.0;                ///< g (MEC, MID point metrics)
};

/// One evaluated grid point; value is std::nullopt when CPA holds.
struct SweepPoint {
    double x = 0.0;
    std::optional<double> value;
};

/// Canonical name of a swept parameter (used in CSV metadata and the CLI).
const char* swept_param_name(SweptParam p);

/// Grid value at index i (linear or log spacing over [min, max]).
double grid_value(const SweepGrid& grid, int i);

/// Validates the spec and evaluates the metric at every grid point.
/// Throws std::invalid_argument for an incomplete or inconsistent spec and
/// propagates domain errors from the metric evaluation.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

/// Writes the curve as CSV: `#` metadata comments (tool version, resolved
/// parameters in SI units), a `swept_param,value` header row, then one row
/// per grid point at 17 significant digits. HELD points print the token
/// HELD in the value column.
void write_csv(std::ostream& out, const SweepSpec& spec, std::span<const SweepPoint> points);

} // namespace deem

#endif
