// SPDX-License-Identifier: Apache-2.0
//
// deem: data-oriented energy-efficiency metrics for adaptive wireless
// transmission over fading channels.
//
//   deem eval   --metric eor --strategy cra --fading rayleigh --gbar -10dB
//               --B 200kHz --Pt 0.2W --H 50kB --Eth 0.05J
//   deem sweep  --metric eor --strategy cra --sweep Eth --min 10mJ --max 1J
//               --points 50 --spacing log ... --out curve.csv
//   deem verify --metric ior --strategy cpa ... --n 1000000 --seed 42
//
// Exit codes: 0 success (including HELD), 1 domain or I/O error, 2 usage
// error, 3 verify mismatch.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "deem/metrics.hpp"
#include "deem/montecarlo.hpp"
#include "deem/sweep.hpp"
#include "deem/units.hpp"
#include "deem/version.hpp"

using namespace deem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFail = 3;

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const char* kUsage =
    "usage: deem <eval|sweep|verify> [--flag value | --flag=value]...\n"
    "\n"
    "common flags\n"
    "  --metric eor|ior|mec|mid      metric to compute\n"
    "  --strategy cra|cpa            transmission strategy\n"
    "  --B <freq>                    channel bandwidth (Hz/kHz/MHz)\n"
    "  --N0 <W/Hz>                   noise spectral density [default 1e-9]\n"
    "  --fading rayleigh|nakagami    gain distribution (EOR/IOR, verify)\n"
    "  --gbar <gain>                 average power gain (linear or dB)\n"
    "  --m <shape>                   Nakagami shape, in [0.5, 50]\n"
    "  --Pt <power>                  CRA transmit power (W/mW)\n"
    "  --gammac <snr>                CPA target received SNR (linear or dB)\n"
    "  --Pmax <power>                CPA peak transmit power\n"
    "  --H <data>                    data amount (bits/kB/MB)\n"
    "  --Eth <energy>                energy threshold (J/mJ/uJ)\n"
    "  --E <energy>                  available energy\n"
    "  --Hth <data>                  entropy threshold\n"
    "  --g <gain>                    channel power gain (MEC/MID)\n"
    "  --Tc <seconds>                coherence time (optional regime check)\n"
    "  --config <file>               key=value file mirroring flag names;\n"
    "                                flags override the file\n"
    "\n"
    "sweep flags\n"
    "  --sweep Eth|Hth|Pt|B|gammac|Pmax|avg_gain_db|m\n"
    "  --min <value> --max <value> --points <n> [--spacing linear|log]\n"
    "  --out <path>                  CSV output path\n"
    "\n"
    "verify flags\n"
    "  --n <samples> [default 1000000]  --seed <u64> [default 1]\n"
    "  --workers <n> [default: hardware threads]\n";

using FlagMap = std::map<std::string, std::string>;

const std::set<std::string> kKnownFlags = {
    "metric", "strategy", "B",      "N0",  "fading", "gbar", "m",     "Pt",
    "gammac", "Pmax",     "H",      "Eth", "E",      "Hth",  "g",     "Tc",
    "config", "sweep",    "min",    "max", "points", "spacing", "out",
    "n",      "seed",     "workers"};

FlagMap parse_flags(int argc, char** argv, int first) {
    FlagMap flags;
    for (int i = first; i < argc; ++i) {
        std::string token = argv[i];
        if (token.rfind("--", 0) != 0 || token.size() <= 2) {
            throw usage_error("unexpected argument '" + token + "'");
        }
        token.erase(0, 2);
        std::string value;
        const auto eq = token.find('=');
        if (eq != std::string::npos) {
            value = token.substr(eq + 1);
            token.erase(eq);
        } else {
            if (i + 1 >= argc) {
                throw usage_error("flag --" + token + " needs a value");
            }
            value = argv[++i];
        }
        if (!kKnownFlags.count(token)) {
            throw usage_error("unknown flag --" + token);
        }
        flags[token] = value;
    }
    return flags;
}

// Config file: flat key=value lines mirroring flag names; '#' comments.
// Explicit flags override file entries.
void merge_config(FlagMap& flags) {
    const auto it = flags.find("config");
    if (it == flags.end()) {
        return;
    }
    std::ifstream in(it->second);
    if (!in) {
        throw std::runtime_error("cannot read config file '" + it->second + "'");
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            continue;
        }
        if (!kKnownFlags.count(key)) {
            throw usage_error("unknown key '" + key + "' in config file");
        }
        flags.emplace(key, value); // does not override explicit flags
    }
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Reads flags and remembers every resolved value in SI units so the run
// metadata can echo exactly what was computed with.
class Reader {
public:
    explicit Reader(const FlagMap& flags) : flags_(flags) {}

    bool has(const std::string& name) const { return flags_.count(name) > 0; }

    std::string str(const std::string& name) const {
        const auto it = flags_.find(name);
        if (it == flags_.end()) {
            throw usage_error("missing required flag --" + name);
        }
        resolved_[name] = it->second;
        return it->second;
    }

    double quantity(const std::string& name, Quantity kind) const {
        try {
            const double v = parse_quantity(str(name), kind);
            resolved_[name] = format_value(v);
            return v;
        } catch (const std::invalid_argument& e) {
            throw usage_error("--" + name + ": " + e.what());
        }
    }

    double quantity_or(const std::string& name, Quantity kind, double fallback) const {
        if (!has(name)) {
            resolved_[name] = format_value(fallback);
            return fallback;
        }
        return quantity(name, kind);
    }

    long long integer(const std::string& name, long long fallback) const {
        if (!has(name)) {
            resolved_[name] = std::to_string(fallback);
            return fallback;
        }
        try {
            const long long v = std::stoll(str(name));
            resolved_[name] = std::to_string(v);
            return v;
        } catch (const std::exception&) {
            throw usage_error("--" + name + " must be an integer");
        }
    }

    // SI-resolved parameter set, emitted to stderr with every run.
    void emit_resolved(std::ostream& out) const {
        out << "# resolved:";
        for (const auto& [key, value] : resolved_) {
            out << " " << key << "=" << value;
        }
        out << "\n";
    }

private:
    const FlagMap& flags_;
    mutable std::map<std::string, std::string> resolved_;
};

Metric parse_metric(const std::string& s) {
    if (s == "eor") return Metric::Eor;
    if (s == "ior") return Metric::Ior;
    if (s == "mec") return Metric::Mec;
    if (s == "mid") return Metric::Mid;
    throw usage_error("unknown metric '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
    if (s == "cra") return Strategy::Cra;
    if (s == "cpa") return Strategy::Cpa;
    throw usage_error("unknown strategy '" + s + "'");
}

LinkParams read_link(const Reader& r) {
    return LinkParams{r.quantity("B", Quantity::FrequencyHz),
                      r.quantity_or("N0", Quantity::Bare, 1e-9)};
}

FadingModel read_fading(const Reader& r) {
    const std::string kind = r.str("fading");
    const double avg = r.quantity("gbar", Quantity::Gain);
    if (kind == "rayleigh") {
        return FadingModel::rayleigh(avg);
    }
    if (kind == "nakagami") {
        return FadingModel::nakagami(r.quantity("m", Quantity::Bare), avg);
    }
    throw usage_error("unknown fading kind '" + kind + "' (rayleigh|nakagami)");
}

CraConfig read_cra(const Reader& r) { return CraConfig{r.quantity("Pt", Quantity::PowerW)}; }

CpaConfig read_cpa(const Reader& r) {
    return CpaConfig{r.quantity("gammac", Quantity::Snr), r.quantity("Pmax", Quantity::PowerW)};
}

std::optional<double> read_tc(const Reader& r) {
    if (!r.has("Tc")) {
        return std::nullopt;
    }
    return r.quantity("Tc", Quantity::TimeS);
}

// Run metadata goes to stderr so the stdout/file artifacts stay
// byte-reproducible.
void emit_metadata(const FlagMap& flags, const std::string& command) {
    char stamp[64] = "";
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    std::cerr << "# deem " << kVersion << " " << command << " " << stamp << "\n#";
    for (const auto& [key, value] : flags) {
        if (key != "config") {
            std::cerr << " " << key << "=" << value;
        }
    }
    if (!flags.count("N0")) {
        std::cerr << " N0=1e-9";
    }
    if (command == "verify") {
        std::cerr << " generator=" << kGeneratorId;
    }
    std::cerr << "\n";
}

int cmd_eval(const Reader& r) {
    const Metric metric = parse_metric(r.str("metric"));
    const Strategy strategy = parse_strategy(r.str("strategy"));
    const LinkParams link = read_link(r);
    const bool cra = strategy == Strategy::Cra;

    switch (metric) {
    case Metric::Eor: {
        const DataAmount h{r.quantity("H", Quantity::DataBits)};
        const EnergyThreshold e_th{r.quantity("Eth", Quantity::EnergyJ)};
        const FadingModel fading = read_fading(r);
        const double v = cra ? eor_cra(link, read_cra(r), fading, h, e_th)
                             : eor_cpa(link, read_cpa(r), fading, h, e_th);
        std::cout << format_value(v) << "\n";
        return kExitOk;
    }
    case Metric::Ior: {
        const EnergyAmount e{r.quantity("E", Quantity::EnergyJ)};
        const EntropyThreshold h_th{r.quantity("Hth", Quantity::DataBits)};
        const FadingModel fading = read_fading(r);
        const double v = cra ? ior_cra(link, read_cra(r), fading, e, h_th)
                             : ior_cpa(link, read_cpa(r), fading, e, h_th);
        std::cout << format_value(v) << "\n";
        return kExitOk;
    }
    case Metric::Mec: {
        const DataAmount h{r.quantity("H", Quantity::DataBits)};
        const double g = r.quantity("g", Quantity::Gain);
        if (cra) {
            std::cout << format_value(mec_cra(link, read_cra(r), h, g)) << " J\n";
        } else if (const auto v = mec_cpa(link, read_cpa(r), h, g)) {
            std::cout << format_value(*v) << " J\n";
        } else {
            std::cout << "HELD\n";
        }
        return kExitOk;
    }
    case Metric::Mid: {
        const EnergyAmount e{r.quantity("E", Quantity::EnergyJ)};
        const double g = r.quantity("g", Quantity::Gain);
        const auto t_c = read_tc(r);
        if (cra) {
            std::cout << format_value(mid_cra_single(link, read_cra(r), e, g, t_c)) << " bits\n";
        } else if (const auto v = mid_cpa(link, read_cpa(r), e, g, t_c)) {
            std::cout << format_value(*v) << " bits\n";
        } else {
            std::cout << "HELD\n";
        }
        return kExitOk;
    }
    }
    throw usage_error("unknown metric");
}

SweptParam parse_swept(const std::string& s) {
    if (s == "Eth" || s == "E_th") return SweptParam::EnergyThresholdJ;
    if (s == "Hth" || s == "H_th") return SweptParam::EntropyThresholdBits;
    if (s == "Pt" || s == "p_t") return SweptParam::TxPowerW;
    if (s == "B") return SweptParam::BandwidthHz;
    if (s == "gammac" || s == "gamma_c") return SweptParam::TargetSnr;
    if (s == "Pmax" || s == "p_max") return SweptParam::PeakPowerW;
    if (s == "avg_gain_db" || s == "gbar_db") return SweptParam::AvgGainDb;
    if (s == "m") return SweptParam::NakagamiM;
    throw usage_error("unknown sweep parameter '" + s + "'");
}

Quantity swept_quantity(SweptParam p) {
    switch (p) {
    case SweptParam::EnergyThresholdJ: return Quantity::EnergyJ;
    case SweptParam::EntropyThresholdBits: return Quantity::DataBits;
    case SweptParam::TxPowerW:
    case SweptParam::PeakPowerW: return Quantity::PowerW;
    case SweptParam::BandwidthHz: return Quantity::FrequencyHz;
    case SweptParam::TargetSnr: return Quantity::Snr;
    case SweptParam::AvgGainDb:
    case SweptParam::NakagamiM: return Quantity::Bare;
    }
    return Quantity::Bare;
}

int cmd_sweep(const Reader& r) {
    SweepSpec spec;
    spec.metric = parse_metric(r.str("metric"));
    spec.strategy = parse_strategy(r.str("strategy"));
    spec.swept = parse_swept(r.str("sweep"));

    const Quantity axis = swept_quantity(spec.swept);
    spec.grid.min = r.quantity("min", axis);
    spec.grid.max = r.quantity("max", axis);
    spec.grid.points = static_cast<int>(r.integer("points", 0));
    const std::string spacing = r.has("spacing") ? r.str("spacing") : "linear";
    if (spacing == "log") {
        spec.grid.log_spacing = true;
    } else if (spacing != "linear") {
        throw usage_error("--spacing must be linear or log");
    }

    spec.link = read_link(r);
    if (r.has("fading")) {
        spec.fading = read_fading(r);
    }
    if (r.has("Pt")) spec.tx_power_w = r.quantity("Pt", Quantity::PowerW);
    if (r.has("gammac")) spec.target_snr = r.quantity("gammac", Quantity::Snr);
    if (r.has("Pmax")) spec.peak_power_w = r.quantity("Pmax", Quantity::PowerW);
    if (r.has("H")) spec.data_bits = r.quantity("H", Quantity::DataBits);
    if (r.has("E")) spec.energy_j = r.quantity("E", Quantity::EnergyJ);
    if (r.has("Eth")) spec.energy_threshold_j = r.quantity("Eth", Quantity::EnergyJ);
    if (r.has("Hth")) spec.entropy_threshold_bits = r.quantity("Hth", Quantity::DataBits);
    if (r.has("g")) spec.gain = r.quantity("g", Quantity::Gain);

    std::vector<SweepPoint> points;
    try {
        points = run_sweep(spec);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }

    const std::string path = r.str("out");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitError;
    }
    write_csv(out, spec, points);
    out.flush();
    if (!out) {
        std::cerr << "error: writing '" << path << "' failed\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_verify(const Reader& r) {
    const Metric metric = parse_metric(r.str("metric"));
    const Strategy strategy = parse_strategy(r.str("strategy"));
    if (metric != Metric::Eor && metric != Metric::Ior) {
        throw usage_error("verify supports the eor and ior metrics");
    }
    const LinkParams link = read_link(r);
    const FadingModel fading = read_fading(r);

    mc::SimConfig sim;
    sim.n_samples = static_cast<std::uint64_t>(r.integer("n", 1'000'000));
    sim.seed = static_cast<std::uint64_t>(r.integer("seed", 1));
    const unsigned hw = std::thread::hardware_concurrency();
    sim.workers = static_cast<int>(r.integer("workers", hw > 0 ? hw : 1));

    const bool cra = strategy == Strategy::Cra;
    const mc::StrategyConfig strategy_cfg =
        cra ? mc::StrategyConfig{read_cra(r)} : mc::StrategyConfig{read_cpa(r)};

    double closed = 0.0;
    mc::OutageEstimate est;
    if (metric == Metric::Eor) {
        const DataAmount h{r.quantity("H", Quantity::DataBits)};
        const EnergyThreshold e_th{r.quantity("Eth", Quantity::EnergyJ)};
        closed = cra ? eor_cra(link, read_cra(r), fading, h, e_th)
                     : eor_cpa(link, read_cpa(r), fading, h, e_th);
        est = mc::estimate_eor(strategy_cfg, link, fading, h, e_th, sim);
    } else {
        const EnergyAmount e{r.quantity("E", Quantity::EnergyJ)};
        const EntropyThreshold h_th{r.quantity("Hth", Quantity::DataBits)};
        closed = cra ? ior_cra(link, read_cra(r), fading, e, h_th)
                     : ior_cpa(link, read_cpa(r), fading, e, h_th);
        est = mc::estimate_ior(strategy_cfg, link, fading, e, h_th, sim);
    }

    const double gap = std::fabs(closed - est.p_hat);
    const double tolerance = std::max(3.0 * est.std_error, 1e-4);
    std::cout << "closed_form = " << format_value(closed) << "\n";
    std::cout << "monte_carlo = " << format_value(est.p_hat) << " (n=" << est.n
              << ", seed=" << est.seed << ", generator=" << kGeneratorId << ")\n";
    std::cout << "std_error   = " << format_value(est.std_error) << "\n";
    std::cout << "gap         = " << format_value(gap)
              << " (tolerance = " << format_value(tolerance) << ")\n";
    if (gap <= tolerance) {
        std::cout << "PASS\n";
        return kExitOk;
    }
    std::cout << "FAIL\n";
    return kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << kUsage;
        return kExitUsage;
    }
    const std::string command = argv[1];
    try {
        FlagMap flags = parse_flags(argc, argv, 2);
        merge_config(flags);
        const Reader reader(flags);
        emit_metadata(flags, command);
        int code = kExitUsage;
        if (command == "eval") {
            code = cmd_eval(reader);
        } else if (command == "sweep") {
            code = cmd_sweep(reader);
        } else if (command == "verify") {
            code = cmd_verify(reader);
        } else {
            std::cerr << kUsage;
            return kExitUsage;
        }
        reader.emit_resolved(std::cerr);
        return code;
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << kUsage;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
