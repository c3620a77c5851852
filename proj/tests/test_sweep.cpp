// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "deem/sweep.hpp"

using namespace deem;

namespace {

SweepSpec fig1_spec() {
    SweepSpec spec;
    spec.metric = Metric::Eor;
    spec.strategy = Strategy::Cra;
    spec.swept = SweptParam::EnergyThresholdJ;
    spec.grid = SweepGrid{0.07, 1.0, 50, true};
    spec.link = LinkParams{2e5, 1e-9};
    spec.fading = FadingModel::rayleigh(0.1);
    spec.tx_power_w = 0.2;
    spec.data_bits = 4e5;
    return spec;
}

} // namespace

TEST_CASE("energy-threshold sweep produces a nonincreasing curve") {
    const auto points = run_sweep(fig1_spec());
    REQUIRE(points.size() == 50);
    for (std::size_t i = 1; i < points.size(); ++i) {
        REQUIRE(points[i].value.has_value());
        CHECK(*points[i].value <= *points[i - 1].value + 1e-12);
    }
    CHECK(points.front().x == doctest::Approx(0.07));
    CHECK(points.back().x == doctest::Approx(1.0));
}

TEST_CASE("entropy-threshold sweep produces a nondecreasing curve") {
    SweepSpec spec;
    spec.metric = Metric::Ior;
    spec.strategy = Strategy::Cra;
    spec.swept = SweptParam::EntropyThresholdBits;
    spec.grid = SweepGrid{1e5, 1e6, 50, true};
    spec.link = LinkParams{2e5, 1e-9};
    spec.fading = FadingModel::nakagami(2.0, 0.1);
    spec.tx_power_w = 0.2;
    spec.energy_j = 0.08;
    const auto points = run_sweep(spec);
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(*points[i].value >= *points[i - 1].value - 1e-12);
    }
}

TEST_CASE("sweeping a parameter outside the formula yields a constant column") {
    SweepSpec spec = fig1_spec();
    spec.swept = SweptParam::PeakPowerW; // CRA ignores the peak power
    spec.grid = SweepGrid{0.1, 1.0, 2, false};
    spec.energy_threshold_j = 0.05;
    const auto points = run_sweep(spec);
    REQUIRE(points.size() == 2);
    CHECK(*points[0].value == *points[1].value);
}

TEST_CASE("MEC sweep over average gain reports HELD below the cutoff") {
    SweepSpec spec;
    spec.metric = Metric::Mec;
    spec.strategy = Strategy::Cpa;
    spec.swept = SweptParam::AvgGainDb;
    spec.grid = SweepGrid{-20.0, 0.0, 5, false};
    spec.link = LinkParams{2e5, 1e-9};
    spec.fading = FadingModel::rayleigh(0.1);
    spec.target_snr = 10.0;
    spec.peak_power_w = 0.5;
    spec.data_bits = 4e5;
    spec.gain = 1e-3; // below the 4e-3 cutoff
    const auto points = run_sweep(spec);
    for (const auto& p : points) {
        CHECK(!p.value.has_value());
    }

    std::ostringstream out;
    write_csv(out, spec, points);
    CHECK(out.str().find("HELD") != std::string::npos);
}

TEST_CASE("incomplete specs are rejected") {
    SweepSpec spec = fig1_spec();
    spec.data_bits = 0.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec = fig1_spec();
    spec.grid.points = 1;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec = fig1_spec();
    spec.grid = SweepGrid{0.0, 1.0, 10, true}; // log spacing needs min > 0
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec = fig1_spec();
    spec.fading.reset();
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("CSV is deterministic and re-parses losslessly") {
    const SweepSpec spec = fig1_spec();
    const auto points = run_sweep(spec);

    std::ostringstream first;
    std::ostringstream second;
    write_csv(first, spec, points);
    write_csv(second, spec, points);
    CHECK(first.str() == second.str());

    std::istringstream in(first.str());
    std::string line;
    std::size_t row = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!saw_header) {
            CHECK(line == "swept_param,value");
            saw_header = true;
            continue;
        }
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double x = std::strtod(line.substr(0, comma).c_str(), nullptr);
        const double v = std::strtod(line.substr(comma + 1).c_str(), nullptr);
        CHECK(x == points[row].x);
        CHECK(v == *points[row].value);
        ++row;
    }
    CHECK(row == points.size());
}

TEST_CASE("grid spacing") {
    const SweepGrid lin{0.0, 1.0, 5, false};
    CHECK(grid_value(lin, 0) == 0.0);
    CHECK(grid_value(lin, 2) == doctest::Approx(0.5));
    CHECK(grid_value(lin, 4) == 1.0);

    const SweepGrid log{0.01, 100.0, 5, true};
    CHECK(grid_value(log, 0) == doctest::Approx(0.01));
    CHECK(grid_value(log, 2) == doctest::Approx(1.0));
    CHECK(grid_value(log, 4) == doctest::Approx(100.0));
}
