// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "deem/units.hpp"

using deem::Quantity;
using deem::parse_quantity;

TEST_CASE("suffix forms reproduce SI values exactly") {
    CHECK(parse_quantity("-10dB", Quantity::Gain) == 0.1);
    CHECK(parse_quantity("50kB", Quantity::DataBits) == 4e5);
    CHECK(parse_quantity("80mJ", Quantity::EnergyJ) == 0.08);
    CHECK(parse_quantity("200kHz", Quantity::FrequencyHz) == 2e5);
    CHECK(parse_quantity("0.2W", Quantity::PowerW) == 0.2);
    CHECK(parse_quantity("0dB", Quantity::Snr) == 1.0);
}

TEST_CASE("bare numbers are SI") {
    CHECK(parse_quantity("1e-9", Quantity::PowerW) == 1e-9);
    CHECK(parse_quantity("0.1", Quantity::Gain) == 0.1);
    CHECK(parse_quantity("400000", Quantity::DataBits) == 4e5);
    CHECK(parse_quantity("10", Quantity::Snr) == 10.0);
    CHECK(parse_quantity(" 0.05 ", Quantity::EnergyJ) == 0.05);
}

TEST_CASE("more suffixes") {
    CHECK(parse_quantity("2MB", Quantity::DataBits) == 1.6e7);
    CHECK(parse_quantity("400000bits", Quantity::DataBits) == 4e5);
    CHECK(parse_quantity("5uJ", Quantity::EnergyJ) == 5e-6);
    CHECK(parse_quantity("1.5MHz", Quantity::FrequencyHz) == 1.5e6);
    CHECK(parse_quantity("250mW", Quantity::PowerW) == 0.25);
    CHECK(parse_quantity("10ms", Quantity::TimeS) == 0.01);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(parse_quantity("", Quantity::Gain), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("dB", Quantity::Gain), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("50kB", Quantity::EnergyJ), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("10W", Quantity::DataBits), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("3furlongs", Quantity::FrequencyHz), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("1dB", Quantity::Bare), std::invalid_argument);
}
