// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "deem/montecarlo.hpp"

using namespace deem;

namespace {

const LinkParams kLink{2e5, 1e-9};
const CraConfig kCra{0.2};
const CpaConfig kCpa{10.0, 0.5};
const auto kRayleigh = FadingModel::rayleigh(0.1);

bool same(const mc::OutageEstimate& a, const mc::OutageEstimate& b) {
    return a.p_hat == b.p_hat && a.n == b.n && a.std_error == b.std_error && a.seed == b.seed;
}

// The documented stream contract, re-coded here so the estimators are checked
// against an independent implementation of the same specification.
double ref_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    const std::uint64_t key = mix(seed + (trial + 1) * 0x9E3779B97F4A7C15ull);
    return (mix(key + (draw + 1) * 0x9E3779B97F4A7C15ull) >> 11) * 0x1.0p-53;
}

} // namespace

TEST_CASE("stream contract matches its specification") {
    for (std::uint64_t seed : {1ull, 42ull, 0xDEADBEEFull}) {
        for (std::uint64_t i : {0ull, 1ull, 999'999ull}) {
            for (std::uint64_t j : {0ull, 3ull}) {
                CHECK(mc::stream_uniform(seed, i, j) == ref_uniform(seed, i, j));
            }
        }
    }
}

TEST_CASE("estimate_eor: degenerate threshold and determinism") {
    const mc::SimConfig sim{100'000, 5, 2};
    const auto zero = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                       EnergyThreshold{1e30}, sim);
    CHECK(zero.p_hat == 0.0);
    CHECK(zero.std_error == 0.0);
    CHECK(zero.n == 100'000);
    CHECK(zero.seed == 5);
    CHECK(mc::estimate_eor(kCpa, kLink, kRayleigh, DataAmount{4e5}, EnergyThreshold{1e30}, sim)
              .p_hat == 0.0);

    const auto a = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                    EnergyThreshold{0.05}, sim);
    const auto b = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                    EnergyThreshold{0.05}, sim);
    CHECK(same(a, b));
}

TEST_CASE("estimate_eor: matches the closed form at the curve settings") {
    const double closed = eor_cra(kLink, kCra, kRayleigh, DataAmount{4e5}, EnergyThreshold{0.05});
    const auto est = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                      EnergyThreshold{0.05}, mc::SimConfig{1'000'000, 11, 2});
    CHECK(std::fabs(closed - est.p_hat) <= 3.0 * est.std_error);
}

TEST_CASE("estimates are independent of the worker count and match the serial path") {
    const mc::SimConfig base{200'000, 77, 1};
    const auto serial = mc::serial::estimate_eor(kCpa, kLink, kRayleigh, DataAmount{4e5},
                                                 EnergyThreshold{0.02}, base);
    for (int workers : {1, 2, 8}) {
        mc::SimConfig sim = base;
        sim.workers = workers;
        const auto est = mc::estimate_eor(kCpa, kLink, kRayleigh, DataAmount{4e5},
                                          EnergyThreshold{0.02}, sim);
        CHECK(same(est, serial));
    }

    const auto serial_ior = mc::serial::estimate_ior(kCra, kLink, kRayleigh, EnergyAmount{0.08},
                                                     EntropyThreshold{2e5}, base);
    for (int workers : {1, 2, 8}) {
        mc::SimConfig sim = base;
        sim.workers = workers;
        CHECK(same(mc::estimate_ior(kCra, kLink, kRayleigh, EnergyAmount{0.08},
                                    EntropyThreshold{2e5}, sim),
                   serial_ior));
    }
}

TEST_CASE("estimate_ior: limits, duality, closed-form agreement") {
    const mc::SimConfig sim{100'000, 3, 2};
    CHECK(mc::estimate_ior(kCra, kLink, kRayleigh, EnergyAmount{0.08},
                           EntropyThreshold{1e-300}, sim)
              .p_hat == 0.0);

    // Same per-trial event under the algebraic identity, same stream.
    const auto ior = mc::estimate_ior(kCra, kLink, kRayleigh, EnergyAmount{0.05},
                                      EntropyThreshold{4e5}, sim);
    const auto eor = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                      EnergyThreshold{0.05}, sim);
    CHECK(ior.p_hat == eor.p_hat);

    const auto nakagami = FadingModel::nakagami(2.0, 0.1);
    const double closed = ior_cpa(kLink, kCpa, nakagami, EnergyAmount{0.08},
                                  EntropyThreshold{2e5});
    const auto est = mc::estimate_ior(kCpa, kLink, nakagami, EnergyAmount{0.08},
                                      EntropyThreshold{2e5}, mc::SimConfig{1'000'000, 29, 2});
    CHECK(std::fabs(closed - est.p_hat) <= 3.0 * est.std_error);
}

TEST_CASE("estimate_ior_multiblock: single-block reduction is exact") {
    const mc::SimConfig sim{50'000, 13, 2};
    // Airtime 0.25 s against a 0.5 s block: one block only.
    const EnergyAmount e{0.05};
    const auto multi = mc::estimate_ior_multiblock(kLink, kCra, kRayleigh, e, 0.5,
                                                   EntropyThreshold{3e5}, sim);
    const auto single =
        mc::estimate_ior(kCra, kLink, kRayleigh, e, EntropyThreshold{3e5}, sim);
    CHECK(same(multi, single));

    CHECK(mc::estimate_ior_multiblock(kLink, kCra, kRayleigh, e, 0.5, EntropyThreshold{0.0}, sim)
              .p_hat == 0.0);
}

TEST_CASE("estimate_ior_multiblock: brute-force re-simulation oracle") {
    // Airtime of exactly ten blocks; threshold near the bulk of the sum.
    const double t_c = 0.1;
    const EnergyAmount e{10.0 * t_c * kCra.tx_power_w};
    const EntropyThreshold h_th{1.3e6};
    const mc::SimConfig sim{100'000, 57, 2};

    const auto est = mc::estimate_ior_multiblock(kLink, kCra, kRayleigh, e, t_c, h_th, sim);

    // Independent path: same stream specification, naive per-trial sum.
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < sim.n_samples; ++i) {
        double bits = 0.0;
        for (std::uint64_t j = 0; j < 10; ++j) {
            const double g = -kRayleigh.avg_gain * std::log1p(-ref_uniform(sim.seed, i, j));
            bits += t_c * kLink.bandwidth_hz *
                    std::log2(1.0 + kCra.tx_power_w * g / kLink.noise_power_w());
        }
        hits += bits < h_th.bits ? 1 : 0;
    }
    const double brute = static_cast<double>(hits) / static_cast<double>(sim.n_samples);
    CHECK(std::fabs(est.p_hat - brute) <= 3.0 * est.std_error + 1e-12);

    // Worker invariance holds for the multiblock kernel too.
    for (int workers : {1, 2, 8}) {
        mc::SimConfig w = sim;
        w.workers = workers;
        CHECK(same(mc::estimate_ior_multiblock(kLink, kCra, kRayleigh, e, t_c, h_th, w), est));
    }
    mc::SimConfig one = sim;
    one.workers = 1;
    CHECK(same(mc::serial::estimate_ior_multiblock(kLink, kCra, kRayleigh, e, t_c, h_th, one),
               est));
}

TEST_CASE("estimate_ior_multiblock: block-count bound") {
    // Airtime 1e7 blocks.
    const double t_c = 1e-9;
    CHECK_THROWS_AS(mc::estimate_ior_multiblock(kLink, kCra, kRayleigh, EnergyAmount{0.002},
                                                t_c, EntropyThreshold{1e5},
                                                mc::SimConfig{10, 1, 1}),
                    std::length_error);
}

TEST_CASE("standard error scales as one over root n") {
    const mc::SimConfig small{10'000, 31, 2};
    const mc::SimConfig large{1'000'000, 31, 2};
    const auto a = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                    EnergyThreshold{0.1}, small);
    const auto b = mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                    EnergyThreshold{0.1}, large);
    const double ratio = a.std_error / b.std_error;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 12.0);
}

TEST_CASE("truncated sampling matches the conditional distribution") {
    const auto fading = FadingModel::rayleigh(0.1);
    const double cutoff = kCpa.cutoff_gain(kLink);
    const double f_cut = cdf(fading, cutoff);

    const std::size_t n = 1'000'000;
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples[i] = mc::truncated_sample(fading, cutoff, mc::stream_uniform(123, i, 0));
    }
    std::sort(samples.begin(), samples.end());
    CHECK(samples.front() >= cutoff);

    // Kolmogorov-Smirnov distance against (F(g) - F(g_T)) / (1 - F(g_T)).
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double model_cdf = (cdf(fading, samples[i]) - f_cut) / (1.0 - f_cut);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::fabs(model_cdf - lo), std::fabs(model_cdf - hi)});
    }
    CHECK(d <= 0.005);
}

TEST_CASE("degenerate cutoff mirrors the closed form") {
    const CpaConfig starved{1e6, 1e-6};
    CHECK_THROWS_AS(mc::estimate_eor(starved, kLink, kRayleigh, DataAmount{4e5},
                                     EnergyThreshold{0.05}, mc::SimConfig{10, 1, 1}),
                    degenerate_cutoff_error);
}

TEST_CASE("sim config validation") {
    CHECK_THROWS_AS(mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                     EnergyThreshold{0.05}, mc::SimConfig{0, 1, 1}),
                    std::domain_error);
    CHECK_THROWS_AS(mc::estimate_eor(kCra, kLink, kRayleigh, DataAmount{4e5},
                                     EnergyThreshold{0.05}, mc::SimConfig{10, 1, 0}),
                    std::domain_error);
}
