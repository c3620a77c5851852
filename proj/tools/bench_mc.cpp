// SPDX-License-Identifier: Apache-2.0
//
// Benchmark: serial reference vs OpenMP Monte Carlo kernels. Also asserts
// that both paths produce identical estimates.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "deem/montecarlo.hpp"

using namespace deem;
using h_clock = std::chrono::high_resolution_clock;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t1 = h_clock::now();
    fn();
    const auto t2 = h_clock::now();
    return std::chrono::duration<double, std::milli>(t2 - t1).count();
}

void report(const char* name, double serial_ms, double parallel_ms, int workers) {
    std::printf("%-28s serial %8.1f ms   omp(%d) %8.1f ms   speedup %.2fx\n", name, serial_ms,
                workers, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000;
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = static_cast<int>(hw > 0 ? hw : 1);

    const LinkParams link{2e5, 1e-9};
    const CraConfig cra{0.2};
    const CpaConfig cpa{10.0, 0.5};
    const auto rayleigh = FadingModel::rayleigh(0.1);
    const auto nakagami = FadingModel::nakagami(2.0, 0.1);

    const mc::SimConfig serial_cfg{n, 42, 1};
    mc::SimConfig parallel_cfg = serial_cfg;
    parallel_cfg.workers = workers;

    std::printf("n = %llu samples\n", static_cast<unsigned long long>(n));

    // Warm up the OpenMP pool and caches before timing.
    mc::SimConfig warm = parallel_cfg;
    warm.n_samples = 10'000;
    (void)mc::estimate_eor(cra, link, rayleigh, DataAmount{4e5}, EnergyThreshold{0.05}, warm);

    {
        mc::OutageEstimate a, b;
        const double ts = time_ms([&] {
            a = mc::serial::estimate_eor(cra, link, rayleigh, DataAmount{4e5},
                                         EnergyThreshold{0.05}, serial_cfg);
        });
        const double tp = time_ms([&] {
            b = mc::estimate_eor(cra, link, rayleigh, DataAmount{4e5}, EnergyThreshold{0.05},
                                 parallel_cfg);
        });
        if (a.p_hat != b.p_hat) {
            std::fprintf(stderr, "mismatch between serial and parallel EOR kernels\n");
            return 1;
        }
        report("eor cra rayleigh", ts, tp, workers);
    }
    {
        mc::OutageEstimate a, b;
        const double ts = time_ms([&] {
            a = mc::serial::estimate_ior(cpa, link, nakagami, EnergyAmount{0.08},
                                         EntropyThreshold{2e5}, serial_cfg);
        });
        const double tp = time_ms([&] {
            b = mc::estimate_ior(cpa, link, nakagami, EnergyAmount{0.08}, EntropyThreshold{2e5},
                                 parallel_cfg);
        });
        if (a.p_hat != b.p_hat) {
            std::fprintf(stderr, "mismatch between serial and parallel IOR kernels\n");
            return 1;
        }
        report("ior cpa nakagami m=2", ts, tp, workers);
    }
    {
        const std::uint64_t n_multi = n / 10;
        mc::SimConfig sc = serial_cfg;
        sc.n_samples = n_multi;
        mc::SimConfig pc = parallel_cfg;
        pc.n_samples = n_multi;
        mc::OutageEstimate a, b;
        const double ts = time_ms([&] {
            a = mc::serial::estimate_ior_multiblock(link, cra, rayleigh, EnergyAmount{0.2}, 0.1,
                                                    EntropyThreshold{1.3e6}, sc);
        });
        const double tp = time_ms([&] {
            b = mc::estimate_ior_multiblock(link, cra, rayleigh, EnergyAmount{0.2}, 0.1,
                                            EntropyThreshold{1.3e6}, pc);
        });
        if (a.p_hat != b.p_hat) {
            std::fprintf(stderr, "mismatch between serial and parallel multiblock kernels\n");
            return 1;
        }
        report("ior cra multiblock (10 Tc)", ts, tp, workers);
    }
    return 0;
}
