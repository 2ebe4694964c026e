// Wall-clock comparison of the OpenMP ensemble against the serial reference.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "pjacobi/ensemble.hpp"

using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
    pjacobi::EnsembleConfig cfg;
    cfg.trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000;
    if (argc > 2) cfg.pmax = std::atoi(argv[2]);

    auto t0 = clk::now();
    const auto serial = pjacobi::run_ensemble_serial(cfg);
    auto t1 = clk::now();
    const auto parallel = pjacobi::run_ensemble(cfg);
    auto t2 = clk::now();

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();
    std::cout << "trials " << cfg.trials << ", p in [" << cfg.pmin << ", " << cfg.pmax << "], threads "
              << omp_get_max_threads() << "\n"
              << "serial   " << ts << " s\n"
              << "parallel " << tp << " s  (speedup " << ts / tp << ")\n";

    const bool same = serial.summary.trialsAllPassed == parallel.summary.trialsAllPassed &&
                      serial.summary.maxOracleDiscrepancy == parallel.summary.maxOracleDiscrepancy;
    std::cout << (same ? "summaries agree\n" : "summaries DIFFER\n");
    return same ? 0 : 1;
}
