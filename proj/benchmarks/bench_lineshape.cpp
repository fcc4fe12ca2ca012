// Compares the OpenMP lineshape kernel against the serial reference path on
// a representative workload and checks the outputs are identical bytes.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <string>

#include "qls/digest.hpp"
#include "qls/lineshape.hpp"

using namespace qls;

namespace {

double run(ExecutionMode mode, const PhysicalParams& p, const std::vector<double>& times,
           const DetuningGrid& grid, std::vector<LineshapeTable>& out) {
    const auto start = std::chrono::steady_clock::now();
    out = compute_lineshape_multi(p, times, grid, mode);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    PhysicalParams p;
    DetuningGrid grid{-10.0, 10.0, 0.5};
    std::vector<double> times{10.0, 20.0, 35.0};
    if (argc > 1 && std::string(argv[1]) == "--full") {
        grid = DetuningGrid{-15.0, 15.0, 0.25};
        times = {10.0, 20.0, 35.0, 50.0};
    }

    std::vector<LineshapeTable> serial, parallel;
    const double t_serial = run(ExecutionMode::Serial, p, times, grid, serial);
    const double t_parallel = run(ExecutionMode::Parallel, p, times, grid, parallel);

    double max_diff = 0.0;
    bool identical = true;
    for (std::size_t i = 0; i < serial.size(); ++i) {
        for (std::size_t k = 0; k < serial[i].signal.size(); ++k) {
            const double d = std::abs(serial[i].signal[k] - parallel[i].signal[k]);
            max_diff = std::max(max_diff, d);
            if (serial[i].signal[k] != parallel[i].signal[k]) identical = false;
        }
        if (serial[i].serialize() != parallel[i].serialize()) identical = false;
    }

    std::cout << "grid points:      " << grid.points().size() << " x " << times.size()
              << " times\n"
              << "threads:          " << omp_get_max_threads() << "\n"
              << "serial:           " << t_serial << " s\n"
              << "parallel:         " << t_parallel << " s\n"
              << "speedup:          " << t_serial / t_parallel << "\n"
              << "max |difference|: " << max_diff << "\n"
              << "bit-identical:    " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
