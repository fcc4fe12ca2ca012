#ifndef QLS_LINESHAPE_HPP
#define QLS_LINESHAPE_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qls/lindblad.hpp"
#include "qls/params.hpp"

namespace qls {

// Symmetric-looking grids are still evaluated on both sides; the profile's
// detuning symmetry is a measured property, not an assumption.
struct DetuningGrid {
    double lo = -15.0;
    double hi = 15.0;
    double step = 0.25;

    std::vector<double> points() const;
    void validate() const;
    std::string canonical() const;
};

// P0(t, delta) on a detuning grid plus the H = 0 background P_bg(t); the
// bridge between the dynamics and the statistics.
struct LineshapeTable {
    PhysicalParams params;
    double time = 0.0;               // units of T
    std::vector<double> detunings;   // ascending, units of the Rabi frequency
    std::vector<double> signal;      // P0 in [0, 1]
    double background = 0.0;         // P_bg(t)
    double truncation_loss = 0.0;    // initial-state norm deficit

    // Piecewise-linear interpolation, exact at nodes. Throws OutOfRange.
    double signal_at(double delta) const;
    double peak() const;

    // Full width at half maximum of the background-subtracted profile,
    // linear interpolation between nodes. Throws NoPeak if the profile rises
    // less than `min_peak` above background or never falls back to half.
    double fwhm(double min_peak = 1e-4) const;

    // Far-detuned sanity: |P0(edge) - P_bg| < frac * max(P0 - P_bg).
    bool edges_reach_background(double frac = 0.05) const;

    nlohmann::json to_json() const;
    static LineshapeTable from_json(const nlohmann::json& j);
    // Serialized bytes including schema version and checksum.
    std::string serialize() const;
    static LineshapeTable deserialize(const std::string& bytes);  // CorruptCacheEntry
};

enum class ExecutionMode { Parallel, Serial };

// One table per requested time (ascending). Grid points are independent
// pure computations; Parallel runs them on OpenMP threads, Serial is the
// reference loop. Both produce identical bytes. The integration for all
// times of one grid point is shared.
std::vector<LineshapeTable> compute_lineshape_multi(const PhysicalParams& params,
                                                    const std::vector<double>& times,
                                                    const DetuningGrid& grid,
                                                    ExecutionMode mode = ExecutionMode::Parallel,
                                                    double max_truncation_loss = 5e-3);

LineshapeTable compute_lineshape(const PhysicalParams& params, double time,
                                 const DetuningGrid& grid,
                                 ExecutionMode mode = ExecutionMode::Parallel);

// Diagnostic: recompute the signal at fock_cutoff + 5 at a few grid points
// and report the largest change.
double cutoff_convergence_check(const PhysicalParams& params, double time,
                                const std::vector<double>& probe_deltas);

}  // namespace qls

#endif
