#ifndef QLS_SCAN_HPP
#define QLS_SCAN_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qls/cache.hpp"
#include "qls/hypothesis.hpp"

namespace qls {

struct SearchSpace {
    std::vector<int> m_values;
    std::vector<double> t_values;     // units of T
    std::vector<double> step_values;  // units of the Rabi frequency
    int bins = 1;                     // L, fixed per run
    double eps1 = 0.01;
    double eps2 = 0.01;
    double spam = 0.0;
    std::vector<double> squeezing_db;
    double readout_overhead = 0.0;  // added to t when computing the speed
    bool refine = true;             // one half-spacing pass around the incumbent

    void validate() const;
    // M in 1..32, t/T in {5,...,100}, step in {0.5,...,15}; refine on.
    static SearchSpace defaults(int bins);
    // Thinned grids for quick runs; refine off.
    static SearchSpace coarse(int bins);

    // Detuning grid wide enough for every bin of every position at the
    // largest step, rounded out to `grid_step`.
    DetuningGrid lineshape_grid(double grid_step = 0.25) const;
};

struct ScanPoint {
    int shots = 0;
    double time = 0.0;
    double step = 0.0;
    double phi = 0.0;
    ErrorPair errors;     // worst-case position at phi
    bool feasible = false;
    double speed_hz = 0.0;  // bandwidth per second, Hz/s
};

// Evaluates one (M, t, step) candidate against a lineshape table: builds the
// two-position models, exact distributions (SPAM folded in when xi > 0), and
// picks the threshold minimizing max(MR/eps1, FA/eps2).
ScanPoint evaluate_point(int shots, double time, double step, int bins, double xi,
                         double eps1, double eps2, const LineshapeTable& table,
                         double readout_overhead = 0.0);

struct SweepEntry {
    double squeezing_db = 0.0;
    std::optional<ScanPoint> best;  // empty feasible set is an outcome, not an error
};

struct SweepResult {
    std::vector<SweepEntry> per_squeezing;
};

using ProgressFn = std::function<void(const std::string&)>;

// Exhaustive grid evaluation with lineshape caching (one dynamics pass per
// (t-set, squeezing)); deterministic tie-break: highest speed, then smallest
// M, smallest t, largest step.
SweepResult optimize(const SearchSpace& space, const PhysicalParams& base,
                     LineshapeCache& cache, ExecutionMode mode = ExecutionMode::Parallel,
                     const ProgressFn& progress = {});

struct SpeedMapCell {
    ScanPoint point;
};

struct SpeedMap {
    int shots = 0;
    int bins = 0;
    double squeezing_db = 0.0;
    double spam = 0.0;
    std::vector<double> t_values;
    std::vector<double> step_values;
    std::vector<ScanPoint> cells;  // row-major over (t, step)
    std::vector<double> fwhm;      // per t; NaN where no peak resolves
};

// Full (t, step) map at fixed M and L with the FWHM overlay.
SpeedMap speed_map(int shots, const SearchSpace& space, const PhysicalParams& base,
                   LineshapeCache& cache, ExecutionMode mode = ExecutionMode::Parallel,
                   const ProgressFn& progress = {});

}  // namespace qls

#endif
