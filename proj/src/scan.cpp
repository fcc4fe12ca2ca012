#include "qls/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qls/digest.hpp"
#include "qls/errors.hpp"

namespace qls {

void SearchSpace::validate() const {
    if (m_values.empty() || t_values.empty() || step_values.empty()) {
        throw SchemaError("optimizer grids must be nonempty");
    }
    for (const int m : m_values)
        if (m < 1) throw SchemaError("optimizer.m_values must be >= 1");
    for (const double t : t_values)
        if (!(t > 0.0)) throw SchemaError("optimizer.t_values must be > 0");
    for (const double s : step_values)
        if (!(s > 0.0)) throw SchemaError("optimizer.step_values must be > 0");
    if (!(eps1 > 0.0 && eps1 < 1.0 && eps2 > 0.0 && eps2 < 1.0)) {
        throw SchemaError("confidence bounds must lie in (0, 1)");
    }
    if (spam < 0.0 || spam >= 0.5) throw SchemaError("spam must lie in [0, 0.5)");
    if (bins < 1) throw SchemaError("bins must be >= 1");
    if (readout_overhead < 0.0) throw SchemaError("readout_overhead must be >= 0");
}

SearchSpace SearchSpace::defaults(int bins) {
    SearchSpace s;
    s.bins = bins;
    for (int m = 1; m <= 32; ++m) s.m_values.push_back(m);
    for (int i = 1; i <= 20; ++i) s.t_values.push_back(5.0 * i);
    for (int i = 1; i <= 30; ++i) s.step_values.push_back(0.5 * i);
    s.squeezing_db = {0.0};
    return s;
}

SearchSpace SearchSpace::coarse(int bins) {
    SearchSpace s;
    s.bins = bins;
    s.m_values = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 28, 32};
    s.t_values = {5, 10, 15, 20, 30, 40, 50, 60, 80, 100};
    for (int i = 1; i <= 15; ++i) s.step_values.push_back(1.0 * i);
    s.squeezing_db = {0.0};
    s.refine = false;
    return s;
}

DetuningGrid SearchSpace::lineshape_grid(double grid_step) const {
    const double max_step = *std::max_element(step_values.begin(), step_values.end());
    const double reach = (0.5 * (bins - 1) + 0.5) * max_step + 0.5;
    const double half = std::ceil(reach / grid_step) * grid_step;
    return DetuningGrid{-half, half, grid_step};
}

ScanPoint evaluate_point(int shots, double time, double step, int bins, double xi,
                         double eps1, double eps2, const LineshapeTable& table,
                         double readout_overhead) {
    TestConfig cfg;
    cfg.bins = bins;
    cfg.shots = shots;
    cfg.time = time;
    cfg.step = step;
    cfg.spam = xi;
    cfg.validate();

    ScanPoint p;
    p.shots = shots;
    p.time = time;
    p.step = step;
    p.speed_hz = scan_speed_hz_per_s(step, shots, time + readout_overhead,
                                     table.params.rabi_hz);

    const PositionModels models = build_position_models(cfg, table);
    const TestDistributions d = test_distributions(models, shots, xi);
    const StatisticDistribution h1s[2] = {d.h1_aligned, d.h1_shifted};
    const ThresholdChoice choice = best_threshold_by_score(h1s, d.h2, eps1, eps2);
    p.phi = choice.phi;
    p.errors = choice.errors;
    p.feasible = choice.errors.miss_rate <= eps1 && choice.errors.false_alarm <= eps2;
    return p;
}

namespace {

// true when `b` beats `a`: higher speed, then smaller M, smaller t, larger step.
bool better(const std::optional<ScanPoint>& a, const ScanPoint& b) {
    if (!b.feasible) return false;
    if (!a) return true;
    if (b.speed_hz != a->speed_hz) return b.speed_hz > a->speed_hz;
    if (b.shots != a->shots) return b.shots < a->shots;
    if (b.time != a->time) return b.time < a->time;
    return b.step > a->step;
}

struct TableSet {
    std::vector<double> times;
    std::vector<LineshapeTable> tables;

    const LineshapeTable& at(double t) const {
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] == t) return tables[i];
        }
        throw Error("optimize: missing lineshape for t = " + format_double(t));
    }
};

TableSet load_tables(const SearchSpace& space, const PhysicalParams& base, double r,
                     const std::vector<double>& times, LineshapeCache& cache,
                     ExecutionMode mode) {
    PhysicalParams p = base;
    p.squeezing_r = r;
    TableSet set;
    set.times = times;
    set.tables = cache.get_or_compute_multi(p, times, space.lineshape_grid(), mode);
    return set;
}

std::optional<ScanPoint> best_over(const SearchSpace& space, const TableSet& tables,
                                   const std::vector<int>& ms,
                                   const std::vector<double>& ts,
                                   const std::vector<double>& steps,
                                   std::optional<ScanPoint> incumbent) {
    // Visit candidates in deterministic grid order; skip ones that cannot
    // beat the incumbent's speed before doing any statistics.
    for (const double t : ts) {
        const LineshapeTable& table = tables.at(t);
        for (const double ds : steps) {
            for (const int m : ms) {
                const double v = scan_speed_hz_per_s(ds, m, t + space.readout_overhead,
                                                     table.params.rabi_hz);
                if (incumbent && incumbent->feasible && v < incumbent->speed_hz) continue;
                const ScanPoint p = evaluate_point(m, t, ds, space.bins, space.spam,
                                                   space.eps1, space.eps2, table,
                                                   space.readout_overhead);
                if (better(incumbent, p)) incumbent = p;
            }
        }
    }
    return incumbent;
}

}  // namespace

SweepResult optimize(const SearchSpace& space, const PhysicalParams& base,
                     LineshapeCache& cache, ExecutionMode mode,
                     const ProgressFn& progress) {
    space.validate();
    base.validate();
    SweepResult result;
    for (const double db : space.squeezing_db) {
        const double r = squeezing_db_to_r(db);
        if (progress) progress("optimize: squeezing " + format_double(db) + " dB");
        TableSet tables = load_tables(space, base, r, space.t_values, cache, mode);
        std::optional<ScanPoint> best =
            best_over(space, tables, space.m_values, space.t_values, space.step_values,
                      std::nullopt);

        if (best && space.refine) {
            // One refinement pass: halve the local spacing around the incumbent.
            const auto half_around = [](const std::vector<double>& grid, double x) {
                double spacing = std::numeric_limits<double>::infinity();
                for (std::size_t i = 1; i < grid.size(); ++i) {
                    spacing = std::min(spacing, grid[i] - grid[i - 1]);
                }
                std::vector<double> out;
                if (std::isfinite(spacing)) {
                    if (x - 0.5 * spacing > 0.0) out.push_back(x - 0.5 * spacing);
                    out.push_back(x + 0.5 * spacing);
                }
                return out;
            };
            std::vector<double> t_ref = half_around(space.t_values, best->time);
            std::vector<double> s_ref = half_around(space.step_values, best->step);
            s_ref.push_back(best->step);
            std::vector<int> m_ref{best->shots};
            if (best->shots > 1) m_ref.push_back(best->shots - 1);
            m_ref.push_back(best->shots + 1);
            std::sort(m_ref.begin(), m_ref.end());

            // Keep refined steps inside the tabulated detuning range.
            const DetuningGrid grid = space.lineshape_grid();
            const double max_reach = (0.5 * (space.bins - 1) + 0.5);
            std::erase_if(s_ref, [&](double s) { return s * max_reach > grid.hi; });

            if (!t_ref.empty()) {
                TableSet extra = load_tables(space, base, r, t_ref, cache, mode);
                best = best_over(space, extra, m_ref, t_ref, s_ref, best);
            }
            std::vector<double> t_keep{best->time};
            TableSet at_best = load_tables(space, base, r, t_keep, cache, mode);
            best = best_over(space, at_best, m_ref, t_keep, s_ref, best);
        }
        result.per_squeezing.push_back(SweepEntry{db, best});
    }
    return result;
}

SpeedMap speed_map(int shots, const SearchSpace& space, const PhysicalParams& base,
                   LineshapeCache& cache, ExecutionMode mode, const ProgressFn& progress) {
    space.validate();
    if (space.squeezing_db.size() != 1) {
        throw Error("speed_map: exactly one squeezing value expected");
    }
    SpeedMap map;
    map.shots = shots;
    map.bins = space.bins;
    map.squeezing_db = space.squeezing_db.front();
    map.spam = space.spam;
    map.t_values = space.t_values;
    map.step_values = space.step_values;
    if (progress) progress("speed-map: computing lineshapes");
    const TableSet tables = load_tables(space, base, squeezing_db_to_r(map.squeezing_db),
                                        space.t_values, cache, mode);
    map.cells.reserve(space.t_values.size() * space.step_values.size());
    for (const double t : space.t_values) {
        const LineshapeTable& table = tables.at(t);
        try {
            map.fwhm.push_back(table.fwhm());
        } catch (const NoPeak&) {
            map.fwhm.push_back(std::numeric_limits<double>::quiet_NaN());
        }
        for (const double ds : space.step_values) {
            map.cells.push_back(evaluate_point(shots, t, ds, space.bins, space.spam,
                                               space.eps1, space.eps2, table,
                                               space.readout_overhead));
        }
    }
    return map;
}

}  // namespace qls
