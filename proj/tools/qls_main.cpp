// qls: quantum-logic spectroscopy line-search simulator.
//
// Subcommands: lineshape, test, optimize, speed-map, sweep-squeezing,
// reproduce, verify. Data goes to files; stdout carries progress only.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>

#include "qls/cache.hpp"
#include "qls/digest.hpp"
#include "qls/errors.hpp"
#include "qls/hypothesis.hpp"
#include "qls/report_io.hpp"
#include "qls/run_config.hpp"
#include "qls/scan.hpp"

namespace {

using namespace qls;
using nlohmann::json;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    for (const char c : csv + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stod(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    for (const double v : parse_double_list(csv)) out.push_back(static_cast<int>(v));
    return out;
}

DetuningGrid parse_grid(const std::string& spec) {
    DetuningGrid g;
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw SchemaError("grid spec must be lo:hi:step");
    }
    g.lo = std::stod(spec.substr(0, c1));
    g.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    g.step = std::stod(spec.substr(c2 + 1));
    g.validate();
    return g;
}

// ---------------------------------------------------------------- lineshape

int cmd_lineshape(const RunConfig& cfg, double time, const std::string& grid_spec,
                  double squeezing_db, const std::string& out_path, bool serial,
                  bool check_convergence) {
    PhysicalParams p = cfg.physical;
    p.squeezing_r = squeezing_db_to_r(squeezing_db);
    const DetuningGrid grid = grid_spec.empty() ? DetuningGrid{} : parse_grid(grid_spec);
    LineshapeCache cache(cfg.cache_root);
    const ExecutionMode mode = serial ? ExecutionMode::Serial : ExecutionMode::Parallel;
    Timer timer;
    const LineshapeTable table = cache.get_or_compute(p, time, grid, mode);
    std::cout << "lineshape: " << table.detunings.size() << " points, t = " << time
              << " T, background = " << format_double(table.background) << " ("
              << format_double(timer.seconds()) << " s)\n";
    if (check_convergence) {
        const double drift = cutoff_convergence_check(
            p, time, {0.0, 0.25 * (grid.hi - grid.lo) / 2.0, grid.hi});
        std::cout << "lineshape: cutoff N+5 signal drift " << format_double(drift)
                  << (drift < 1e-4 ? " (converged)" : " (NOT converged)") << "\n";
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + out_path);
    out << table.serialize();
    std::cout << "lineshape: wrote " << out_path << "\n";
    return 0;
}

// --------------------------------------------------------------------- test

json error_pair_json(const ErrorPair& e) {
    return json{{"miss_rate", e.miss_rate}, {"false_alarm", e.false_alarm}};
}

int cmd_test(const RunConfig& cfg, const std::string& out_path, bool phi_given,
             bool eps_given) {
    if (phi_given && eps_given) {
        throw ConflictError("--phi fixes the threshold; --eps1/--eps2 ask to choose one");
    }
    const TestSettings& ts = cfg.statistical;
    TestConfig tc;
    tc.bins = ts.bins;
    tc.shots = ts.shots;
    tc.time = ts.time;
    tc.step = ts.step;
    tc.spam = ts.spam;
    tc.validate();

    PhysicalParams p = cfg.physical;
    LineshapeCache cache(cfg.cache_root);
    const double reach = (0.5 * (tc.bins - 1) + 0.5) * tc.step + 0.5;
    const double half = std::ceil(reach / 0.25) * 0.25;
    const DetuningGrid grid{-half, half, 0.25};
    const LineshapeTable table = cache.get_or_compute(p, tc.time, grid);

    const PositionModels models = build_position_models(tc, table);
    const TestDistributions dists = test_distributions(models, tc.shots, tc.spam);
    const StatisticDistribution h1s[2] = {dists.h1_aligned, dists.h1_shifted};

    json report;
    report["config"] = cfg.to_json();
    report["bin_detunings_aligned"] = bin_detunings(tc);
    {
        TestConfig shifted = tc;
        shifted.position = LinePosition::HalfStepShifted;
        report["bin_detunings_shifted"] = bin_detunings(shifted);
    }
    report["model"] = {{"p_aligned", std::vector<double>(models.data_aligned.begin(),
                                                         models.data_aligned.end())},
                       {"p_shifted", std::vector<double>(models.data_shifted.begin(),
                                                         models.data_shifted.end())},
                       {"p_background", models.nominal.p_background}};
    report["distribution_atoms"] = {{"h1_aligned", dists.h1_aligned.atoms.size()},
                                    {"h1_shifted", dists.h1_shifted.atoms.size()},
                                    {"h2", dists.h2.atoms.size()}};

    double phi = 0.0;
    bool feasible = true;
    if (phi_given) {
        phi = *ts.phi;
    } else {
        const auto choice = find_threshold_worst_case(h1s, dists.h2, ts.eps1, ts.eps2);
        report["threshold_search"] = {{"eps1", ts.eps1},
                                      {"eps2", ts.eps2},
                                      {"found", choice.has_value()}};
        if (choice) {
            phi = choice->phi;
        } else {
            const ThresholdChoice best =
                best_threshold_by_score(h1s, dists.h2, ts.eps1, ts.eps2);
            phi = best.phi;
            feasible = false;
        }
    }
    report["phi"] = phi;

    const ErrorPair aligned = error_probabilities(dists.h1_aligned, dists.h2, phi);
    const ErrorPair shifted = error_probabilities(dists.h1_shifted, dists.h2, phi);
    const ErrorPair worst{std::max(aligned.miss_rate, shifted.miss_rate),
                          aligned.false_alarm};
    report["exact"] = {{"aligned", error_pair_json(aligned)},
                       {"shifted", error_pair_json(shifted)},
                       {"worst_case", error_pair_json(worst)}};
    report["feasible"] = feasible && worst.miss_rate <= ts.eps1 &&
                         worst.false_alarm <= ts.eps2;

    if (ts.mode == "mc") {
        BinModel aligned_model = models.nominal;
        const MonteCarloErrors mc_aligned = spam_monte_carlo(
            aligned_model, tc.shots, tc.spam, phi, ts.mc_samples, cfg.seed);
        BinModel shifted_model = models.nominal;
        shifted_model.p_signal = models.data_shifted;  // data from the shifted line
        const MonteCarloErrors mc_shifted = spam_monte_carlo(
            shifted_model, tc.shots, tc.spam, phi, ts.mc_samples, cfg.seed + 1);
        report["monte_carlo"] = {
            {"samples", ts.mc_samples},
            {"seed", cfg.seed},
            {"aligned",
             {{"miss_rate", mc_aligned.errors.miss_rate},
              {"false_alarm", mc_aligned.errors.false_alarm},
              {"se_miss_rate", mc_aligned.se_miss_rate},
              {"se_false_alarm", mc_aligned.se_false_alarm}}},
            {"shifted",
             {{"miss_rate", mc_shifted.errors.miss_rate},
              {"se_miss_rate", mc_shifted.se_miss_rate}}}};
    }
    json to_write = report;
    to_write["config_digest"] = cfg.digest();
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + out_path);
    out << to_write.dump(2) << "\n";
    std::cout << "test: phi = " << format_double(phi)
              << ", worst-case MR = " << format_double(worst.miss_rate)
              << ", FA = " << format_double(worst.false_alarm) << " -> " << out_path
              << "\n";
    return 0;
}

// ----------------------------------------------------------------- optimize

CsvTable sweep_csv(const SweepResult& result, int bins, double spam) {
    CsvTable t;
    t.columns = {"squeezing_db", "bins",  "spam",        "feasible", "v_hz_per_s",
                 "shots",        "time_T", "step_omega", "phi",      "miss_rate",
                 "false_alarm"};
    for (const SweepEntry& e : result.per_squeezing) {
        if (e.best) {
            const ScanPoint& b = *e.best;
            t.rows.push_back({e.squeezing_db, static_cast<double>(bins), spam, 1.0,
                              b.speed_hz, static_cast<double>(b.shots), b.time, b.step,
                              b.phi, b.errors.miss_rate, b.errors.false_alarm});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            t.rows.push_back({e.squeezing_db, static_cast<double>(bins), spam, 0.0, 0.0,
                              nan, nan, nan, nan, nan, nan});
        }
    }
    return t;
}

int cmd_optimize(const RunConfig& cfg, int bins, bool coarse, const std::string& out_dir) {
    const SearchSpace space = cfg.optimizer.search_space(bins, coarse);
    LineshapeCache cache(cfg.cache_root);
    OutputWriter writer(out_dir, cfg.digest(), cfg.seed);
    Timer timer;
    const SweepResult result = optimize(space, cfg.physical, cache,
                                        ExecutionMode::Parallel,
                                        [](const std::string& msg) {
                                            std::cout << msg << "\n" << std::flush;
                                        });
    writer.record_timing("optimize", timer.seconds());
    writer.write_csv("optima.csv", sweep_csv(result, bins, space.spam));

    json maps;
    maps["note"] = "per-squeezing optimum; full maps via the speed-map subcommand";
    maps["bins"] = bins;
    maps["spam"] = space.spam;
    json entries = json::array();
    bool any_feasible = false;
    for (const SweepEntry& e : result.per_squeezing) {
        json row{{"squeezing_db", e.squeezing_db}, {"feasible", e.best.has_value()}};
        if (e.best) {
            any_feasible = true;
            row["optimum"] = {{"v_hz_per_s", e.best->speed_hz},
                              {"shots", e.best->shots},
                              {"time_T", e.best->time},
                              {"step_omega", e.best->step},
                              {"phi", e.best->phi},
                              {"errors", error_pair_json(e.best->errors)}};
        }
        entries.push_back(row);
    }
    maps["results"] = entries;
    writer.write_json("optimize.json", maps);
    writer.finalize();
    std::cout << "optimize: wrote " << out_dir << " (" << format_double(timer.seconds())
              << " s)\n";
    return any_feasible ? 0 : 4;
}

// ---------------------------------------------------------------- speed-map

CsvTable speed_map_csv(const SpeedMap& map) {
    CsvTable t;
    t.columns = {"time_T", "step_omega", "v_hz_per_s", "feasible",
                 "phi",    "miss_rate",  "false_alarm"};
    std::size_t i = 0;
    for (const double time : map.t_values) {
        (void)time;
        for (const double ds : map.step_values) {
            (void)ds;
            const ScanPoint& p = map.cells[i++];
            t.rows.push_back({p.time, p.step, p.speed_hz, p.feasible ? 1.0 : 0.0, p.phi,
                              p.errors.miss_rate, p.errors.false_alarm});
        }
    }
    return t;
}

CsvTable fwhm_csv(const SpeedMap& map) {
    CsvTable t;
    t.columns = {"time_T", "fwhm_omega"};
    for (std::size_t i = 0; i < map.t_values.size(); ++i) {
        t.rows.push_back({map.t_values[i], map.fwhm[i]});
    }
    return t;
}

int cmd_speed_map(const RunConfig& cfg, int bins, int shots, double squeezing_db,
                  bool coarse, const std::string& out_dir) {
    SearchSpace space = cfg.optimizer.search_space(bins, coarse);
    space.squeezing_db = {squeezing_db};
    LineshapeCache cache(cfg.cache_root);
    OutputWriter writer(out_dir, cfg.digest(), cfg.seed);
    Timer timer;
    const SpeedMap map = speed_map(shots, space, cfg.physical, cache,
                                   ExecutionMode::Parallel, [](const std::string& msg) {
                                       std::cout << msg << "\n" << std::flush;
                                   });
    writer.record_timing("speed_map", timer.seconds());
    writer.write_csv("speed_map.csv", speed_map_csv(map));
    writer.write_csv("fwhm.csv", fwhm_csv(map));
    writer.finalize();
    const bool any = std::any_of(map.cells.begin(), map.cells.end(),
                                 [](const ScanPoint& p) { return p.feasible; });
    std::cout << "speed-map: wrote " << out_dir << " (" << format_double(timer.seconds())
              << " s)\n";
    return any ? 0 : 4;
}

// ---------------------------------------------------------- sweep-squeezing

int cmd_sweep(const RunConfig& cfg, const std::vector<int>& bins_list,
              const std::vector<double>& spam_list, bool coarse,
              const std::string& out_dir) {
    LineshapeCache cache(cfg.cache_root);
    OutputWriter writer(out_dir, cfg.digest(), cfg.seed);
    CsvTable all;
    all.columns = {"squeezing_db", "bins",  "spam",        "feasible", "v_hz_per_s",
                   "shots",        "time_T", "step_omega", "phi",      "miss_rate",
                   "false_alarm"};
    Timer timer;
    bool any_feasible = false;
    for (const int bins : bins_list) {
        for (const double spam : spam_list) {
            SearchSpace space = cfg.optimizer.search_space(bins, coarse);
            space.spam = spam;
            const SweepResult r = optimize(space, cfg.physical, cache,
                                           ExecutionMode::Parallel,
                                           [&](const std::string& msg) {
                                               std::cout << "L=" << bins
                                                         << " spam=" << spam << " " << msg
                                                         << "\n"
                                                         << std::flush;
                                           });
            const CsvTable part = sweep_csv(r, bins, spam);
            for (const auto& row : part.rows) {
                all.rows.push_back(row);
                if (row[3] > 0.0) any_feasible = true;
            }
        }
    }
    writer.record_timing("sweep_squeezing", timer.seconds());
    writer.write_csv("sweep_squeezing.csv", all);
    writer.finalize();
    std::cout << "sweep-squeezing: wrote " << out_dir << " ("
              << format_double(timer.seconds()) << " s)\n";
    return any_feasible ? 0 : 4;
}

// ---------------------------------------------------------------- reproduce

void reproduce_fig2(const RunConfig& cfg, OutputWriter& writer, LineshapeCache& cache) {
    Timer timer;
    const std::vector<double> profile_times{10.0, 20.0, 35.0, 50.0};
    std::vector<double> sweep_times;
    for (int i = 1; i <= 10; ++i) sweep_times.push_back(5.0 * i);
    const DetuningGrid grid{-15.0, 15.0, 0.25};
    const std::vector<LineshapeTable> tables =
        cache.get_or_compute_multi(cfg.physical, sweep_times, grid);

    CsvTable profile;
    profile.columns = {"delta_omega", "p0_t10", "p0_t20", "p0_t35", "p0_t50"};
    const auto table_at = [&](double t) -> const LineshapeTable& {
        for (const auto& tab : tables) {
            if (tab.time == t) return tab;
        }
        throw Error("fig2: missing table");
    };
    const LineshapeTable& t10 = table_at(10.0);
    for (std::size_t i = 0; i < t10.detunings.size(); ++i) {
        profile.rows.push_back({t10.detunings[i], t10.signal[i], table_at(20.0).signal[i],
                                table_at(35.0).signal[i], table_at(50.0).signal[i]});
    }
    writer.write_csv("fig2_profile.csv", profile);

    CsvTable fwhm_t{{"time_T", "fwhm_omega"}, {}};
    CsvTable bg_t{{"time_T", "p_background"}, {}};
    for (const auto& tab : tables) {
        fwhm_t.rows.push_back({tab.time, tab.fwhm()});
        bg_t.rows.push_back({tab.time, tab.background});
    }
    writer.write_csv("fig2_fwhm.csv", fwhm_t);
    writer.write_csv("fig2_background.csv", bg_t);
    (void)profile_times;
    writer.record_timing("fig2", timer.seconds());
}

void reproduce_fig3(const RunConfig& cfg, OutputWriter& writer, LineshapeCache& cache) {
    Timer timer;
    TestConfig tc;  // L=5, M=8, t=35T, step=5 Omega defaults
    const DetuningGrid grid{-15.0, 15.0, 0.25};
    const LineshapeTable table = cache.get_or_compute(cfg.physical, tc.time, grid);
    const PositionModels models = build_position_models(tc, table);

    json report;
    CsvTable curves;
    curves.columns = {"phi",           "mr_aligned_xi0",  "mr_shifted_xi0",
                      "mr_worst_xi0",  "fa_xi0",          "mr_aligned_xi01",
                      "mr_shifted_xi01", "mr_worst_xi01", "fa_xi01"};

    std::vector<std::vector<double>> columns;
    std::vector<double> phis;
    for (const double xi : {0.0, 0.1}) {
        const TestDistributions d = test_distributions(models, tc.shots, xi);
        if (phis.empty()) {
            std::set<double> support;
            for (const auto& dist : {d.h1_aligned, d.h1_shifted, d.h2}) {
                for (const Atom& a : dist.atoms) support.insert(a.value);
            }
            std::vector<double> values(support.begin(), support.end());
            std::vector<double> mids;
            mids.push_back(values.front() - 1.0);
            for (std::size_t i = 1; i < values.size(); ++i) {
                mids.push_back(0.5 * (values[i - 1] + values[i]));
            }
            mids.push_back(values.back() + 1.0);
            const std::size_t stride = std::max<std::size_t>(1, mids.size() / 800);
            for (std::size_t i = 0; i < mids.size(); i += stride) phis.push_back(mids[i]);
        }
        std::vector<double> mra, mrs, mrw, fa;
        for (const double phi : phis) {
            const ErrorPair a = error_probabilities(d.h1_aligned, d.h2, phi);
            const ErrorPair s = error_probabilities(d.h1_shifted, d.h2, phi);
            mra.push_back(a.miss_rate);
            mrs.push_back(s.miss_rate);
            mrw.push_back(std::max(a.miss_rate, s.miss_rate));
            fa.push_back(a.false_alarm);
        }
        columns.push_back(mra);
        columns.push_back(mrs);
        columns.push_back(mrw);
        columns.push_back(fa);

        const StatisticDistribution h1s[2] = {d.h1_aligned, d.h1_shifted};
        const auto choice = find_threshold_worst_case(h1s, d.h2, 0.01, 0.01);
        json entry{{"spam", xi}, {"threshold_exists", choice.has_value()}};
        if (choice) {
            entry["phi"] = choice->phi;
            entry["errors"] = error_pair_json(choice->errors);
        }
        report["confidence_1pct"].push_back(entry);
    }
    for (std::size_t i = 0; i < phis.size(); ++i) {
        curves.rows.push_back({phis[i], columns[0][i], columns[1][i], columns[2][i],
                               columns[3][i], columns[4][i], columns[5][i], columns[6][i],
                               columns[7][i]});
    }
    writer.write_csv("fig3_errors.csv", curves);
    writer.write_json("fig3_report.json", report);
    writer.record_timing("fig3", timer.seconds());
}

void reproduce_fig4(const RunConfig& cfg, OutputWriter& writer, LineshapeCache& cache,
                    bool coarse) {
    Timer timer;
    for (const int bins : {1, 3}) {
        for (const int shots : {8, 16}) {
            SearchSpace space = cfg.optimizer.search_space(bins, coarse);
            space.squeezing_db = {0.0};
            const SpeedMap map = speed_map(shots, space, cfg.physical, cache,
                                           ExecutionMode::Parallel,
                                           [&](const std::string& msg) {
                                               std::cout << "fig4 L=" << bins
                                                         << " M=" << shots << " " << msg
                                                         << "\n"
                                                         << std::flush;
                                           });
            writer.write_csv("fig4_L" + std::to_string(bins) + "_M" +
                                 std::to_string(shots) + ".csv",
                             speed_map_csv(map));
            if (bins == 1 && shots == 8) writer.write_csv("fig4_fwhm.csv", fwhm_csv(map));
        }
    }
    writer.record_timing("fig4", timer.seconds());
}

void reproduce_fig5(const RunConfig& cfg, OutputWriter& writer, LineshapeCache& cache,
                    bool coarse) {
    Timer timer;
    std::vector<double> dbs;
    if (coarse) {
        dbs = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    } else {
        for (int i = 0; i <= 10; ++i) dbs.push_back(static_cast<double>(i));
    }
    CsvTable all;
    all.columns = {"squeezing_db", "bins",  "spam",        "feasible", "v_hz_per_s",
                   "shots",        "time_T", "step_omega", "phi",      "miss_rate",
                   "false_alarm"};
    for (const int bins : {1, 3}) {
        for (const double spam : {0.0, 0.1}) {
            SearchSpace space = cfg.optimizer.search_space(bins, coarse);
            space.squeezing_db = dbs;
            space.spam = spam;
            const SweepResult r = optimize(space, cfg.physical, cache,
                                           ExecutionMode::Parallel,
                                           [&](const std::string& msg) {
                                               std::cout << "fig5 L=" << bins
                                                         << " spam=" << spam << " " << msg
                                                         << "\n"
                                                         << std::flush;
                                           });
            for (const auto& row : sweep_csv(r, bins, spam).rows) all.rows.push_back(row);
        }
    }
    writer.write_csv("fig5_curves.csv", all);
    writer.record_timing("fig5", timer.seconds());
}

int cmd_reproduce(const RunConfig& cfg, const std::string& figure, bool coarse,
                  const std::string& out_dir) {
    LineshapeCache cache(cfg.cache_root);
    OutputWriter writer(out_dir, cfg.digest(), cfg.seed);
    if (figure == "fig2") {
        reproduce_fig2(cfg, writer, cache);
    } else if (figure == "fig3") {
        reproduce_fig3(cfg, writer, cache);
    } else if (figure == "fig4") {
        reproduce_fig4(cfg, writer, cache, coarse);
    } else if (figure == "fig5") {
        reproduce_fig5(cfg, writer, cache, coarse);
    } else {
        throw SchemaError("reproduce: unknown figure " + figure);
    }
    writer.finalize();
    std::cout << "reproduce " << figure << ": wrote " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-logic spectroscopy line-search simulator"};
    app.require_subcommand(1);

    std::string config_path, cache_dir, out_path = "qls-out";
    std::optional<std::uint64_t> seed_flag;
    int threads = 0;
    app.add_option("--config", config_path, "JSON config file (strict schema)");
    app.add_option("--cache-dir", cache_dir, "lineshape cache root (default QLS_CACHE_DIR)");
    app.add_option("--seed", seed_flag, "top-level seed for all sampling");
    app.add_option("--threads", threads, "OpenMP thread count (0 = library default)");

    // lineshape
    auto* ls = app.add_subcommand("lineshape", "tabulate P0(t, delta) and background");
    double ls_time = 35.0, ls_db = 0.0;
    std::string ls_grid, ls_out = "lineshape.json";
    bool ls_serial = false, ls_check = false;
    ls->add_option("--time", ls_time, "interrogation time, units of T")->required();
    ls->add_option("--grid", ls_grid, "detuning grid lo:hi:step (units of Rabi)");
    ls->add_option("--squeezing-db", ls_db, "squeezing in dB");
    ls->add_option("--out", ls_out, "output table path (JSON)");
    ls->add_flag("--serial", ls_serial, "use the serial reference path");
    ls->add_flag("--check-convergence", ls_check, "re-run at N+5 and report drift");

    // test
    auto* tst = app.add_subcommand("test", "hypothesis test errors for one configuration");
    int t_bins = 5, t_shots = 8;
    double t_time = 35.0, t_step = 5.0, t_phi = 0.0, t_spam = 0.0, t_eps1 = 0.01,
           t_eps2 = 0.01;
    long t_samples = 200'000;
    std::string t_mode = "exact", t_out = "test_report.json";
    auto* phi_opt = tst->add_option("--phi", t_phi, "decision threshold");
    auto* eps1_opt = tst->add_option("--eps1", t_eps1, "miss-rate bound");
    auto* eps2_opt = tst->add_option("--eps2", t_eps2, "false-alarm bound");
    tst->add_option("--L", t_bins, "number of adjacent bins");
    tst->add_option("--M", t_shots, "shots per bin");
    tst->add_option("--time", t_time, "interrogation time, units of T");
    tst->add_option("--step", t_step, "frequency step, units of Rabi");
    tst->add_option("--spam", t_spam, "bit-flip probability xi");
    tst->add_option("--mode", t_mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
    tst->add_option("--samples", t_samples, "Monte Carlo samples per hypothesis");
    tst->add_option("--out", t_out, "report path (JSON)");

    // optimize
    auto* opt = app.add_subcommand("optimize", "maximize scan speed under error bounds");
    int o_bins = 1;
    double o_spam = 0.0;
    std::string o_db_list, o_grid_spec = "full", o_out = "qls-out";
    double o_eps1 = 0.01, o_eps2 = 0.01;
    opt->add_option("--L", o_bins, "number of adjacent bins")->required();
    opt->add_option("--spam", o_spam, "bit-flip probability xi");
    opt->add_option("--squeezing-db-list", o_db_list, "comma list of dB values");
    opt->add_option("--eps1", o_eps1, "miss-rate bound");
    opt->add_option("--eps2", o_eps2, "false-alarm bound");
    opt->add_option("--grid-spec", o_grid_spec, "full | coarse")
        ->check(CLI::IsMember({"full", "coarse"}));
    opt->add_option("--out", o_out, "output directory");

    // speed-map
    auto* sm = app.add_subcommand("speed-map", "speed over (t, step) at fixed M, L");
    int sm_bins = 1, sm_shots = 8;
    double sm_db = 0.0, sm_spam = 0.0;
    bool sm_coarse = false;
    std::string sm_out = "qls-out";
    sm->add_option("--M", sm_shots, "shots per bin")->required();
    sm->add_option("--L", sm_bins, "number of adjacent bins")->required();
    sm->add_option("--squeezing-db", sm_db, "squeezing in dB");
    sm->add_option("--spam", sm_spam, "bit-flip probability xi");
    sm->add_flag("--coarse", sm_coarse, "thinned grids");
    sm->add_option("--out", sm_out, "output directory");

    // sweep-squeezing
    auto* sw = app.add_subcommand("sweep-squeezing", "optimal speed versus squeezing");
    std::string sw_bins = "1,3", sw_spam = "0,0.1", sw_db_list, sw_out = "qls-out";
    bool sw_coarse = false;
    sw->add_option("--L-list", sw_bins, "comma list of bin counts");
    sw->add_option("--spam-list", sw_spam, "comma list of xi values");
    sw->add_option("--squeezing-db-list", sw_db_list, "comma list of dB values");
    sw->add_flag("--coarse", sw_coarse, "thinned grids");
    sw->add_option("--out", sw_out, "output directory");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "emit the data behind a reference figure");
    std::string rep_fig;
    bool rep_coarse = false;
    std::string rep_out = "qls-out";
    rep->add_option("figure", rep_fig, "fig2 | fig3 | fig4 | fig5")->required();
    rep->add_flag("--coarse", rep_coarse, "thinned grids for quick runs");
    rep->add_option("--out", rep_out, "output directory");

    // verify
    auto* ver = app.add_subcommand("verify", "re-check digests of an output directory");
    std::string ver_dir;
    ver->add_option("dir", ver_dir, "output directory with manifest.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threads > 0) omp_set_num_threads(threads);

        RunConfig cfg;
        if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (!cache_dir.empty()) cfg.cache_root = cache_dir;

        if (*ls) {
            return cmd_lineshape(cfg, ls_time, ls_grid, ls_db, ls_out, ls_serial, ls_check);
        }
        if (*tst) {
            // flags override the config file
            cfg.statistical.bins = t_bins;
            cfg.statistical.shots = t_shots;
            cfg.statistical.time = t_time;
            cfg.statistical.step = t_step;
            cfg.statistical.spam = t_spam;
            cfg.statistical.mode = t_mode;
            cfg.statistical.mc_samples = t_samples;
            cfg.statistical.eps1 = t_eps1;
            cfg.statistical.eps2 = t_eps2;
            if (phi_opt->count() > 0) cfg.statistical.phi = t_phi;
            cfg.statistical.validate();
            return cmd_test(cfg, t_out, phi_opt->count() > 0,
                            eps1_opt->count() > 0 || eps2_opt->count() > 0);
        }
        if (*opt) {
            cfg.optimizer.spam = o_spam;
            cfg.optimizer.eps1 = o_eps1;
            cfg.optimizer.eps2 = o_eps2;
            if (!o_db_list.empty()) {
                cfg.optimizer.squeezing_db_list = parse_double_list(o_db_list);
            }
            return cmd_optimize(cfg, o_bins, o_grid_spec == "coarse", o_out);
        }
        if (*sm) {
            cfg.optimizer.spam = sm_spam;
            return cmd_speed_map(cfg, sm_bins, sm_shots, sm_db, sm_coarse, sm_out);
        }
        if (*sw) {
            if (!sw_db_list.empty()) {
                cfg.optimizer.squeezing_db_list = parse_double_list(sw_db_list);
            }
            return cmd_sweep(cfg, parse_int_list(sw_bins), parse_double_list(sw_spam),
                             sw_coarse, sw_out);
        }
        if (*rep) {
            return cmd_reproduce(cfg, rep_fig, rep_coarse, rep_out);
        }
        if (*ver) {
            const auto problems = verify_output_dir(ver_dir);
            for (const auto& p : problems) std::cerr << "verify: " << p << "\n";
            std::cout << "verify: " << (problems.empty() ? "clean" : "FAILED") << "\n";
            return problems.empty() ? 0 : 3;
        }
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConflictError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
