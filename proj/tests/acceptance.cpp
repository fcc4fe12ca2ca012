// Acceptance suite: one line per criterion, [PASS]/[FAIL] with measured
// values. Exit code is the number of failed checks.
//
// Heavy sweeps run on thinned grids sized for a small CI box; every
// tolerance is asserted exactly as specified.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <vector>

#include "brute_force.hpp"
#include "oracle_helpers.hpp"
#include "qls/cache.hpp"
#include "qls/digest.hpp"
#include "qls/hypothesis.hpp"
#include "qls/report_io.hpp"
#include "qls/rng.hpp"
#include "qls/run_config.hpp"
#include "qls/scan.hpp"

using namespace qls;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n" << std::flush;
    if (!ok) ++g_failures;
}

void note(const std::string& text) { std::cout << "       " << text << "\n" << std::flush; }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string fmt(double v) { return format_double(v); }

// ------------------------------------------------------------------ shared

struct Shared {
    PhysicalParams params;            // reference defaults, r = 0
    LineshapeCache cache;
    std::vector<LineshapeTable> fig2_tables;  // t = 5..50 step 5, grid +-15
    const LineshapeTable* table35 = nullptr;

    explicit Shared(const fs::path& root) : cache(root) {}
};

const LineshapeTable& table_at(const std::vector<LineshapeTable>& ts, double t) {
    for (const auto& tab : ts) {
        if (tab.time == t) return tab;
    }
    throw Error("acceptance: missing table t=" + fmt(t));
}

// -------------------------------------------------------- criterion 1: fig2

void criterion_1(Shared& sh) {
    Timer timer;
    std::vector<double> times;
    for (int i = 1; i <= 10; ++i) times.push_back(5.0 * i);
    sh.fig2_tables = sh.cache.get_or_compute_multi(sh.params, times,
                                                   DetuningGrid{-15.0, 15.0, 0.25});
    sh.table35 = &table_at(sh.fig2_tables, 35.0);
    const double elapsed = timer.s();

    const std::vector<double> probe_times{10.0, 20.0, 35.0, 50.0};
    bool fwhm_up = true, bg_up = true;
    double prev_fwhm = 0.0, prev_bg = -1.0;
    std::string fwhm_list, bg_list;
    for (const double t : probe_times) {
        const LineshapeTable& tab = table_at(sh.fig2_tables, t);
        const double w = tab.fwhm();
        fwhm_up = fwhm_up && w > prev_fwhm;
        bg_up = bg_up && tab.background > prev_bg;
        prev_fwhm = w;
        prev_bg = tab.background;
        fwhm_list += (fwhm_list.empty() ? "" : ", ") + fmt(w);
        bg_list += (bg_list.empty() ? "" : ", ") + fmt(tab.background);
    }
    check("criterion 1a: FWHM strictly increasing over t/T in {10,20,35,50}", fwhm_up,
          "FWHM/Omega = " + fwhm_list);
    check("criterion 1b: background strictly increasing", bg_up, "P_bg = " + bg_list);

    // stated small-t formula: P_bg within 20% of 2t/tau_h for t <= 10T
    const double bg10 = table_at(sh.fig2_tables, 10.0).background;
    const double formula = 2.0 * 10.0 / sh.params.heating_time;
    const bool bg_formula_ok = std::abs(bg10 - formula) <= 0.2 * formula;
    check("criterion 1c: P_bg(10T) within 20% of 2t/tau_h", bg_formula_ok,
          "P_bg = " + fmt(bg10) + " vs 2t/tau_h = " + fmt(formula));
    if (!bg_formula_ok) {
        note("the heating master equation gives P_bg = (t/tau_h)/(1 + t/tau_h) exactly;");
        note("measured P_bg tracks t/tau_h = " + fmt(10.0 / sh.params.heating_time) +
             " (8.3 phonons/s at tau_h = 600 T), not 2t/tau_h");
    }
    check("criterion 1d: full dataset runtime < 2 min at N = 30", elapsed < 120.0,
          fmt(elapsed) + " s");
}

// --------------------------------------------- criterion 2: dense exp oracle

void criterion_2(const Shared& sh) {
    Timer timer;
    PhysicalParams p = sh.params;
    p.fock_cutoff = 15;
    const DensityMatrix rho0 = DensityMatrix::ground_squeezed(p);
    Rng rng(77);
    double worst = 0.0;
    int points = 0;
    for (int d = 0; d < 3; ++d) {
        const double delta = -10.0 + 20.0 * rng.uniform();
        const Eigen::MatrixXcd liou = qls_test::dense_liouvillian(p, delta);
        const qls_test::EigOracle oracle(liou);
        const LindbladGenerator gen(p, delta);
        const int reps = d == 0 ? 4 : 3;
        for (int i = 0; i < reps; ++i) {
            const double t = 1.0 + 39.0 * rng.uniform();
            const Eigen::MatrixXcd expected = oracle.at(rho0.m, t);
            const DensityMatrix got = evolve(gen, rho0, t);
            worst = std::max(worst, (got.m - expected).cwiseAbs().maxCoeff());
            ++points;
        }
    }
    check("criterion 2: stepper vs dense exp(Lt) at N=15, ten random points, 1e-6",
          points == 10 && worst < 1e-6,
          "max |diff| = " + fmt(worst) + ", " + fmt(timer.s()) + " s");
}

// --------------------------------------- criterion 3: squeezed-state formula

void criterion_3() {
    double worst = 0.0;
    for (const double db : {0.0, 3.0, 6.0, 8.0, 10.0}) {
        const double r = squeezing_db_to_r(db);
        const SqueezedState s = squeezed_state(r, 40, 1e-2);
        for (int n = 0; 2 * n < 40; ++n) {
            const double expected =
                r == 0.0 ? (n == 0 ? 1.0 : 0.0)
                         : std::exp(0.5 * std::log(1.0 / std::cosh(r)) +
                                    n * std::log(std::tanh(r)) +
                                    0.5 * std::lgamma(2.0 * n + 1.0) -
                                    n * std::log(2.0) - std::lgamma(n + 1.0));
            worst = std::max(worst, std::abs(s.amplitudes[2 * n] - expected));
        }
    }
    check("criterion 3: squeezed amplitudes match the closed form to 1e-10 at "
          "{0,3,6,8,10} dB",
          worst < 1e-10, "max |diff| = " + fmt(worst));
}

// ------------------------------------- criterion 4: brute-force enumeration

void criterion_4(const Shared& sh) {
    struct Case {
        int bins, shots;
    };
    double worst_atom = 0.0, worst_err = 0.0;
    bool sizes_ok = true;
    for (const Case c : {Case{1, 8}, Case{2, 6}, Case{3, 4}}) {
        BinModel m;
        m.p_signal = Eigen::VectorXd(c.bins);
        for (int k = 0; k < c.bins; ++k) {
            // bins read off the computed t = 35 T lineshape at step 5 Omega
            m.p_signal[k] = sh.table35->signal_at(5.0 * (k - 0.5 * (c.bins - 1)));
        }
        m.p_background = sh.table35->background;
        m.apply_floor();
        for (const Hypothesis hyp :
             {Hypothesis::SignalPresent, Hypothesis::BackgroundOnly}) {
            const StatisticDistribution dist = statistic_distribution(m, c.shots, hyp);
            const auto bf = qls_test::brute_force(m, c.shots, 0.35);
            const auto& atoms =
                hyp == Hypothesis::SignalPresent ? bf.atoms_h1 : bf.atoms_h2;
            if (dist.atoms.size() != atoms.size()) {
                sizes_ok = false;
                continue;
            }
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                worst_atom = std::max({worst_atom,
                                       std::abs(dist.atoms[i].value - atoms[i].value),
                                       std::abs(dist.atoms[i].prob - atoms[i].prob)});
            }
            if (hyp == Hypothesis::SignalPresent) {
                const StatisticDistribution h2 =
                    statistic_distribution(m, c.shots, Hypothesis::BackgroundOnly);
                const ErrorPair e = error_probabilities(dist, h2, 0.35);
                worst_err = std::max({worst_err, std::abs(e.miss_rate - bf.miss_rate),
                                      std::abs(e.false_alarm - bf.false_alarm)});
            }
        }
    }
    check("criterion 4: exact distribution equals brute force for (L,M) in "
          "{(1,8),(2,6),(3,4)}",
          sizes_ok && worst_atom < 1e-12, "max atom diff = " + fmt(worst_atom));
    check("criterion 4b: MR/FA match brute force to 1e-12", worst_err < 1e-12,
          "max err diff = " + fmt(worst_err));
}

// ---------------------------------------------- criterion 5: fig3 thresholds

void criterion_5(const Shared& sh) {
    TestConfig tc;  // L=5 M=8 t=35 step=5 defaults
    const PositionModels models = build_position_models(tc, *sh.table35);

    const TestDistributions clean = test_distributions(models, tc.shots, 0.0);
    const StatisticDistribution h1c[2] = {clean.h1_aligned, clean.h1_shifted};
    const auto phi_clean = find_threshold_worst_case(h1c, clean.h2, 0.01, 0.01);
    const bool clean_ok = phi_clean.has_value() &&
                          phi_clean->errors.miss_rate < 0.01 &&
                          phi_clean->errors.false_alarm < 0.01;
    check("criterion 5a: noiseless Fig.-3 config reaches MR < 1% and FA < 1%", clean_ok,
          phi_clean ? "phi = " + fmt(phi_clean->phi) + ", MR = " +
                          fmt(phi_clean->errors.miss_rate) + ", FA = " +
                          fmt(phi_clean->errors.false_alarm)
                    : "no threshold found");

    const TestDistributions noisy = test_distributions(models, tc.shots, 0.1);
    const StatisticDistribution h1n[2] = {noisy.h1_aligned, noisy.h1_shifted};
    const ThresholdChoice best_noisy = best_threshold_by_score(h1n, noisy.h2, 0.01, 0.01);
    const bool noisy_blocked = best_noisy.errors.miss_rate > 0.01 ||
                               best_noisy.errors.false_alarm > 0.01;
    check("criterion 5b: no threshold satisfies 1%/1% at xi = 0.1 (exact mismatched model)",
          noisy_blocked, "best achievable MR = " + fmt(best_noisy.errors.miss_rate) +
                             ", FA = " + fmt(best_noisy.errors.false_alarm));

    // monotonicity over the full threshold sweep
    std::set<double> support;
    for (const auto* d : {&clean.h1_aligned, &clean.h1_shifted, &clean.h2}) {
        for (const Atom& a : d->atoms) support.insert(a.value);
    }
    bool monotone = true;
    double prev_mr = 2.0, prev_fa = -1.0;
    std::vector<double> sweep(support.begin(), support.end());
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
        const double phi = 0.5 * (sweep[i] + sweep[i + 1]);
        const ErrorPair a = error_probabilities(clean.h1_aligned, clean.h2, phi);
        const ErrorPair s = error_probabilities(clean.h1_shifted, clean.h2, phi);
        const double mr = std::max(a.miss_rate, s.miss_rate);
        // MR may only fall and FA only rise as phi increases
        if (mr > prev_mr + 1e-14 || a.false_alarm < prev_fa - 1e-14) monotone = false;
        prev_mr = mr;
        prev_fa = a.false_alarm;
    }
    check("criterion 5c: MR non-increasing and FA non-decreasing in phi", monotone,
          std::to_string(sweep.size()) + " support points swept");
}

// -------------------------------------------- criterion 6: MC vs exact SPAM

void criterion_6(const Shared& sh) {
    Timer timer;
    BinModel base;
    base.p_signal = Eigen::VectorXd(2);
    base.p_signal << sh.table35->signal_at(0.0), sh.table35->signal_at(5.0);
    base.p_background = sh.table35->background;
    base.apply_floor();

    bool all_ok = true;
    double worst_pull = 0.0;
    const long samples = 200'000;
    std::uint64_t stream = 0;
    for (const double xi : {0.0, 0.05, 0.1}) {
        for (const int shots : {4, 8, 16}) {
            const auto [h1, h2] = spam_exact(base, shots, xi);
            const double phi =
                best_threshold_by_score(std::span<const StatisticDistribution>(&h1, 1),
                                        h2, 0.01, 0.01)
                    .phi;
            const ErrorPair exact = error_probabilities(h1, h2, phi);
            const MonteCarloErrors mc =
                spam_monte_carlo(base, shots, xi, phi, samples, 9000 + stream++);
            const double pull_mr =
                std::abs(mc.errors.miss_rate - exact.miss_rate) /
                std::max(mc.se_miss_rate, 1e-9);
            const double pull_fa =
                std::abs(mc.errors.false_alarm - exact.false_alarm) /
                std::max(mc.se_false_alarm, 1e-9);
            worst_pull = std::max({worst_pull, pull_mr, pull_fa});
            if (pull_mr > 4.0 || pull_fa > 4.0) all_ok = false;
        }
    }
    check("criterion 6: Monte Carlo within 4 SE of exact SPAM on a 3x3 (xi, M) grid",
          all_ok, "worst pull = " + fmt(worst_pull) + " SE, 2e5 samples, " +
                      fmt(timer.s()) + " s");
}

// ------------------------------------------- criterion 7: fig4 structure

struct MapSummary {
    double max_feasible_v = 0.0;
    int feasible = 0;
    bool corner_infeasible = true;  // small-t / large-step quadrant
};

MapSummary summarize(const SpeedMap& map) {
    MapSummary s;
    const double t_lo = map.t_values[map.t_values.size() / 4];
    const double ds_hi = map.step_values[(3 * map.step_values.size()) / 4];
    std::size_t i = 0;
    for (const double t : map.t_values) {
        for (const double ds : map.step_values) {
            const ScanPoint& p = map.cells[i++];
            if (p.feasible) {
                ++s.feasible;
                s.max_feasible_v = std::max(s.max_feasible_v, p.speed_hz);
                if (t <= t_lo && ds >= ds_hi) s.corner_infeasible = false;
            }
        }
    }
    return s;
}

void criterion_7(Shared& sh) {
    Timer timer;
    std::map<std::pair<int, int>, MapSummary> summaries;
    // one wide detuning grid (sized for L = 3) so every panel shares the cache
    const DetuningGrid grid = SearchSpace::coarse(3).lineshape_grid(0.5);
    for (const int bins : {1, 3}) {
        const SearchSpace space = SearchSpace::coarse(bins);
        const std::vector<LineshapeTable> tables =
            sh.cache.get_or_compute_multi(sh.params, space.t_values, grid);
        for (const int shots : {8, 16}) {
            SpeedMap map;
            map.shots = shots;
            map.bins = bins;
            map.t_values = space.t_values;
            map.step_values = space.step_values;
            for (const double t : space.t_values) {
                const LineshapeTable& tab = table_at(tables, t);
                for (const double ds : space.step_values) {
                    map.cells.push_back(
                        evaluate_point(shots, t, ds, bins, 0.0, 0.01, 0.01, tab));
                }
            }
            summaries[{bins, shots}] = summarize(map);
        }
    }
    const MapSummary& l1m8 = summaries[{1, 8}];
    const MapSummary& l1m16 = summaries[{1, 16}];
    const MapSummary& l3m8 = summaries[{3, 8}];
    const MapSummary& l3m16 = summaries[{3, 16}];
    const double l1_best = std::max(l1m8.max_feasible_v, l1m16.max_feasible_v);
    const double l3_best = std::max(l3m8.max_feasible_v, l3m16.max_feasible_v);
    check("criterion 7a: L=3 maximal feasible speed strictly exceeds L=1",
          l3_best > l1_best,
          "L3 = " + fmt(l3_best) + " Hz/s vs L1 = " + fmt(l1_best) + " Hz/s");
    check("criterion 7b: small-t / large-step corner is infeasible in every panel",
          l1m8.corner_infeasible && l1m16.corner_infeasible && l3m8.corner_infeasible &&
              l3m16.corner_infeasible);
    check("criterion 7c: more shots unlock a larger feasible region",
          l1m16.feasible >= l1m8.feasible && l3m16.feasible >= l3m8.feasible,
          "L1: " + std::to_string(l1m8.feasible) + " -> " + std::to_string(l1m16.feasible) +
              ", L3: " + std::to_string(l3m8.feasible) + " -> " +
              std::to_string(l3m16.feasible) + ", " + fmt(timer.s()) + " s");
}

// ---------------------------------------------- criterion 8: fig5 headline

void criterion_8(Shared& sh) {
    Timer timer;
    const std::vector<double> dbs{0.0, 4.0, 6.0, 8.0, 10.0};
    // per (bins, spam): speed per dB
    std::map<std::pair<int, int>, std::vector<double>> curves;  // spam key: 0 or 1
    // the L = 3 sized grid is shared by every curve (and by criterion 7)
    const DetuningGrid grid = SearchSpace::coarse(3).lineshape_grid(0.5);
    for (const int bins : {1, 3}) {
        for (const int spam10 : {0, 1}) {
            SearchSpace space = SearchSpace::coarse(bins);
            space.spam = spam10 ? 0.1 : 0.0;
            std::vector<double> v;
            for (const double db : dbs) {
                PhysicalParams p = sh.params;
                p.squeezing_r = squeezing_db_to_r(db);
                const std::vector<LineshapeTable> tables =
                    sh.cache.get_or_compute_multi(p, space.t_values, grid);
                std::optional<ScanPoint> best;
                for (const double t : space.t_values) {
                    const LineshapeTable& tab = table_at(tables, t);
                    for (const double ds : space.step_values) {
                        for (const int m : space.m_values) {
                            const double cand = scan_speed_hz_per_s(ds, m, t, sh.params.rabi_hz);
                            if (best && cand <= best->speed_hz) continue;
                            const ScanPoint pt = evaluate_point(
                                m, t, ds, bins, space.spam, 0.01, 0.01, tab);
                            if (pt.feasible) best = pt;
                        }
                    }
                }
                v.push_back(best ? best->speed_hz : 0.0);
            }
            curves[{bins, spam10}] = v;
        }
    }

    const auto& l1_clean = curves[{1, 0}];
    const auto& l1_noisy = curves[{1, 1}];
    const auto& l3_clean = curves[{3, 0}];
    const auto& l3_noisy = curves[{3, 1}];
    const double v1 = l1_clean[0];                 // L=1, r=0, noiseless
    const double v3 = l3_clean[3];                 // L=3, 8 dB, noiseless
    const double ref1 = 232e3, ref3 = 2.2e6;

    const bool b1 = std::abs(v1 - ref1) <= 0.30 * ref1;
    check("criterion 8a: noiseless L=1 r=0 optimum within 30% of 232 kHz/s", b1,
          "v = " + fmt(v1 / 1e3) + " kHz/s");
    if (!b1) {
        note("with 10% SPAM the same configuration gives " + fmt(l1_noisy[0] / 1e3) +
             " kHz/s; the reference value matches the noisy baseline, not the");
        note("noiseless one, under this model (see decision notes)");
    }
    const bool b2 = std::abs(v3 - ref3) <= 0.30 * ref3;
    check("criterion 8b: L=3 8 dB optimum within 30% of 2.2 MHz/s", b2,
          "v = " + fmt(v3 / 1e6) + " MHz/s");
    const bool b3 = v3 / v1 >= 5.0;
    check("criterion 8c: speedup ratio >= 5x", b3, "ratio = " + fmt(v3 / v1));
    if (!b3) {
        note("ratio against the noisy L=1 baseline is " + fmt(v3 / l1_noisy[0]));
    }

    // unimodal curve peaking at 8 +- 2 dB
    const auto peak_db = [&](const std::vector<double>& v) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] > v[arg]) arg = i;
        }
        return dbs[arg];
    };
    const auto unimodal = [](const std::vector<double>& v) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i] > v[arg]) arg = i;
        }
        for (std::size_t i = 1; i <= arg; ++i) {
            if (v[i] < v[i - 1] - 1e-9) return false;
        }
        for (std::size_t i = arg + 1; i < v.size(); ++i) {
            if (v[i] > v[i - 1] + 1e-9) return false;
        }
        return true;
    };
    const double pk = peak_db(l3_clean);
    check("criterion 8d: L=3 noiseless curve unimodal with peak at 8 +- 2 dB",
          unimodal(l3_clean) && pk >= 6.0 && pk <= 10.0, "peak at " + fmt(pk) + " dB");

    bool halving_ok = true;
    std::string factors;
    for (std::size_t i = 0; i < dbs.size(); ++i) {
        const double f = l3_clean[i] / std::max(l3_noisy[i], 1.0);
        halving_ok = halving_ok && f >= 1.5 && f <= 3.0;
        factors += (factors.empty() ? "" : ", ") + fmt(f);
    }
    check("criterion 8e: 10% SPAM slows the L=3 search by a factor in [1.5, 3]",
          halving_ok, "factors = " + factors);

    bool close_ok = true;
    std::string ratios;
    for (std::size_t i = 0; i < dbs.size(); ++i) {
        const double rel = std::abs(l1_clean[i] - l3_noisy[i]) /
                           std::max(l3_noisy[i], 1.0);
        close_ok = close_ok && rel <= 0.30;
        ratios += (ratios.empty() ? "" : ", ") + fmt(rel);
    }
    check("criterion 8f: noiseless L=1 curve within 30% of the L=3 10%-SPAM curve",
          close_ok, "pointwise |rel diff| = " + ratios);
    check("criterion 8g: coarse sweep runtime < 20 min", timer.s() < 1200.0,
          fmt(timer.s()) + " s");
}

// -------------------------------------------------- criterion 9: determinism

void criterion_9(Shared& sh) {
    const auto run_once = [&](const fs::path& dir) {
        RunConfig cfg;
        cfg.seed = 4242;
        OutputWriter writer(dir, cfg.digest(), cfg.seed);

        TestConfig tc;
        const PositionModels models = build_position_models(tc, *sh.table35);
        const TestDistributions d = test_distributions(models, tc.shots, 0.1);
        CsvTable curve{{"phi", "mr", "fa"}, {}};
        std::set<double> support;
        for (const Atom& a : d.h1_aligned.atoms) support.insert(a.value);
        int k = 0;
        for (const double v : support) {
            if (++k % 50 != 0) continue;
            const ErrorPair e = error_probabilities(d.h1_aligned, d.h2, v);
            curve.rows.push_back({v, e.miss_rate, e.false_alarm});
        }
        writer.write_csv("curve.csv", curve);

        const MonteCarloErrors mc =
            spam_monte_carlo(models.nominal, tc.shots, 0.1, 0.0, 50'000, cfg.seed);
        nlohmann::json rep{{"mr", mc.errors.miss_rate},
                           {"fa", mc.errors.false_alarm},
                           {"se_mr", mc.se_miss_rate}};
        writer.write_json("mc.json", rep);
        writer.record_timing("run", 0.0);
        writer.finalize();
    };

    const fs::path base = fs::temp_directory_path() / "qls-acceptance-det";
    fs::remove_all(base);
    run_once(base / "a");
    run_once(base / "b");

    const auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    const bool csv_same = read(base / "a" / "curve.csv") == read(base / "b" / "curve.csv");
    const bool mc_same = read(base / "a" / "mc.json") == read(base / "b" / "mc.json");

    // manifests match after dropping wall-clock timings
    auto scrub = [&](const fs::path& p) {
        nlohmann::json j = nlohmann::json::parse(read(p));
        j.erase("timings");
        return j.dump();
    };
    const bool manifest_same =
        scrub(base / "a" / "manifest.json") == scrub(base / "b" / "manifest.json");
    check("criterion 9: identical config and seed give bit-identical outputs",
          csv_same && mc_same && manifest_same);
    fs::remove_all(base);
}

}  // namespace

int main() {
    std::cout << "acceptance suite: " << omp_get_max_threads() << " threads, N = 30\n";
    const fs::path cache_root =
        fs::temp_directory_path() / "qls-acceptance-cache";
    Shared sh(cache_root);
    Timer total;
    try {
        criterion_1(sh);
        criterion_2(sh);
        criterion_3();
        criterion_4(sh);
        criterion_5(sh);
        criterion_6(sh);
        criterion_7(sh);
        criterion_8(sh);
        criterion_9(sh);
    } catch (const std::exception& e) {
        check("acceptance suite completed", false, e.what());
    }
    std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                  : "acceptance: " + std::to_string(g_failures) +
                                        " check(s) failed")
              << " in " << fmt(total.s()) << " s\n";
    return g_failures;
}
