#include "qls/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "qls/digest.hpp"
#include "qls/errors.hpp"
#include "qls/squeezed.hpp"

namespace qls {

std::vector<double> DetuningGrid::points() const {
    validate();
    std::vector<double> p;
    const long n = std::lround((hi - lo) / step);
    p.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        p.push_back(lo + static_cast<double>(i) * step);
    }
    if (p.back() > hi + 1e-9) p.pop_back();
    return p;
}

void DetuningGrid::validate() const {
    if (!(step > 0.0)) throw SchemaError("grid.step must be > 0");
    if (!(hi > lo)) throw SchemaError("grid requires hi > lo");
    if ((hi - lo) / step > 2e5) throw SchemaError("grid has too many points");
}

std::string DetuningGrid::canonical() const {
    return format_double(lo) + ":" + format_double(hi) + ":" + format_double(step);
}

double LineshapeTable::signal_at(double delta) const {
    if (detunings.empty()) throw OutOfRange("signal_at: empty table");
    if (delta < detunings.front() || delta > detunings.back()) {
        throw OutOfRange("signal_at: delta " + format_double(delta) + " outside [" +
                         format_double(detunings.front()) + ", " +
                         format_double(detunings.back()) + "]");
    }
    const auto it = std::lower_bound(detunings.begin(), detunings.end(), delta);
    const std::size_t i = static_cast<std::size_t>(it - detunings.begin());
    if (i < detunings.size() && detunings[i] == delta) return signal[i];
    const double x0 = detunings[i - 1], x1 = detunings[i];
    const double w = (delta - x0) / (x1 - x0);
    return signal[i - 1] + w * (signal[i] - signal[i - 1]);
}

double LineshapeTable::peak() const {
    return *std::max_element(signal.begin(), signal.end());
}

double LineshapeTable::fwhm(double min_peak) const {
    if (signal.size() < 3) throw NoPeak("fwhm: table too small");
    const auto it = std::max_element(signal.begin(), signal.end());
    const std::size_t ip = static_cast<std::size_t>(it - signal.begin());
    const double height = *it - background;
    if (height < min_peak) {
        throw NoPeak("fwhm: peak rises only " + format_double(height) +
                     " above background");
    }
    const double half = background + 0.5 * height;
    // walk outward from the peak to the first crossings below half height
    double left = detunings.front(), right = detunings.back();
    bool found_left = false, found_right = false;
    for (std::size_t i = ip; i-- > 0;) {
        if (signal[i] < half) {
            const double w = (half - signal[i]) / (signal[i + 1] - signal[i]);
            left = detunings[i] + w * (detunings[i + 1] - detunings[i]);
            found_left = true;
            break;
        }
    }
    for (std::size_t i = ip + 1; i < signal.size(); ++i) {
        if (signal[i] < half) {
            const double w = (signal[i - 1] - half) / (signal[i - 1] - signal[i]);
            right = detunings[i - 1] + w * (detunings[i] - detunings[i - 1]);
            found_right = true;
            break;
        }
    }
    if (!found_left || !found_right) {
        throw NoPeak("fwhm: half-maximum crossing outside the grid");
    }
    return right - left;
}

bool LineshapeTable::edges_reach_background(double frac) const {
    const double height = peak() - background;
    const double tol = frac * std::max(height, 1e-12);
    return std::abs(signal.front() - background) < tol &&
           std::abs(signal.back() - background) < tol;
}

namespace {

constexpr int lineshape_schema_version = 1;

// Signal values for one detuning at each requested time.
std::vector<double> point_kernel(const PhysicalParams& params, double delta,
                                 const std::vector<double>& times,
                                 const DensityMatrix& rho0, const SqueezedState& probe) {
    const LindbladGenerator gen(params, delta);
    const std::vector<DensityMatrix> states = evolve_multi(gen, rho0, times);
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        out[i] = povm_signal(states[i], probe);
    }
    return out;
}

}  // namespace

std::vector<LineshapeTable> compute_lineshape_multi(const PhysicalParams& params,
                                                    const std::vector<double>& times,
                                                    const DetuningGrid& grid,
                                                    ExecutionMode mode,
                                                    double max_truncation_loss) {
    params.validate();
    if (times.empty()) throw Error("compute_lineshape: no times requested");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || (i > 0 && times[i] <= times[i - 1])) {
            throw Error("compute_lineshape: times must be positive and ascending");
        }
    }
    const std::vector<double> deltas = grid.points();
    const SqueezedState probe = squeezed_state(params.squeezing_r, params.fock_cutoff,
                                               max_truncation_loss);
    const DensityMatrix rho0 = DensityMatrix::ground_squeezed(params, max_truncation_loss);

    // signal[ti][di]
    std::vector<std::vector<double>> signal(times.size(),
                                            std::vector<double>(deltas.size(), 0.0));
    std::exception_ptr failure = nullptr;

    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long di = 0; di < static_cast<long>(deltas.size()); ++di) {
            try {
                const std::vector<double> vals =
                    point_kernel(params, deltas[static_cast<std::size_t>(di)], times,
                                 rho0, probe);
                for (std::size_t ti = 0; ti < times.size(); ++ti) {
                    signal[ti][static_cast<std::size_t>(di)] = vals[ti];
                }
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    } else {
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const std::vector<double> vals = point_kernel(params, deltas[di], times,
                                                          rho0, probe);
            for (std::size_t ti = 0; ti < times.size(); ++ti) {
                signal[ti][di] = vals[ti];
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    // Background: the same dissipative evolution with H = 0.
    const LindbladGenerator bg_gen = LindbladGenerator::background(params);
    const std::vector<DensityMatrix> bg_states = evolve_multi(bg_gen, rho0, times);

    std::vector<LineshapeTable> tables;
    tables.reserve(times.size());
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        LineshapeTable t;
        t.params = params;
        t.time = times[ti];
        t.detunings = deltas;
        t.signal = std::move(signal[ti]);
        t.background = povm_signal(bg_states[ti], probe);
        t.truncation_loss = probe.truncation_loss;
        tables.push_back(std::move(t));
    }
    return tables;
}

LineshapeTable compute_lineshape(const PhysicalParams& params, double time,
                                 const DetuningGrid& grid, ExecutionMode mode) {
    return compute_lineshape_multi(params, {time}, grid, mode)[0];
}

double cutoff_convergence_check(const PhysicalParams& params, double time,
                                const std::vector<double>& probe_deltas) {
    PhysicalParams larger = params;
    larger.fock_cutoff += 5;
    const std::vector<double> times{time};
    double worst = 0.0;
    for (const double d : probe_deltas) {
        const DetuningGrid g{d, d + 1.0, 1.0};  // two points; we read the first
        const double a = compute_lineshape_multi(params, times, g,
                                                 ExecutionMode::Serial)[0].signal[0];
        const double b = compute_lineshape_multi(larger, times, g,
                                                 ExecutionMode::Serial)[0].signal[0];
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

nlohmann::json LineshapeTable::to_json() const {
    nlohmann::json j;
    j["schema_version"] = lineshape_schema_version;
    j["params"] = {{"rabi_frequency_hz", params.rabi_hz},
                   {"lamb_dicke", params.lamb_dicke},
                   {"decay_time", params.decay_time},
                   {"heating_time", params.heating_time},
                   {"fock_cutoff", params.fock_cutoff},
                   {"squeezing_r", params.squeezing_r}};
    j["time"] = time;
    j["detunings"] = detunings;
    j["signal"] = signal;
    j["background"] = background;
    j["truncation_loss"] = truncation_loss;
    return j;
}

LineshapeTable LineshapeTable::from_json(const nlohmann::json& j) {
    LineshapeTable t;
    if (j.at("schema_version").get<int>() != lineshape_schema_version) {
        throw CorruptCacheEntry("lineshape table: unsupported schema version");
    }
    const auto& p = j.at("params");
    t.params.rabi_hz = p.at("rabi_frequency_hz").get<double>();
    t.params.lamb_dicke = p.at("lamb_dicke").get<double>();
    t.params.decay_time = p.at("decay_time").get<double>();
    t.params.heating_time = p.at("heating_time").get<double>();
    t.params.fock_cutoff = p.at("fock_cutoff").get<int>();
    t.params.squeezing_r = p.at("squeezing_r").get<double>();
    t.time = j.at("time").get<double>();
    t.detunings = j.at("detunings").get<std::vector<double>>();
    t.signal = j.at("signal").get<std::vector<double>>();
    t.background = j.at("background").get<double>();
    t.truncation_loss = j.at("truncation_loss").get<double>();
    if (t.detunings.size() != t.signal.size()) {
        throw CorruptCacheEntry("lineshape table: detuning/signal length mismatch");
    }
    return t;
}

std::string LineshapeTable::serialize() const {
    nlohmann::json j = to_json();
    const std::string payload = j.dump();
    j["checksum"] = to_hex(fnv1a64(payload));
    return j.dump(2) + "\n";
}

LineshapeTable LineshapeTable::deserialize(const std::string& bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw CorruptCacheEntry(std::string("lineshape table: parse failure: ") + e.what());
    }
    try {
        const std::string stored = j.at("checksum").get<std::string>();
        j.erase("checksum");
        if (to_hex(fnv1a64(j.dump())) != stored) {
            throw CorruptCacheEntry("lineshape table: checksum mismatch");
        }
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw CorruptCacheEntry(std::string("lineshape table: bad fields: ") + e.what());
    }
}

}  // namespace qls
