#include "qls/run_config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "qls/digest.hpp"
#include "qls/errors.hpp"

namespace qls {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& scope) {
    if (!j.is_object()) throw SchemaError(scope + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw SchemaError("unknown key " + (scope.empty() ? key : scope + "." + key));
        }
    }
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out, const std::string& scope) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("bad value for " + scope + "." + key);
    }
}

}  // namespace

void TestSettings::validate() const {
    TestConfig c;
    c.bins = bins;
    c.shots = shots;
    c.time = time;
    c.step = step;
    c.spam = spam;
    c.validate();
    if (mode != "exact" && mode != "mc") throw SchemaError("statistical.mode must be exact|mc");
    if (mc_samples < 1) throw SchemaError("statistical.mc_samples must be >= 1");
    if (!(eps1 > 0.0 && eps1 < 1.0 && eps2 > 0.0 && eps2 < 1.0)) {
        throw SchemaError("statistical.eps bounds must lie in (0, 1)");
    }
}

SearchSpace OptimizerSettings::search_space(int bins, bool coarse) const {
    SearchSpace s = coarse ? SearchSpace::coarse(bins) : SearchSpace::defaults(bins);
    if (!m_values.empty()) s.m_values = m_values;
    if (!t_values.empty()) s.t_values = t_values;
    if (!step_values.empty()) s.step_values = step_values;
    s.squeezing_db = squeezing_db_list;
    s.spam = spam;
    s.eps1 = eps1;
    s.eps2 = eps2;
    s.readout_overhead = readout_overhead;
    if (coarse) s.refine = false;
    else s.refine = refine;
    s.validate();
    return s;
}

void RunConfig::validate() const {
    physical.validate();
    statistical.validate();
    if (output_dir.empty()) throw SchemaError("output_dir must be nonempty");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    reject_unknown(j, {"physical", "statistical", "optimizer", "output_dir", "seed",
                       "cache_root"},
                   "");
    if (j.contains("physical")) {
        const auto& p = j.at("physical");
        reject_unknown(p, {"rabi_frequency_hz", "lamb_dicke", "decay_time", "heating_time",
                           "fock_cutoff", "squeezing_db"},
                       "physical");
        read_field(p, "rabi_frequency_hz", c.physical.rabi_hz, "physical");
        read_field(p, "lamb_dicke", c.physical.lamb_dicke, "physical");
        read_field(p, "decay_time", c.physical.decay_time, "physical");
        read_field(p, "heating_time", c.physical.heating_time, "physical");
        read_field(p, "fock_cutoff", c.physical.fock_cutoff, "physical");
        read_field(p, "squeezing_db", c.squeezing_db, "physical");
        c.physical.squeezing_r = squeezing_db_to_r(c.squeezing_db);
    }
    if (j.contains("statistical")) {
        const auto& s = j.at("statistical");
        reject_unknown(s, {"bins", "shots", "time", "step", "phi", "spam", "mode",
                           "mc_samples", "eps1", "eps2"},
                       "statistical");
        read_field(s, "bins", c.statistical.bins, "statistical");
        read_field(s, "shots", c.statistical.shots, "statistical");
        read_field(s, "time", c.statistical.time, "statistical");
        read_field(s, "step", c.statistical.step, "statistical");
        if (s.contains("phi") && !s.at("phi").is_null()) {
            double phi = 0.0;
            read_field(s, "phi", phi, "statistical");
            c.statistical.phi = phi;
        }
        read_field(s, "spam", c.statistical.spam, "statistical");
        read_field(s, "mode", c.statistical.mode, "statistical");
        read_field(s, "mc_samples", c.statistical.mc_samples, "statistical");
        read_field(s, "eps1", c.statistical.eps1, "statistical");
        read_field(s, "eps2", c.statistical.eps2, "statistical");
    }
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        reject_unknown(o, {"m_values", "t_values", "step_values", "squeezing_db_list",
                           "spam", "eps1", "eps2", "readout_overhead", "refine"},
                       "optimizer");
        read_field(o, "m_values", c.optimizer.m_values, "optimizer");
        read_field(o, "t_values", c.optimizer.t_values, "optimizer");
        read_field(o, "step_values", c.optimizer.step_values, "optimizer");
        read_field(o, "squeezing_db_list", c.optimizer.squeezing_db_list, "optimizer");
        read_field(o, "spam", c.optimizer.spam, "optimizer");
        read_field(o, "eps1", c.optimizer.eps1, "optimizer");
        read_field(o, "eps2", c.optimizer.eps2, "optimizer");
        read_field(o, "readout_overhead", c.optimizer.readout_overhead, "optimizer");
        read_field(o, "refine", c.optimizer.refine, "optimizer");
    }
    read_field(j, "output_dir", c.output_dir, "");
    read_field(j, "seed", c.seed, "");
    read_field(j, "cache_root", c.cache_root, "");
    c.validate();
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("config parse failure: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["physical"] = {{"rabi_frequency_hz", physical.rabi_hz},
                     {"lamb_dicke", physical.lamb_dicke},
                     {"decay_time", physical.decay_time},
                     {"heating_time", physical.heating_time},
                     {"fock_cutoff", physical.fock_cutoff},
                     {"squeezing_db", squeezing_db}};
    j["statistical"] = {{"bins", statistical.bins},
                        {"shots", statistical.shots},
                        {"time", statistical.time},
                        {"step", statistical.step},
                        {"spam", statistical.spam},
                        {"mode", statistical.mode},
                        {"mc_samples", statistical.mc_samples},
                        {"eps1", statistical.eps1},
                        {"eps2", statistical.eps2}};
    if (statistical.phi) j["statistical"]["phi"] = *statistical.phi;
    j["optimizer"] = {{"m_values", optimizer.m_values},
                      {"t_values", optimizer.t_values},
                      {"step_values", optimizer.step_values},
                      {"squeezing_db_list", optimizer.squeezing_db_list},
                      {"spam", optimizer.spam},
                      {"eps1", optimizer.eps1},
                      {"eps2", optimizer.eps2},
                      {"readout_overhead", optimizer.readout_overhead},
                      {"refine", optimizer.refine}};
    j["output_dir"] = output_dir;
    j["seed"] = seed;
    j["cache_root"] = cache_root;
    return j;
}

std::string RunConfig::digest() const {
    return to_hex(fnv1a64(to_json().dump()));
}

}  // namespace qls
