#ifndef QLS_RUN_CONFIG_HPP
#define QLS_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qls/params.hpp"
#include "qls/scan.hpp"

namespace qls {

struct TestSettings {
    int bins = 5;
    int shots = 8;
    double time = 35.0;
    double step = 5.0;
    std::optional<double> phi;  // absent: pick by (eps1, eps2)
    double spam = 0.0;
    std::string mode = "exact";  // "exact" | "mc"
    long mc_samples = 200'000;
    double eps1 = 0.01;
    double eps2 = 0.01;

    void validate() const;
};

struct OptimizerSettings {
    std::vector<int> m_values;        // empty: defaults
    std::vector<double> t_values;     // empty: defaults
    std::vector<double> step_values;  // empty: defaults
    std::vector<double> squeezing_db_list{0.0};
    double spam = 0.0;
    double eps1 = 0.01;
    double eps2 = 0.01;
    double readout_overhead = 0.0;
    bool refine = true;

    SearchSpace search_space(int bins, bool coarse) const;
};

// Full run configuration: strict schema, unknown keys rejected, flags
// override file values at the CLI layer.
struct RunConfig {
    PhysicalParams physical;
    double squeezing_db = 0.0;  // interface mirror of physical.squeezing_r
    TestSettings statistical;
    OptimizerSettings optimizer;
    std::string output_dir = "qls-out";
    std::uint64_t seed = 1;
    std::string cache_root;  // empty: QLS_CACHE_DIR or system temp

    void validate() const;
    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);  // SchemaError on violations
    static RunConfig from_file(const std::string& path);
    std::string digest() const;
};

}  // namespace qls

#endif
