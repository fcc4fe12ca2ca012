#ifndef QLS_REPORT_IO_HPP
#define QLS_REPORT_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qls {

inline constexpr const char* qls_version = "0.1.0";

// CSV with one header row; the first line is a comment carrying the config
// digest so every output file is traceable to its configuration.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string render_csv(const CsvTable& table, const std::string& config_digest);

// Collects output files, then writes manifest.json with per-file checksums,
// the config digest, versions and wall-clock timings.
class OutputWriter {
  public:
    OutputWriter(std::filesystem::path dir, std::string config_digest,
                 std::uint64_t seed);

    void write_csv(const std::string& name, const CsvTable& table);
    void write_json(const std::string& name, nlohmann::json payload);
    void record_timing(const std::string& label, double seconds);
    void finalize();  // writes manifest.json

    const std::filesystem::path& dir() const { return dir_; }

  private:
    void write_bytes(const std::string& name, const std::string& bytes);

    std::filesystem::path dir_;
    std::string digest_;
    std::uint64_t seed_;
    std::map<std::string, std::string> checksums_;
    std::map<std::string, double> timings_;
};

// Re-checks every file recorded in the directory's manifest: checksum and
// embedded config digest. Returns human-readable problems; empty means clean.
std::vector<std::string> verify_output_dir(const std::filesystem::path& dir);

}  // namespace qls

#endif
