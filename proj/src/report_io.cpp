#include "qls/report_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "qls/digest.hpp"
#include "qls/errors.hpp"

namespace qls {

namespace fs = std::filesystem;

std::string render_csv(const CsvTable& table, const std::string& config_digest) {
    std::string out = "# qls config_digest=" + config_digest + " schema=1\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += table.columns[i];
        out += i + 1 < table.columns.size() ? ',' : '\n';
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw Error("csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_double(row[i]);
            out += i + 1 < row.size() ? ',' : '\n';
        }
    }
    return out;
}

OutputWriter::OutputWriter(fs::path dir, std::string config_digest, std::uint64_t seed)
    : dir_(std::move(dir)), digest_(std::move(config_digest)), seed_(seed) {
    fs::create_directories(dir_);
}

void OutputWriter::write_bytes(const std::string& name, const std::string& bytes) {
    const fs::path p = dir_ / name;
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + p.string());
        out << bytes;
    }
    fs::rename(tmp, p);
    checksums_[name] = to_hex(fnv1a64(bytes));
}

void OutputWriter::write_csv(const std::string& name, const CsvTable& table) {
    write_bytes(name, render_csv(table, digest_));
}

void OutputWriter::write_json(const std::string& name, nlohmann::json payload) {
    payload["config_digest"] = digest_;
    write_bytes(name, payload.dump(2) + "\n");
}

void OutputWriter::record_timing(const std::string& label, double seconds) {
    timings_[label] = seconds;
}

void OutputWriter::finalize() {
    nlohmann::json m;
    m["config_digest"] = digest_;
    m["seed"] = seed_;
    m["versions"] = {{"qls", qls_version}, {"output_schema", 1}};
    m["files"] = checksums_;
    // wall-clock timings vary run to run; everything else is reproducible
    m["timings"] = timings_;
    std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    out << m.dump(2) << "\n";
}

std::vector<std::string> verify_output_dir(const fs::path& dir) {
    std::vector<std::string> problems;
    nlohmann::json m;
    {
        std::ifstream in(dir / "manifest.json");
        if (!in) return {"missing manifest.json"};
        try {
            in >> m;
        } catch (const nlohmann::json::exception& e) {
            return {std::string("manifest parse failure: ") + e.what()};
        }
    }
    const std::string digest = m.value("config_digest", "");
    for (const auto& [name, recorded] : m.at("files").items()) {
        std::ifstream in(dir / name, std::ios::binary);
        if (!in) {
            problems.push_back("missing file " + name);
            continue;
        }
        const std::string bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        if (to_hex(fnv1a64(bytes)) != recorded.get<std::string>()) {
            problems.push_back("checksum mismatch for " + name);
        }
        const std::string marker = "config_digest";
        if (bytes.find(marker) != std::string::npos &&
            bytes.find(digest) == std::string::npos) {
            problems.push_back("embedded digest mismatch in " + name);
        }
    }
    return problems;
}

}  // namespace qls
