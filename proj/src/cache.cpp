#include "qls/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "qls/digest.hpp"
#include "qls/errors.hpp"

namespace qls {

namespace fs = std::filesystem;

LineshapeCache::LineshapeCache(fs::path root) : root_(std::move(root)) {
    if (root_.empty()) root_ = default_root();
    fs::create_directories(root_);
}

fs::path LineshapeCache::default_root() {
    if (const char* env = std::getenv("QLS_CACHE_DIR"); env && *env) {
        return fs::path(env);
    }
    return fs::temp_directory_path() / "qls-cache";
}

std::string LineshapeCache::key(const PhysicalParams& params, double time,
                                const DetuningGrid& grid) {
    const std::string canon = params.canonical() + "|t=" + format_double(time) +
                              "|grid=" + grid.canonical();
    return to_hex(fnv1a64(canon));
}

fs::path LineshapeCache::path_for(const std::string& key) const {
    return root_ / (key + ".json");
}

std::optional<LineshapeTable> LineshapeCache::peek(const std::string& key) const {
    const fs::path p = path_for(key);
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return LineshapeTable::deserialize(bytes);
}

void LineshapeCache::store(const std::string& key, const LineshapeTable& table) {
    std::lock_guard<std::mutex> lock(write_mutex_);
    const fs::path final_path = path_for(key);
    const fs::path tmp = final_path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cache: cannot write " + tmp.string());
        out << table.serialize();
    }
    fs::rename(tmp, final_path);
}

LineshapeTable LineshapeCache::get_or_compute(const PhysicalParams& params, double time,
                                              const DetuningGrid& grid,
                                              ExecutionMode mode) {
    return get_or_compute_multi(params, {time}, grid, mode)[0];
}

std::vector<LineshapeTable> LineshapeCache::get_or_compute_multi(
    const PhysicalParams& params, const std::vector<double>& times,
    const DetuningGrid& grid, ExecutionMode mode) {
    std::vector<std::optional<LineshapeTable>> found(times.size());
    std::vector<double> missing;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::string k = key(params, times[i], grid);
        try {
            found[i] = peek(k);
        } catch (const CorruptCacheEntry&) {
            found[i] = std::nullopt;  // recompute and overwrite below
        }
        if (!found[i]) missing.push_back(times[i]);
    }
    if (!missing.empty()) {
        const std::vector<LineshapeTable> fresh =
            compute_lineshape_multi(params, missing, grid, mode);
        for (const LineshapeTable& t : fresh) {
            store(key(params, t.time, grid), t);
        }
        std::size_t mi = 0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (!found[i]) found[i] = fresh[mi++];
        }
    }
    std::vector<LineshapeTable> out;
    out.reserve(times.size());
    for (auto& f : found) out.push_back(std::move(*f));
    return out;
}

}  // namespace qls
