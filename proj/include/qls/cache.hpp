#ifndef QLS_CACHE_HPP
#define QLS_CACHE_HPP

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qls/lineshape.hpp"

namespace qls {

// Content-addressed store of lineshape tables, one file per key under a
// configurable root (QLS_CACHE_DIR overrides the default). Writes go through
// a temp file and atomic rename; corrupt entries are recomputed and replaced.
class LineshapeCache {
  public:
    // Empty path: use QLS_CACHE_DIR, falling back to `default_root`.
    explicit LineshapeCache(std::filesystem::path root = {});

    static std::filesystem::path default_root();

    static std::string key(const PhysicalParams& params, double time,
                           const DetuningGrid& grid);

    LineshapeTable get_or_compute(const PhysicalParams& params, double time,
                                  const DetuningGrid& grid,
                                  ExecutionMode mode = ExecutionMode::Parallel);

    // Misses are computed in one shared integration pass over `times`.
    std::vector<LineshapeTable> get_or_compute_multi(
        const PhysicalParams& params, const std::vector<double>& times,
        const DetuningGrid& grid, ExecutionMode mode = ExecutionMode::Parallel);

    // Throws CorruptCacheEntry / OutOfRange on bad entries; nullopt on miss.
    std::optional<LineshapeTable> peek(const std::string& key) const;

    const std::filesystem::path& root() const { return root_; }

  private:
    std::filesystem::path path_for(const std::string& key) const;
    void store(const std::string& key, const LineshapeTable& table);

    std::filesystem::path root_;
    mutable std::mutex write_mutex_;
};

}  // namespace qls

#endif
