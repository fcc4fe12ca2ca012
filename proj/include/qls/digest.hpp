#ifndef QLS_DIGEST_HPP
#define QLS_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace qls {

// FNV-1a 64-bit; stable across platforms, used for cache keys and output
// checksums (integrity, not security).
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

// Shortest round-trip decimal form (std::to_chars); canonical for keys,
// CSV cells and checksummed payloads.
std::string format_double(double v);

}  // namespace qls

#endif
