#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fraclab {

/// Thrown when an iteration fails to converge or a computed quantity is
/// numerically unusable. CLI maps this to exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prints a double with 17 significant digits, enough to round-trip binary64.
/// Uses the C locale ("." decimal point) regardless of environment.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Width cap for data-parallel loops. FRACLAB_THREADS overrides the
/// hardware count; values < 1 are treated as 1.
inline int thread_width() {
    if (const char* env = std::getenv("FRACLAB_THREADS")) {
        int n = std::atoi(env);
        return n < 1 ? 1 : n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). Chunks are deterministic and writes must be
/// disjoint per index; reductions belong outside this helper.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    const int width = thread_width();
    if (width <= 1 || n < 256) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::int64_t chunk = (n + width - 1) / width;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(width));
    for (int t = 0; t < width; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// FNV-1a 64-bit checksum, used for artifact manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace fraclab
