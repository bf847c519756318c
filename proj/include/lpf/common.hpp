#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lpf {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// A computation would exceed a configured resource limit (memory, range,
// evaluation ceiling). Maps to CLI exit code 4.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric contract could not be met (tolerance not reached, residual too
// large, bracketing failed). Maps to CLI exit code 3.
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// floor(sqrt(n)), exact for all u64
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

}  // namespace lpf
