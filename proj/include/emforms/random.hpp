#pragma once

#include <cstdint>
#include <random>

namespace emforms {

/// Platform-independent pseudorandom doubles: mt19937_64 is fully specified
/// by the standard, and the mapping to [0, 1) uses the top 53 bits directly
/// instead of std::uniform_real_distribution (whose output is not portable).
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace emforms
