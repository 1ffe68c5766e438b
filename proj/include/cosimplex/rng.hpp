#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cosimplex {

/// Seeded generator with platform-independent draws: std::mt19937_64 output
/// reduced modulo the range (the standard distributions are not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform-ish in [0, n).
    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(gen_() % n) : 0; }

    /// In [lo, hi].
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

    bool coin() { return (gen_() & 1u) != 0; }

    /// True with probability num/den.
    bool chance(unsigned num, unsigned den) { return below(den) < num; }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 gen_;
};

}  // namespace cosimplex
