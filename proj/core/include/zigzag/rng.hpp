#pragma once

#include <cstdint>
#include <random>

namespace zigzag {

// All randomized corpora draw from mt19937_64 through these helpers.
// std::uniform_int_distribution is not pinned across standard libraries,
// so draws reduce the raw 64-bit stream directly; the slight modulo bias
// is irrelevant for test corpora and the stream is identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Value in [lo, hi], requires lo <= hi.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    bool coin() { return (next() & 1U) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace zigzag
