#pragma once

#include <cstdint>

namespace qwr {

/// Counter-style splitmix64 stream. Streams are derived from a master seed
/// and up to three key words, so realizations depend only on the keys and
/// never on evaluation order across threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static RngStream keyed(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0,
                           std::uint64_t c = 0) {
        std::uint64_t s = mix(master);
        s = mix(s ^ (a + 0x632be59bd9b4e019ull));
        s = mix(s ^ (b + 0x9e6c63d0876a9a62ull));
        s = mix(s ^ (c + 0xc2b2ae3d27d4eb4full));
        return RngStream(s);
    }

    std::uint64_t next_u64() {
        ++draws_;
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

} // namespace qwr
