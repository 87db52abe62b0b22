#pragma once

#include <cstdint>

namespace searchmkt {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++: fast, small state, and identical output on every platform,
// which keeps the serial and parallel simulators bit-for-bit comparable.
class xoshiro256pp {
public:
    explicit xoshiro256pp(std::uint64_t seed) {
        for (auto& word : s_) word = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // unbiased integer in [0, m) by Lemire's multiply-with-rejection
    std::uint64_t below(std::uint64_t m) {
        std::uint64_t x = next();
        unsigned __int128 prod = static_cast<unsigned __int128>(x) * m;
        auto low = static_cast<std::uint64_t>(prod);
        if (low < m) {
            const std::uint64_t threshold = (0 - m) % m;
            while (low < threshold) {
                x = next();
                prod = static_cast<unsigned __int128>(x) * m;
                low = static_cast<std::uint64_t>(prod);
            }
        }
        return static_cast<std::uint64_t>(prod >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace searchmkt
