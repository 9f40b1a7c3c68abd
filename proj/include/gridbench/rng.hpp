#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace gridbench {

// Fixed, portable PRNG stack so regeneration is byte-identical across
// platforms: splitmix64 for seeding/mixing, xoshiro256** for the stream.
// Constants are the reference ones from Blackman & Vigna.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) {
            return (x << k) | (x >> (64 - k));
        };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [lo, hi] inclusive. Simple rejection-free reduction via
    // 128-bit multiply keeps the mapping platform-stable.
    int range(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t x = next();
        std::uint64_t r = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * span) >> 64);
        return lo + static_cast<int>(r);
    }

    bool chance(double p) { return double(next() >> 11) * 0x1.0p-53 < p; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            std::swap(v[static_cast<std::size_t>(i)],
                      v[static_cast<std::size_t>(range(0, i))]);
        }
    }

private:
    std::uint64_t s_[4];
};

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64_u64(std::uint64_t v, std::uint64_t h) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stable per-instance seed: a pure function of (master, task_id, value,
// index). FNV-1a over the fields, finished with one splitmix64 round.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view task_id,
                                 int variable_value, int index) {
    std::uint64_t h = fnv1a64(task_id);
    h = fnv1a64_u64(master, h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(variable_value)), h);
    h = fnv1a64_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(index)), h);
    return splitmix64_next(h);
}

// Decorrelated sub-stream seed (per grid within an episode, etc.).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t lane) {
    std::uint64_t h = fnv1a64_u64(lane, fnv1a64_u64(seed, 0xcbf29ce484222325ULL));
    return splitmix64_next(h);
}

}  // namespace gridbench
