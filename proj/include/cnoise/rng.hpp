#ifndef CNOISE_RNG_HPP
#define CNOISE_RNG_HPP

#include <cstdint>
#include <random>

namespace cnoise {

// splitmix64 finalizer, used to derive independent stream seeds from a
// master seed. Output is fully specified, so derived seeds are identical
// across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for sub-stream `index` of a master seed. Parallel workers each take
// their own sub-stream, so serial and threaded runs produce the same bits.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * index);
}

// Deterministic RNG wrapper. mt19937_64 is bit-exact per the standard;
// the uniform/bounded mappings below are ours, so no libstdc++-specific
// distribution behavior leaks into outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1) with 53 random bits
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n); n > 0. Multiply-shift bound (bias is
    // below 2^-64 for the small n used here).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool next_bool() { return (engine_() & 1u) != 0; }

    // uniform on [lo, hi]
    double next_range(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cnoise

#endif // CNOISE_RNG_HPP
