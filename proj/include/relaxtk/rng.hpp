#pragma once

#include <cstdint>
#include <string_view>

#include "relaxtk/linear.hpp"

namespace relaxtk {

// Counter-based generator: draw k of stream (seed, name) is a pure function of
// (seed, name, k), so any field of an instance can be regenerated without
// replaying the others. The mixer is the splitmix64 finalizer.
class RngStream {
public:
    RngStream(uint64_t seed, std::string_view stream) {
        uint64_t h = 1469598103934665603ull;  // FNV-1a over the stream name
        for (char c : stream) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        key_ = mix(seed ^ mix(h));
    }

    uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

    // [0, 1) with 53 random mantissa bits
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

    // uniform over {lo, ..., hi} inclusive
    int next_int(int lo, int hi) {
        if (hi < lo) throw Error("RngStream::next_int: empty range");
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    uint64_t counter() const { return counter_; }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace relaxtk
