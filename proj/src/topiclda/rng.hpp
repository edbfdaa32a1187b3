#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace topiclda {

// Deterministic PRNG shared by every stochastic component.
//
// Engine: std::mt19937_64, whose raw output sequence is fully specified by
// the C++ standard and therefore identical across implementations and
// platforms. The std::uniform_* distributions are NOT specified, so the
// mappings below are pinned here instead:
//
//   next_u64()    raw engine output
//   next_double() (next_u64() >> 11) * 2^-53, uniform in [0, 1)
//   next_index(n) min(n-1, floor(next_double() * n)), uniform in [0, n)
//
// A port in any language that reproduces mt19937_64 plus these two maps
// reproduces every trace of this project bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::size_t next_index(std::size_t n) {
        auto i = static_cast<std::size_t>(next_double() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    // Textual engine state (format specified by the standard); used to
    // compare sampler states for bit-identity.
    std::string state_string() const {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace topiclda
