#pragma once

#include <cstdint>
#include <random>

#include "ubcode/matrix.hpp"

namespace ubcode {

// std::mt19937_64 with plain modulo reduction, so sequences are identical
// on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }
    Felt felt(const GaloisField& f) { return static_cast<Felt>(g_() % f.q()); }
    Vec vec(const GaloisField& f, std::size_t len) {
        Vec v(len);
        for (auto& x : v) x = felt(f);
        return v;
    }

private:
    std::mt19937_64 g_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240521;

// kDefaultSeed unless UBCODE_SEED holds a decimal integer.
std::uint64_t default_seed();

} // namespace ubcode
