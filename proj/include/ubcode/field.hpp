#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ubcode/error.hpp"

namespace ubcode {

// Canonical integer representative of a field element. For extension fields
// the integer is the coefficient vector of the polynomial-basis
// representation read as base-p digits (least significant digit = constant
// term).
using Felt = std::uint32_t;

class GaloisField;
using Field = std::shared_ptr<const GaloisField>;

enum class ArithOp { Add, Sub, Mul, Div, Inv, Pow };

// GF(q), q = p^d <= 2^16. Immutable once built.
class GaloisField {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    // Throws NotPrimePower / TooLarge.
    static Field make(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return d_; }
    // Monic modulus, coefficients from constant term upwards (d+1 entries).
    // Empty for prime fields.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Felt primitive() const { return g_; }

    bool contains(Felt a) const { return a < q_; }

    Felt add(Felt a, Felt b) const {
        if (p_ == 2) return a ^ b;
        if (d_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return digit_add(a, b);
    }
    Felt neg(Felt a) const {
        if (p_ == 2) return a;
        if (d_ == 1) return a == 0 ? 0 : p_ - a;
        return digit_neg(a);
    }
    Felt sub(Felt a, Felt b) const { return add(a, neg(b)); }
    Felt mul(Felt a, Felt b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Felt inv(Felt a) const;
    Felt div(Felt a, Felt b) const;
    Felt pow(Felt a, std::int64_t e) const;
    // g^e for any integer e.
    Felt gpow(std::int64_t e) const;
    // Discrete log base g; a must be nonzero.
    std::uint32_t log(Felt a) const;

    Felt arith(ArithOp op, Felt a, std::int64_t b) const;

    // j-th element of the enumeration 0, 1, g, g^2, ... (j < q).
    Felt enumerate(std::uint32_t j) const { return j == 0 ? 0 : exp_[j - 1]; }

    bool operator==(const GaloisField& o) const { return q_ == o.q_; }

private:
    GaloisField() = default;
    Felt digit_add(Felt a, Felt b) const;
    Felt digit_neg(Felt a) const;

    std::uint32_t q_ = 0;
    std::uint32_t p_ = 0;
    unsigned d_ = 0;
    std::vector<std::uint32_t> modulus_;
    Felt g_ = 0;
    std::vector<Felt> exp_;           // 2(q-1) entries
    std::vector<std::uint32_t> log_;  // q entries, log_[0] unused
};

// Convenience: same as GaloisField::make.
Field field_new(std::uint32_t q);

// Factorization helper used by field construction and tests.
// Returns (p, d) when q = p^d, or throws NotPrimePower.
std::pair<std::uint32_t, unsigned> prime_power(std::uint32_t q);

} // namespace ubcode
