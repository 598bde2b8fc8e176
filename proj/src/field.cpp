#include "ubcode/field.hpp"

#include <string>

namespace ubcode {

const char* error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::InternalRankFailure: return "InternalRankFailure";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotMds: return "NotMds";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>; // coefficients, constant term first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime and small; Fermat.
    std::uint64_t r = 1, b = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// a mod b over GF(p); b must be nonzero after trimming.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t t = f * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    trim(r);
    return r;
}

Poly to_poly(std::uint32_t v, std::uint32_t p, unsigned width) {
    Poly r(width, 0);
    for (unsigned i = 0; i < width; ++i) {
        r[i] = v % p;
        v /= p;
    }
    trim(r);
    return r;
}

std::uint32_t from_poly(const Poly& a, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
    return v;
}

bool irreducible(const Poly& f, std::uint32_t p) {
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    if (f[0] == 0) return false;
    // Exhaustive check against every monic divisor of degree 1 .. d/2.
    for (unsigned e = 1; e <= d / 2; ++e) {
        std::uint32_t count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (std::uint32_t low = 0; low < count; ++low) {
            Poly g = to_poly(low, p, e);
            g.resize(e + 1, 0);
            g[e] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
    std::vector<std::uint32_t> r;
    for (std::uint32_t f = 2; f * f <= v; ++f) {
        if (v % f == 0) {
            r.push_back(f);
            while (v % f == 0) v /= f;
        }
    }
    if (v > 1) r.push_back(v);
    return r;
}

} // namespace

std::pair<std::uint32_t, unsigned> prime_power(std::uint32_t q) {
    if (q < 2) fail(ErrorCode::NotPrimePower, "q=" + std::to_string(q));
    std::uint32_t p = 0;
    for (std::uint32_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) return {q, 1};
    unsigned d = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
        r /= p;
        ++d;
    }
    if (r != 1) fail(ErrorCode::NotPrimePower, "q=" + std::to_string(q));
    return {p, d};
}

Field GaloisField::make(std::uint32_t q) {
    if (q > kMaxOrder) fail(ErrorCode::TooLarge, "q=" + std::to_string(q) + " exceeds 65536");
    auto [p, d] = prime_power(q);

    std::shared_ptr<GaloisField> f(new GaloisField());
    f->q_ = q;
    f->p_ = p;
    f->d_ = d;

    Poly mod;
    if (d > 1) {
        // Smallest monic irreducible by integer encoding of its lower
        // coefficients.
        const std::uint32_t count = q; // p^d candidates for the lower part
        for (std::uint32_t low = 0; low < count; ++low) {
            Poly cand = to_poly(low, p, d);
            cand.resize(d + 1, 0);
            cand[d] = 1;
            if (irreducible(cand, p)) {
                mod = cand;
                break;
            }
        }
        if (mod.empty()) fail(ErrorCode::InvalidParams, "no irreducible modulus found");
        f->modulus_ = mod;
    }

    auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        if (d == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
        return from_poly(poly_mod(poly_mul(to_poly(a, p, d), to_poly(b, p, d), p), mod, p), p);
    };
    auto slow_pow = [&](std::uint32_t a, std::uint32_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };

    const std::uint32_t order = q - 1;
    Felt g = 1;
    if (q > 2) {
        const auto factors = prime_factors(order);
        g = 0;
        for (std::uint32_t cand = 2; cand < q && g == 0; ++cand) {
            bool ok = true;
            for (auto r : factors) {
                if (slow_pow(cand, order / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) g = cand;
        }
        if (g == 0) fail(ErrorCode::InvalidParams, "no primitive element found");
    }
    f->g_ = g;

    f->exp_.assign(2 * static_cast<std::size_t>(order), 0);
    f->log_.assign(q, 0);
    std::vector<bool> seen(q, false);
    Felt cur = 1;
    for (std::uint32_t t = 0; t < order; ++t) {
        if (seen[cur]) fail(ErrorCode::InvalidParams, "designated element is not primitive");
        seen[cur] = true;
        f->exp_[t] = cur;
        f->exp_[t + order] = cur;
        f->log_[cur] = t;
        cur = slow_mul(cur, g);
    }
    if (cur != 1) fail(ErrorCode::InvalidParams, "g^(q-1) != 1");
    return f;
}

Field field_new(std::uint32_t q) { return GaloisField::make(q); }

Felt GaloisField::digit_add(Felt a, Felt b) const {
    Felt r = 0, scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
        const std::uint32_t s = (a % p_ + b % p_) % p_;
        r += s * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Felt GaloisField::digit_neg(Felt a) const {
    Felt r = 0, scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
        const std::uint32_t c = a % p_;
        r += (c == 0 ? 0 : p_ - c) * scale;
        scale *= p_;
        a /= p_;
    }
    return r;
}

Felt GaloisField::inv(Felt a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of 0");
    const std::uint32_t order = q_ - 1;
    return exp_[(order - log_[a]) % order];
}

Felt GaloisField::div(Felt a, Felt b) const {
    if (b == 0) fail(ErrorCode::DivisionByZero, "division by 0");
    if (a == 0) return 0;
    const std::uint32_t order = q_ - 1;
    return exp_[log_[a] + (order - log_[b]) % order];
}

Felt GaloisField::pow(Felt a, std::int64_t e) const {
    if (e == 0) return 1;
    if (a == 0) {
        if (e < 0) fail(ErrorCode::DivisionByZero, "negative power of 0");
        return 0;
    }
    const std::int64_t order = q_ - 1;
    std::int64_t t = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
    if (t < 0) t += order;
    return exp_[static_cast<std::size_t>(t)];
}

Felt GaloisField::gpow(std::int64_t e) const {
    const std::int64_t order = q_ - 1;
    std::int64_t t = e % order;
    if (t < 0) t += order;
    return exp_[static_cast<std::size_t>(t)];
}

std::uint32_t GaloisField::log(Felt a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "log of 0");
    return log_[a];
}

Felt GaloisField::arith(ArithOp op, Felt a, std::int64_t b) const {
    switch (op) {
    case ArithOp::Add: return add(a, static_cast<Felt>(b));
    case ArithOp::Sub: return sub(a, static_cast<Felt>(b));
    case ArithOp::Mul: return mul(a, static_cast<Felt>(b));
    case ArithOp::Div: return div(a, static_cast<Felt>(b));
    case ArithOp::Inv: return inv(a);
    case ArithOp::Pow: return pow(a, b);
    }
    return 0;
}

} // namespace ubcode
