#include <algorithm>
#include <numeric>
#include <string>

#include "ubcode/code_model.hpp"

namespace ubcode {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void check_bounds_params(std::size_t n, std::size_t k, const Sizes& m) {
    if (n < 2 || k < 1 || k >= n) fail(ErrorCode::InvalidParams, "need 1 <= k < n");
    if (m.size() != n) fail(ErrorCode::InvalidParams, "m must have n entries");
    if (std::accumulate(m.begin(), m.end(), std::size_t{0}) == 0) fail(ErrorCode::InvalidParams, "B must be positive");
}

std::vector<std::size_t> descending_order(const Sizes& m) {
    std::vector<std::size_t> order(m.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });
    return order;
}

} // namespace

BoundsReport bounds(std::size_t n, std::size_t k, const Sizes& m) {
    check_bounds_params(n, k, m);
    BoundsReport r;
    r.n = n;
    r.k = k;
    r.m = m;
    r.order = descending_order(m);
    Sizes s(n);
    for (std::size_t t = 0; t < n; ++t) s[t] = m[r.order[t]];
    const std::size_t B = std::accumulate(m.begin(), m.end(), std::size_t{0});
    const std::size_t nk = n - k;

    r.mu = std::max(s[nk - 1], ceil_div(B, k));

    Sizes ps(n, 0);
    std::size_t head = 0; // sum of the n-k largest m
    for (std::size_t t = 0; t < nk; ++t) {
        ps[t] = r.mu > s[t] ? r.mu - s[t] : 0;
        head += s[t];
    }
    r.r_min = head;
    for (std::size_t t = 0; t < nk; ++t) r.r_min += ps[t];
    std::size_t remaining = head;
    for (std::size_t t = nk; t < n; ++t) {
        const std::size_t cap = r.mu > s[t] ? r.mu - s[t] : 0;
        ps[t] = std::min(cap, remaining);
        remaining -= ps[t];
    }
    r.p_profile_min.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t) r.p_profile_min[r.order[t]] = ps[t];

    std::int64_t ceil_sum = 0;
    for (std::size_t v : m) ceil_sum += static_cast<std::int64_t>(ceil_div(v, k));
    const auto N = static_cast<std::int64_t>(n);
    r.gamma_min = Rational(static_cast<std::int64_t>(B), N) +
                  Rational(static_cast<std::int64_t>(nk) - 1, N) * Rational(ceil_sum);

    r.gamma_assignment.assign(n, Sizes(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t up = ceil_div(m[i], k), down = m[i] / k;
        const std::size_t w = k * up - m[i];
        for (std::size_t t = 1; t < n; ++t) {
            const std::size_t j = (i + t) % n;
            r.gamma_assignment[i][j] = t <= w ? down : up;
        }
    }

    r.theta_lb = Rational(static_cast<std::int64_t>(nk)) +
                 Rational(static_cast<std::int64_t>(k) - 1, static_cast<std::int64_t>(k));

    const bool divisible = std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v % k == 0; });
    if (k == n - 1) {
        r.r_sma = r.r_min;
        r.p_profile_sma = r.p_profile_min;
    } else if (divisible) {
        const std::size_t next = s[nk]; // m_{n-k+1}
        r.r_sma = ((n - 1) * head + nk * next) / k;
        Sizes sma(n, 0);
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t v = t < nk ? (head + next - s[t]) / k : head / k;
            sma[r.order[t]] = v;
        }
        r.p_profile_sma = sma;
    }
    return r;
}

const char* admissibility_name(Admissibility a) {
    switch (a) {
    case Admissibility::Admissible: return "Admissible";
    case Admissibility::NotAdmissible: return "NotAdmissible";
    case Admissibility::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

AdmissibleReport mrmub_admissible(std::size_t n, std::size_t k, const Sizes& m) {
    AdmissibleReport r;
    try {
        check_bounds_params(n, k, m);
    } catch (const Error& e) {
        r.reason = e.what();
        return r;
    }
    const std::size_t B = std::accumulate(m.begin(), m.end(), std::size_t{0});
    if (k == 1 || k == n - 1) {
        const BoundsReport b = bounds(n, k, m);
        r.verdict = Admissibility::Admissible;
        r.reason = k == 1 ? "k = 1" : "k = n-1";
        r.p = b.p_profile_min;
        return r;
    }
    if (!std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v % k == 0; })) {
        r.reason = "k does not divide every m_i; outside the characterized range";
        return r;
    }
    const bool all_equal = std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v == m[0]; });
    const std::size_t nonzero = static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::size_t v) { return v > 0; }));
    if (all_equal) {
        r.verdict = Admissibility::Admissible;
        r.reason = "all-equal m";
        r.p = Sizes(n, (n - k) * B / (n * k));
        return r;
    }
    if (nonzero == 1) {
        r.verdict = Admissibility::Admissible;
        r.reason = "all-zero-but-one m";
        Sizes p(n, B / k);
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) p[i] = 0;
        r.p = p;
        return r;
    }
    const BoundsReport b = bounds(n, k, m);
    r.verdict = Admissibility::NotAdmissible;
    r.reason = "R_sma=" + std::to_string(*b.r_sma) + " > R_min=" + std::to_string(b.r_min);
    return r;
}

} // namespace ubcode
