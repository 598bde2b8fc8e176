#include <doctest.h>

#include "ubcode/combinatorics.hpp"
#include "ubcode/construct.hpp"
#include "ubcode/error.hpp"
#include "ubcode/fixtures.hpp"
#include "ubcode/rng.hpp"

using namespace ubcode;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Ok;
}

std::size_t total(const Sizes& m) {
    std::size_t s = 0;
    for (std::size_t v : m) s += v;
    return s;
}

// Unit data vector for symbol t (node-major).
std::vector<Vec> unit(const CodeParams& P, std::size_t t) {
    std::vector<Vec> d(P.n);
    std::size_t at = 0;
    for (std::size_t i = 0; i < P.n; ++i) {
        d[i].assign(P.m[i], 0);
        for (std::size_t r = 0; r < P.m[i]; ++r, ++at)
            if (at == t) d[i][r] = 1;
    }
    return d;
}

// Linear form of parity row r of node j.
std::string parity_expr(const BuiltCode& b, std::size_t j, std::size_t r) {
    const CodeParams& P = b.code.params;
    Vec coeffs(total(P.m));
    for (std::size_t t = 0; t < coeffs.size(); ++t) coeffs[t] = encode(b, unit(P, t)).columns[j][P.m[j] + r];
    return expression(*b.code.field, coeffs, P.m);
}

std::string inter_expr(const BuiltCode& b, std::size_t i, std::size_t to, std::size_t r) {
    const CodeParams& P = b.code.params;
    Vec coeffs(total(P.m), 0);
    std::size_t off = 0;
    for (std::size_t u = 0; u < i; ++u) off += P.m[u];
    for (std::size_t t = 0; t < P.m[i]; ++t) {
        Vec x(P.m[i], 0);
        x[t] = 1;
        const auto ps = intermediates(b, i, x);
        coeffs[off + t] = ps[to < i ? to : to - 1][r];
    }
    return expression(*b.code.field, coeffs, P.m);
}

std::vector<Vec> fill_data(const BuiltCode& b, Rng& rng) {
    std::vector<Vec> d(b.code.n());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = rng.vec(*b.code.field, b.code.params.m[i]);
    return d;
}

void check_decodes_all(const BuiltCode& b, std::size_t fills, std::uint64_t seed) {
    const std::size_t n = b.code.n(), k = b.code.k();
    Rng rng(seed);
    for (std::size_t e = 0; e <= n - k; ++e)
        for_each_subset(n, e, [&](const std::vector<std::size_t>& E) {
            for (std::size_t f = 0; f < fills; ++f) {
                const Codeword full = encode(b, fill_data(b, rng));
                Codeword partial = full;
                std::vector<bool> erased(n, false);
                for (std::size_t x : E) {
                    erased[x] = true;
                    partial.columns[x].assign(partial.columns[x].size(), 0);
                }
                REQUIRE(decode(b, partial, erased).columns == full.columns);
            }
            return true;
        });
}

} // namespace

TEST_CASE("worked MR-MUB example") {
    const Field f = field_new(2);
    BuildOptions o;
    o.field = f;
    o.generators.assign(4, Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 1}}));
    o.V = Matrix::from_rows(f, {{0, 1, 1}, {1, 1, 0}});
    const BuiltCode b = build_mrmub(4, 2, 2, o);
    const BuiltCode fx = fig1b_code();
    CHECK(b.code.M == fx.code.M);
    CHECK(b.code.params.p == Sizes{2, 2, 2, 2});
    CHECK(parity_expr(b, 0, 0) == "x3,2+x4,1");
    CHECK(parity_expr(b, 0, 1) == "x2,1+x2,2+x3,2");
    CHECK(inter_expr(b, 0, 1, 0) == "x1,1");
    CHECK(inter_expr(b, 0, 2, 0) == "x1,2");
    CHECK(inter_expr(b, 0, 3, 0) == "x1,1+x1,2");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(rank(b.code.M[i][j]) == 1);
}

TEST_CASE("worked MUB example") {
    const BuiltCode b = fig3_code();
    CHECK(b.code.params.p == Sizes{2, 3, 3, 3});
    CHECK(redundancy(b.code) == 11);
    CHECK(inter_expr(b, 0, 3, 0) == "x1,1+x1,3");
    CHECK(inter_expr(b, 0, 3, 1) == "x1,2+x1,4");
    CHECK(intermediates(b, 3, {}).size() == 3);
    for (const Vec& v : intermediates(b, 3, {})) CHECK(v.empty());
    // x2,2 reaches parity row 1 of node 1 and row 3 of node 4 only.
    const CodeParams& P = b.code.params;
    const Codeword cw = encode(b, unit(P, 5));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t r = 0; r < P.p[j]; ++r) {
            const bool expect = (j == 0 && r == 0) || (j == 3 && r == 2);
            CHECK((cw.columns[j][P.m[j] + r] != 0) == expect);
        }
    CHECK(parity_expr(b, 3, 2) == "x2,2+x3,1");
}

TEST_CASE("MR-MUB builder meets the bounds") {
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t k = 1; k < n; ++k)
            for (std::size_t m = k; m <= 4; m += k) {
                const BuiltCode b = build_mrmub(n, k, m);
                const BoundsReport bd = bounds(n, k, Sizes(n, m));
                CHECK(redundancy(b.code) == bd.r_min);
                CHECK(gamma_of(b.code).gamma == bd.gamma_min);
                CHECK(b.code.params.p == Sizes(n, (n - k) * m / k));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (i != j) CHECK(gamma_of(b.code).matrix[i][j] == m / k);
                CHECK(b.code.field->q() > 2);
            }
    const BuiltCode b = build_mrmub(5, 3, 3);
    CHECK(redundancy(b.code) == 10);
    CHECK(gamma_of(b.code).gamma == bounds(5, 3, Sizes(5, 3)).gamma_min);
}

TEST_CASE("repetition when k = 1") {
    const BuiltCode b = build_mrmub(4, 1, 2);
    Rng rng(2);
    const auto data = fill_data(b, rng);
    const Codeword cw = encode(b, data);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) CHECK(gamma_of(b.code).matrix[i][j] == 2);
        Codeword partial = cw;
        std::vector<bool> erased(4, true);
        erased[i] = false;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) partial.columns[j].assign(cw.columns[j].size(), 0);
        CHECK(decode(b, partial, erased).columns == cw.columns);
    }
}

TEST_CASE("MUB builder") {
    const BuiltCode a = build_mub(4, 2, {2, 2, 2, 0});
    CHECK(a.code.params.p == Sizes{2, 2, 2, 2});
    CHECK(redundancy(a.code) == 8);
    CHECK(redundancy(a.code) == *bounds(4, 2, {2, 2, 2, 0}).r_sma);

    for (std::size_t n = 3; n <= 5; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            const BuiltCode u = build_mub(n, k, Sizes(n, 2 * k));
            const BuiltCode o = build_mrmub(n, k, 2 * k);
            CHECK(u.code.params.p == o.code.params.p);
            CHECK(gamma_of(u.code).matrix == gamma_of(o.code).matrix);
        }

    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t k = 1 + rng.below(n - 1);
        Sizes m(n);
        for (auto& v : m) v = k * rng.below(3);
        if (total(m) == 0) m[n - 1] = k;
        const BuiltCode b = build_mub(n, k, m);
        const BoundsReport bd = bounds(n, k, m);
        CHECK(gamma_of(b.code).gamma == bd.gamma_min);
        if (k + 1 < n) CHECK(redundancy(b.code) == *bd.r_sma);
        CHECK(feasible(n, k, m, b.code.params.p, gamma_of(b.code).matrix).feasible);
    }
}

TEST_CASE("builder errors") {
    CHECK(code_of([] { build_mrmub(4, 2, 3); }) == ErrorCode::DivisibilityViolation);
    CHECK(code_of([] { build_mub(4, 2, {4, 3, 2, 0}); }) == ErrorCode::DivisibilityViolation);
    BuildOptions o;
    o.field = field_new(2);
    CHECK(code_of([&] { build_mrmub(6, 2, 2, o); }) == ErrorCode::FieldTooSmall);
    CHECK(code_of([] { build_mrmub(3, 3, 3); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] {
              const Field f = field_new(4);
              BuildOptions bad;
              bad.field = f;
              bad.V = Matrix::from_rows(f, {{1, 1, 0}, {1, 1, 0}});
              build_mrmub(4, 2, 2, bad);
          }) != ErrorCode::Ok);
}

TEST_CASE("default field policy") {
    CHECK(default_field(4, 2, Sizes(4, 2))->q() == 4);
    CHECK(default_field(6, 2, Sizes(6, 4))->q() == 16);
    CHECK(default_field(3, 1, Sizes(3, 1))->q() == 4);
    const Field f = field_new(8);
    const Matrix g = default_generator(f, 5, 3);
    CHECK(g.block(0, 0, 3, 3) == Matrix::identity(f, 3));
    CHECK(any_columns_invertible(g));
    CHECK(default_generator(f, 3, 2) == Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("encoding paths agree") {
    Rng rng(6);
    const std::vector<BuiltCode> codes = {fig1b_code(), fig3_code(), build_mrmub(5, 3, 3), build_mub(5, 2, {4, 2, 0, 2, 6}),
                                          build_mrmub(6, 4, 4)};
    for (const BuiltCode& b : codes) {
        std::vector<Vec> zero(b.code.n());
        for (std::size_t i = 0; i < zero.size(); ++i) zero[i].assign(b.code.params.m[i], 0);
        for (const Column& c : encode(b, zero).columns)
            for (Felt v : c) CHECK(v == 0);
        for (int t = 0; t < 1000; ++t) {
            const auto d = fill_data(b, rng);
            const Codeword cw = encode(b, d);
            REQUIRE(cw.columns == assemble(b.code.params, d, encode_direct(b.code, d)).columns);
            REQUIRE(encode_pipeline(b.code, d) == encode_direct(b.code, d));
        }
    }
    CHECK(code_of([&] { encode(codes[0], std::vector<Vec>(4, Vec(3, 0))); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("structured decoding") {
    check_decodes_all(fig1b_code(), 20, 1);
    check_decodes_all(fig3_code(), 20, 2);
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            check_decodes_all(build_mrmub(n, k, k), 3, n * 10 + k);
            Sizes m(n);
            for (std::size_t i = 0; i < n; ++i) m[i] = k * (i % 3);
            if (total(m)) check_decodes_all(build_mub(n, k, m), 3, n * 100 + k);
        }
    const BuiltCode b = fig1b_code();
    Codeword partial = encode(b, std::vector<Vec>(4, Vec(2, 1)));
    CHECK(code_of([&] { decode(b, partial, {true, true, true, false}); }) == ErrorCode::TooManyErasures);
}

TEST_CASE("stacked assembly blocks are invertible") {
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            const BuiltCode b = build_mrmub(n, k, k);
            for_each_subset(n, n - k, [&](const std::vector<std::size_t>& E) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::find(E.begin(), E.end(), j) != E.end()) continue;
                    std::vector<Matrix> blocks;
                    for (std::size_t e : E) blocks.push_back(b.code.Bm[e][j]);
                    const Matrix S = hstack(b.code.field, b.code.params.p[j], blocks);
                    REQUIRE(S.rows() == S.cols());
                    REQUIRE(rank(S) == S.rows());
                }
                return true;
            });
        }
}

TEST_CASE("MUB builder with k = n-1 and an empty node") {
    const BuiltCode b = build_mub(3, 2, {4, 2, 0});
    const BoundsReport bd = bounds(3, 2, {4, 2, 0});
    CHECK(verify_mds(b.code, decoder_of(b)).ok());
    CHECK(gamma_of(b.code).gamma == bd.gamma_min);
    CHECK(bd.r_min == 4);
    CHECK(redundancy(b.code) == 5);
}
