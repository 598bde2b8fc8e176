#include <doctest.h>

#include <algorithm>
#include <numeric>

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

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

// Code whose every off-diagonal block is filled by `fill(i, j)`.
IrregularArrayCode grid_code(const Field& F, std::size_t n, std::size_t k, Sizes m, Sizes p,
                             const std::function<Matrix(std::size_t, std::size_t)>& fill) {
    CodeParams P{n, k, m, p, F->q()};
    Grid M(n, std::vector<Matrix>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = i == j ? Matrix(F, p[j], m[i]) : fill(i, j);
    return IrregularArrayCode::from_construction(F, P, M);
}

} // namespace

TEST_CASE("gamma and redundancy of the worked examples") {
    const BuiltCode f1 = fig1b_code();
    const BuiltCode f3 = fig3_code();
    CHECK(gamma_of(f1.code).gamma == R(3));
    CHECK(gamma_of(f3.code).gamma == R(3));
    CHECK(redundancy(f1.code) == 8);
    CHECK(redundancy(f3.code) == 11);
    const GammaReport g3 = gamma_of(f3.code);
    CHECK(std::accumulate(g3.matrix[0].begin(), g3.matrix[0].end(), std::size_t{0}) == 6);
    CHECK(std::accumulate(g3.matrix[3].begin(), g3.matrix[3].end(), std::size_t{0}) == 0);

    const Field F = field_new(2);
    const IrregularArrayCode zero = grid_code(F, 3, 1, {1, 1, 1}, {0, 0, 0}, [&](std::size_t i, std::size_t j) {
        (void)i;
        (void)j;
        return Matrix(F, 0, 1);
    });
    CHECK(gamma_of(zero).gamma == R(0));
    CHECK(redundancy(zero) == 0);
    CHECK(update_complexity(zero) == R(0));
}

TEST_CASE("zero diagonal normal form") {
    const BuiltCode f3 = fig3_code();
    const IrregularArrayCode z3 = zero_diagonal(f3.code);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(z3.M[i][j] == f3.code.M[i][j]);

    const Field F = field_new(3);
    Rng rng(3);
    CodeParams P{3, 2, {2, 2, 2}, {1, 1, 1}, 3};
    Grid M(3, std::vector<Matrix>(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            M[i][j] = Matrix(F, 1, 2);
            for (std::size_t c = 0; c < 2; ++c) M[i][j](0, c) = 1 + rng.below(2);
        }
    const IrregularArrayCode code = IrregularArrayCode::from_construction(F, P, M);
    REQUIRE(!code.M[0][0].is_zero());
    const IrregularArrayCode z = zero_diagonal(code);
    CHECK(z.M[0][0].is_zero());
    CHECK(z.zero_diagonal());
    CHECK(gamma_of(z).matrix == gamma_of(code).matrix);
    CHECK(redundancy(z) == redundancy(code));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(z.M[i][j] == code.M[i][j]);
    CHECK(zero_diagonal(z).M[1][1] == z.M[1][1]);

    // Codewords map to codewords of the normal form.
    std::vector<Vec> data(3);
    for (auto& x : data) x = rng.vec(*F, 2);
    const Codeword c = assemble(P, data, encode_direct(code, data));
    const Codeword mapped = zero_diagonal_map(code, c);
    CHECK(mapped.columns == assemble(P, data, encode_direct(z, data)).columns);
}

TEST_CASE("update complexity") {
    CHECK(update_complexity(fig1b_code().code) == R(5, 2));
    const Field F = field_new(2);
    const IrregularArrayCode ones = grid_code(F, 3, 1, {1, 1, 1}, {1, 1, 1}, [&](std::size_t, std::size_t) {
        return Matrix::identity(F, 1);
    });
    CHECK(update_complexity(ones) == R(2));
    const IrregularArrayCode padded = grid_code(F, 4, 2, {2, 2, 2, 2}, {3, 3, 3, 3}, [&](std::size_t, std::size_t) {
        Matrix m(F, 3, 2);
        m(0, 0) = m(1, 1) = 1;
        return m;
    });
    CHECK(update_complexity(padded) == R(3));
}

TEST_CASE("bounds examples") {
    const BoundsReport a = bounds(4, 2, {4, 2, 2, 0});
    CHECK(a.mu == 4);
    CHECK(a.r_min == 8);
    CHECK(a.gamma_min == R(3));
    REQUIRE(a.r_sma);
    CHECK(*a.r_sma == 11);
    CHECK(a.r_min <= *a.r_sma);
    CHECK(std::accumulate(a.p_profile_min.begin(), a.p_profile_min.end(), std::size_t{0}) == 8);

    const BoundsReport b = bounds(4, 2, {2, 2, 2, 2});
    CHECK(b.gamma_min == R(3));
    CHECK(b.r_min == 8);
    REQUIRE(b.r_sma);
    CHECK(*b.r_sma == 8);
    CHECK(b.p_profile_min == Sizes{2, 2, 2, 2});
    CHECK(*b.p_profile_sma == Sizes{2, 2, 2, 2});
    CHECK(b.theta_lb == R(5, 2));

    for (const Sizes& m : {Sizes{3, 1, 2, 5}, Sizes{4, 4, 4, 4}, Sizes{7, 0, 0, 1}}) {
        const BoundsReport c = bounds(4, 3, m);
        const std::int64_t B = std::accumulate(m.begin(), m.end(), std::int64_t{0});
        CHECK(c.gamma_min == R(B, 4));
        REQUIRE(c.r_sma);
        CHECK(*c.r_sma == c.r_min);
    }

    CHECK(code_of([] { bounds(3, 3, {1, 1, 1}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] { bounds(3, 0, {1, 1, 1}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] { bounds(3, 2, {0, 0, 0}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] { bounds(3, 2, {1, 1}); }) == ErrorCode::InvalidParams);
    CHECK(!bounds(4, 2, {3, 2, 2, 2}).r_sma);
}

TEST_CASE("bounds under k | m collapse the assignment") {
    const BoundsReport b = bounds(5, 2, {4, 2, 6, 0, 2});
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (i != j) CHECK(b.gamma_assignment[i][j] == b.m[i] / 2);
}

TEST_CASE("bounds are invariant under permutation of m") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t k = 1 + rng.below(n - 1);
        Sizes m(n);
        for (auto& v : m) v = k * rng.below(4);
        if (std::accumulate(m.begin(), m.end(), std::size_t{0}) == 0) m[0] = k;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), std::mt19937_64(rng.next()));
        Sizes pm(n);
        for (std::size_t i = 0; i < n; ++i) pm[i] = m[perm[i]];
        const BoundsReport a = bounds(n, k, m), b = bounds(n, k, pm);
        REQUIRE(a.mu == b.mu);
        REQUIRE(a.r_min == b.r_min);
        REQUIRE(a.gamma_min == b.gamma_min);
        REQUIRE(a.r_sma == b.r_sma);
        REQUIRE(a.theta_lb == b.theta_lb);
        REQUIRE(bool(a.p_profile_sma) == bool(b.p_profile_sma));
        // Unique for k < n-1; for k = n-1 it is one R_min profile, so only
        // the (m_i, p_i) multiset is fixed.
        if (a.p_profile_sma && k < n - 1)
            for (std::size_t i = 0; i < n; ++i) REQUIRE((*b.p_profile_sma)[i] == (*a.p_profile_sma)[perm[i]]);
        if (a.p_profile_sma && k == n - 1) {
            std::vector<std::pair<std::size_t, std::size_t>> pa, pb;
            for (std::size_t i = 0; i < n; ++i) {
                pa.emplace_back(m[i], (*a.p_profile_sma)[i]);
                pb.emplace_back(pm[i], (*b.p_profile_sma)[i]);
            }
            std::sort(pa.begin(), pa.end());
            std::sort(pb.begin(), pb.end());
            REQUIRE(pa == pb);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                REQUIRE(b.gamma_assignment[i][j] == a.gamma_assignment[perm[i]][perm[j]]);
    }
}

TEST_CASE("MR-MUB admissibility") {
    const AdmissibleReport a = mrmub_admissible(4, 2, {2, 2, 2, 2});
    CHECK(a.verdict == Admissibility::Admissible);
    CHECK(*a.p == Sizes{2, 2, 2, 2});
    CHECK(mrmub_admissible(4, 2, {4, 2, 2, 0}).verdict == Admissibility::NotAdmissible);
    const AdmissibleReport c = mrmub_admissible(5, 3, {6, 0, 0, 0, 0});
    CHECK(c.verdict == Admissibility::Admissible);
    CHECK(*c.p == Sizes{0, 2, 2, 2, 2});
    CHECK(mrmub_admissible(4, 2, {3, 3, 3, 3}).verdict == Admissibility::Undetermined);
    CHECK(mrmub_admissible(4, 3, {3, 1, 2, 5}).verdict == Admissibility::Admissible);
    CHECK(mrmub_admissible(4, 1, {3, 1, 2, 5}).verdict == Admissibility::Admissible);
}

TEST_CASE("feasibility oracle") {
    // (6,3): gamma 1 to the two cyclic successors, 2 otherwise.
    std::vector<Sizes> g6(6, Sizes(6, 0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) g6[i][j] = (j == (i + 1) % 6 || j == (i + 2) % 6) ? 1 : 2;
    const FeasibleReport f6 = feasible(6, 3, Sizes(6, 4), Sizes(6, 4), g6);
    CHECK(f6.feasible);

    const BoundsReport b9 = bounds(9, 6, Sizes(9, 2));
    const FeasibleReport f9 = feasible(9, 6, Sizes(9, 2), Sizes(9, 1), b9.gamma_assignment);
    CHECK(!f9.feasible);
    REQUIRE(f9.witness.size() == 3);
    CHECK(check_subset(9, Sizes(9, 2), Sizes(9, 1), b9.gamma_assignment, f9.witness) != 0);

    for (const Sizes& m : {Sizes{4, 2, 2, 0}, Sizes{3, 1, 4, 0}, Sizes{2, 2, 2, 2}}) {
        const BoundsReport b = bounds(4, 2, m);
        std::vector<Sizes> g(4, Sizes(4, 0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) g[i][j] = std::max(m[i], b.p_profile_min[j]);
        CHECK(feasible(4, 2, m, b.p_profile_min, g).feasible);
    }
    CHECK(code_of([] {
              const std::size_t n = 40;
              feasible(n, 20, Sizes(n, 1), Sizes(n, 1), std::vector<Sizes>(n, Sizes(n, 1)));
          }) == ErrorCode::TooLarge);
}

TEST_CASE("MDS verification") {
    const BuiltCode f1 = fig1b_code();
    const MdsReport r1 = verify_mds(f1.code, decoder_of(f1), 20, 1);
    CHECK(r1.verdict == MdsReport::Verdict::Mds);
    CHECK(r1.patterns == 11);
    CHECK(r1.insufficient.size() == 1);
    CHECK(verify_mds(fig3_code().code).ok());

    const Field F = field_new(2);
    const IrregularArrayCode zero = grid_code(F, 4, 2, Sizes(4, 2), Sizes(4, 2), [&](std::size_t, std::size_t) {
        return Matrix(F, 2, 2);
    });
    const MdsReport rz = verify_mds(zero);
    CHECK(rz.verdict == MdsReport::Verdict::NotMds);
    CHECK(rz.witness.size() == 2);

    // A (3,1) repetition code also decodes from two columns: not exactly (3,2).
    const IrregularArrayCode rep = grid_code(F, 3, 1, {1, 1, 1}, {2, 2, 2}, [&](std::size_t i, std::size_t j) {
        Matrix m(F, 2, 1);
        m(((i + 3 - j) % 3) - 1, 0) = 1;
        return m;
    });
    IrregularArrayCode rep2 = rep;
    rep2.params.k = 2;
    CHECK(verify_mds(rep2).verdict == MdsReport::Verdict::NotExact);
    CHECK(verify_mds(rep).ok());
}

TEST_CASE("linear decoding") {
    const BuiltCode f1 = fig1b_code();
    Rng rng(9);
    std::vector<Vec> data(4);
    for (auto& x : data) x = rng.vec(*f1.code.field, 2);
    const Codeword full = encode(f1, data);
    Codeword partial = full;
    std::vector<bool> erased{true, false, true, false};
    partial.columns[0].assign(4, 0);
    partial.columns[2].assign(4, 0);
    CHECK(decode_linear(f1.code, partial, erased).columns == full.columns);
    CHECK(code_of([&] { decode_linear(f1.code, partial, {true, true, true, false}); }) == ErrorCode::TooManyErasures);
}
