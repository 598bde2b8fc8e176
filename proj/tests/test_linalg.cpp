#include <doctest.h>

#include "ubcode/error.hpp"
#include "ubcode/matrix.hpp"
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

Matrix random_matrix(const Field& F, Rng& rng, std::size_t r, std::size_t c, bool sparse) {
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = sparse && rng.below(3) ? 0 : rng.felt(*F);
    return m;
}

} // namespace

TEST_CASE("rank") {
    const Field F = field_new(2);
    CHECK(rank(Matrix::identity(F, 3)) == 3);
    CHECK(rank(Matrix(F, 2, 4)) == 0);
    CHECK(rank(Matrix::from_rows(F, {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(Matrix(F, 0, 5)) == 0);
    CHECK(rank(Matrix(F, 3, 0)) == 0);
}

TEST_CASE("invert") {
    const Field F = field_new(2);
    CHECK(invert(Matrix::identity(F, 4)) == Matrix::identity(F, 4));
    const Matrix m = Matrix::from_rows(F, {{1, 1}, {1, 0}});
    CHECK(invert(m) == Matrix::from_rows(F, {{0, 1}, {1, 1}}));
    CHECK(m * invert(m) == Matrix::identity(F, 2));
    CHECK(code_of([&] { invert(Matrix::from_rows(F, {{1, 1}, {1, 1}})); }) == ErrorCode::Singular);
    CHECK(code_of([&] { invert(Matrix(F, 2, 3)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("full rank decomposition examples") {
    const Field F = field_new(2);
    const FullRank id = full_rank_decompose(Matrix::identity(F, 3));
    CHECK(id.A == Matrix::identity(F, 3));
    CHECK(id.B == Matrix::identity(F, 3));

    const FullRank z = full_rank_decompose(Matrix(F, 2, 3));
    CHECK(z.B.rows() == 2);
    CHECK(z.B.cols() == 0);
    CHECK(z.A.rows() == 0);
    CHECK(z.A.cols() == 3);

    const FullRank d = full_rank_decompose(Matrix::from_rows(F, {{1, 0, 1}, {1, 0, 1}}));
    CHECK(d.B == Matrix::from_rows(F, {{1}, {1}}));
    CHECK(d.A == Matrix::from_rows(F, {{1, 0, 1}}));
}

TEST_CASE("solve") {
    const Field F = field_new(2);
    const Matrix b = Matrix::from_rows(F, {{1, 0}, {1, 1}, {0, 1}});
    CHECK(solve(Matrix::identity(F, 3), b) == b);
    CHECK(solve(Matrix::from_rows(F, {{1, 1}, {1, 0}}), Matrix::from_rows(F, {{0}, {1}})) ==
          Matrix::from_rows(F, {{1}, {1}}));
    CHECK(code_of([&] { solve(Matrix::from_rows(F, {{1}, {0}}), Matrix::from_rows(F, {{0}, {1}})); }) ==
          ErrorCode::Inconsistent);
    CHECK(code_of([&] { solve(Matrix::from_rows(F, {{1, 1}, {1, 1}}), Matrix::from_rows(F, {{1}, {1}})); }) ==
          ErrorCode::Underdetermined);
    const Matrix x = solve_particular(Matrix::from_rows(F, {{1, 1}, {1, 1}}), Matrix::from_rows(F, {{1}, {1}}));
    CHECK(Matrix::from_rows(F, {{1, 1}, {1, 1}}) * x == Matrix::from_rows(F, {{1}, {1}}));
}

TEST_CASE("vandermonde columns") {
    const Field F4 = field_new(4);
    const Matrix one = vandermonde_columns(F4, 1, 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(one(0, j) != 0);

    const Matrix v = vandermonde_columns(F4, 2, 4);
    CHECK(v(1, 0) == 0);
    CHECK(v(1, 1) == 1);
    CHECK(v(1, 2) == F4->primitive());
    const Matrix pts = v.select_cols({1, 2, 3}); // points 1, g, g^2
    CHECK(any_columns_invertible(pts));
    for (auto pair : {std::vector<std::size_t>{0, 1}, {0, 2}, {1, 2}}) CHECK(rank(pts.select_cols(pair)) == 2);

    CHECK(code_of([] { vandermonde_columns(field_new(2), 2, 3); }) == ErrorCode::FieldTooSmall);
    CHECK(any_columns_invertible(vandermonde_columns(field_new(16), 4, 16)));
}

TEST_CASE("column weights") {
    const Field F = field_new(2);
    CHECK(column_weights(Matrix::identity(F, 3)) == std::vector<std::size_t>{1, 1, 1});
    CHECK(column_weights(Matrix(F, 2, 2)) == std::vector<std::size_t>{0, 0});
    CHECK(column_weights(Matrix::from_rows(F, {{1, 1}, {0, 1}})) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("decomposition identity on random matrices") {
    Rng rng(11);
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u}) {
        const Field F = field_new(q);
        for (int t = 0; t < 1000; ++t) {
            const std::size_t r = rng.below(6), c = rng.below(6);
            const Matrix M = random_matrix(F, rng, r, c, t % 2 == 0);
            const FullRank fr = full_rank_decompose(M);
            const std::size_t rk = rank(M);
            REQUIRE(rank(M.transpose()) == rk);
            REQUIRE(fr.B.rows() == r);
            REQUIRE(fr.A.cols() == c);
            REQUIRE(fr.B.cols() == rk);
            REQUIRE(fr.A.rows() == rk);
            REQUIRE(rank(fr.A) == rk);
            REQUIRE(rank(fr.B) == rk);
            REQUIRE(rk <= std::min(rank(fr.A), rank(fr.B)));
            if (r && c) REQUIRE(fr.B * fr.A == M);
            // A contains an identity on the pivot columns.
            const Rref rr = rref(M);
            REQUIRE(rr.pivots.size() == rk);
            for (std::size_t i = 0; i < rk; ++i)
                for (std::size_t l = 0; l < rk; ++l) REQUIRE(fr.A(l, rr.pivots[i]) == (l == i ? 1u : 0u));
        }
    }
}

TEST_CASE("invert twice is identity on random invertible matrices") {
    Rng rng(12);
    for (std::uint32_t q : {2u, 7u, 16u}) {
        const Field F = field_new(q);
        int done = 0;
        while (done < 200) {
            const std::size_t n = 1 + rng.below(5);
            const Matrix M = random_matrix(F, rng, n, n, false);
            if (rank(M) != n) continue;
            REQUIRE(invert(invert(M)) == M);
            REQUIRE(M * invert(M) == Matrix::identity(F, n));
            ++done;
        }
    }
}
