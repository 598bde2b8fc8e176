#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ubcode/field.hpp"

namespace ubcode {

using Vec = std::vector<Felt>;

// Dense row-major matrix over GF(q). Zero-row and zero-column matrices are
// valid values.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Felt> entries);
    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, const std::vector<std::vector<Felt>>& rows, std::size_t cols = 0);
    static Matrix column(Field f, const Vec& v);

    const Field& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }
    const std::vector<Felt>& entries() const { return e_; }

    Felt operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }
    Felt& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    bool is_zero() const;

    Matrix operator*(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Felt s) const;
    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    Field f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<Felt> e_;
};

Matrix hstack(const Field& f, std::size_t rows, const std::vector<Matrix>& parts);
Matrix vstack(const Field& f, std::size_t cols, const std::vector<Matrix>& parts);

// Vector helpers over a field.
Vec vec_add(const GaloisField& f, const Vec& a, const Vec& b);
Vec vec_sub(const GaloisField& f, const Vec& a, const Vec& b);
Vec vec_scale(const GaloisField& f, const Vec& a, Felt s);
void vec_axpy(const GaloisField& f, Vec& y, Felt s, const Vec& x); // y += s*x
bool vec_is_zero(const Vec& a);

struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

// Reduced row-echelon form; pivot = first nonzero entry scanning columns
// left to right.
Rref rref(const Matrix& m);

std::size_t rank(const Matrix& m);

// Throws ShapeMismatch (non-square) or Singular.
Matrix invert(const Matrix& m);

// Unique x with a*x = b. Throws Inconsistent or Underdetermined.
Matrix solve(const Matrix& a, const Matrix& b);

// Some x with a*x = b (free variables set to zero). Throws Inconsistent.
Matrix solve_particular(const Matrix& a, const Matrix& b);

struct FullRank {
    Matrix B; // rows(M) x rank, pivot columns of M
    Matrix A; // rank x cols(M), nonzero rows of rref(M)
};
FullRank full_rank_decompose(const Matrix& m);

// r x c matrix whose column j is (1, a_j, ..., a_j^{r-1}) with a_j the j-th
// element of the field enumeration 0, 1, g, g^2, ... Throws FieldTooSmall
// when c > q.
Matrix vandermonde_columns(const Field& f, std::size_t r, std::size_t c);

std::vector<std::size_t> column_weights(const Matrix& m);

// True when every choice of rows(m) columns is invertible. Checks the
// choices exhaustively up to `limit` subsets and returns false on the first
// singular one.
bool any_columns_invertible(const Matrix& m, std::size_t limit = 10000);

} // namespace ubcode
