#include "ubcode/matrix.hpp"

#include <limits>
#include <string>

#include "ubcode/combinatorics.hpp"

namespace ubcode {

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), r_(rows), c_(cols), e_(rows * cols, 0) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Felt> entries)
    : f_(std::move(f)), r_(rows), c_(cols), e_(std::move(entries)) {
    if (e_.size() != r_ * c_) fail(ErrorCode::ShapeMismatch, "entry count does not match shape");
    for (Felt v : e_) {
        if (!f_->contains(v)) fail(ErrorCode::InvalidParams, "entry " + std::to_string(v) + " outside field");
    }
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<Felt>>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows[0].size();
    std::vector<Felt> e;
    e.reserve(rows.size() * c);
    for (const auto& r : rows) {
        if (r.size() != c) fail(ErrorCode::ShapeMismatch, "ragged rows");
        e.insert(e.end(), r.begin(), r.end());
    }
    return Matrix(std::move(f), rows.size(), c, std::move(e));
}

Matrix Matrix::column(Field f, const Vec& v) { return Matrix(std::move(f), v.size(), 1, v); }

Vec Matrix::row(std::size_t i) const { return Vec(e_.begin() + i * c_, e_.begin() + (i + 1) * c_); }

Vec Matrix::col(std::size_t j) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Matrix::is_zero() const {
    for (Felt v : e_)
        if (v) return false;
    return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) fail(ErrorCode::ShapeMismatch, "matrix product shapes");
    Matrix r(f_, r_, o.c_);
    const GaloisField& F = *f_;
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t t = 0; t < c_; ++t) {
            const Felt a = (*this)(i, t);
            if (!a) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                const Felt b = o(t, j);
                if (b) r(i, j) = F.add(r(i, j), F.mul(a, b));
            }
        }
    }
    return r;
}

Vec Matrix::operator*(const Vec& v) const {
    if (c_ != v.size()) fail(ErrorCode::ShapeMismatch, "matrix-vector shapes");
    Vec r(r_, 0);
    const GaloisField& F = *f_;
    for (std::size_t i = 0; i < r_; ++i) {
        Felt s = 0;
        for (std::size_t j = 0; j < c_; ++j) {
            const Felt a = (*this)(i, j);
            if (a && v[j]) s = F.add(s, F.mul(a, v[j]));
        }
        r[i] = s;
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail(ErrorCode::ShapeMismatch, "matrix sum shapes");
    Matrix r(f_, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_->add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail(ErrorCode::ShapeMismatch, "matrix difference shapes");
    Matrix r(f_, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_->sub(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::scaled(Felt s) const {
    Matrix r(f_, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_->mul(e_[i], s);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) fail(ErrorCode::ShapeMismatch, "block out of range");
    Matrix r(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix r(f_, r_, idx.size());
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(f_, idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < c_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && e_ == o.e_;
}

Matrix hstack(const Field& f, std::size_t rows, const std::vector<Matrix>& parts) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) fail(ErrorCode::ShapeMismatch, "hstack row mismatch");
        cols += p.cols();
    }
    Matrix r(f, rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) r(i, off + j) = p(i, j);
        off += p.cols();
    }
    return r;
}

Matrix vstack(const Field& f, std::size_t cols, const std::vector<Matrix>& parts) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) fail(ErrorCode::ShapeMismatch, "vstack column mismatch");
        rows += p.rows();
    }
    Matrix r(f, rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) r(off + i, j) = p(i, j);
        off += p.rows();
    }
    return r;
}

Vec vec_add(const GaloisField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::ShapeMismatch, "vector sum lengths");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const GaloisField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::ShapeMismatch, "vector difference lengths");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

Vec vec_scale(const GaloisField& f, const Vec& a, Felt s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], s);
    return r;
}

void vec_axpy(const GaloisField& f, Vec& y, Felt s, const Vec& x) {
    if (y.size() != x.size()) fail(ErrorCode::ShapeMismatch, "axpy lengths");
    if (!s) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i]) y[i] = f.add(y[i], f.mul(s, x[i]));
}

bool vec_is_zero(const Vec& a) {
    for (Felt v : a)
        if (v) return false;
    return true;
}

Rref rref(const Matrix& m) {
    Rref out{m, {}};
    Matrix& a = out.reduced;
    const GaloisField& F = *m.field();
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = R;
        for (std::size_t i = row; i < R; ++i) {
            if (a(i, col)) {
                piv = i;
                break;
            }
        }
        if (piv == R) continue;
        if (piv != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(piv, j), a(row, j));
        const Felt s = F.inv(a(row, col));
        for (std::size_t j = col; j < C; ++j) a(row, j) = F.mul(a(row, j), s);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row) continue;
            const Felt f = a(i, col);
            if (!f) continue;
            for (std::size_t j = col; j < C; ++j)
                if (a(row, j)) a(i, j) = F.sub(a(i, j), F.mul(f, a(row, j)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return rref(m).pivots.size();
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug = hstack(m.field(), n, {m, Matrix::identity(m.field(), n)});
    Rref r = rref(aug);
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1))
        fail(ErrorCode::Singular, "matrix is singular");
    return r.reduced.block(0, n, n, n);
}

namespace {

Matrix solve_impl(const Matrix& a, const Matrix& b, bool require_unique) {
    if (a.rows() != b.rows()) fail(ErrorCode::ShapeMismatch, "solve: row counts differ");
    const Field& f = a.field();
    const std::size_t n = a.cols(), nb = b.cols();
    Matrix aug = hstack(f, a.rows(), {a, b});
    Rref r = rref(aug);
    std::size_t rank_a = 0;
    for (std::size_t p : r.pivots) {
        if (p >= n) fail(ErrorCode::Inconsistent, "system has no solution");
        ++rank_a;
    }
    if (require_unique && rank_a < n) fail(ErrorCode::Underdetermined, "coefficient matrix is column rank deficient");
    Matrix x(f, n, nb);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) x(r.pivots[i], j) = r.reduced(i, n + j);
    return x;
}

} // namespace

Matrix solve(const Matrix& a, const Matrix& b) { return solve_impl(a, b, true); }

Matrix solve_particular(const Matrix& a, const Matrix& b) { return solve_impl(a, b, false); }

FullRank full_rank_decompose(const Matrix& m) {
    const Field& f = m.field();
    if (m.empty()) return {Matrix(f, m.rows(), 0), Matrix(f, 0, m.cols())};
    Rref r = rref(m);
    const std::size_t k = r.pivots.size();
    return {m.select_cols(r.pivots), r.reduced.block(0, 0, k, m.cols())};
}

Matrix vandermonde_columns(const Field& f, std::size_t r, std::size_t c) {
    if (c > f->q())
        fail(ErrorCode::FieldTooSmall,
             std::to_string(c) + " distinct points needed, field has " + std::to_string(f->q()));
    Matrix v(f, r, c);
    for (std::size_t j = 0; j < c; ++j) {
        const Felt a = f->enumerate(static_cast<std::uint32_t>(j));
        Felt cur = 1;
        for (std::size_t i = 0; i < r; ++i) {
            v(i, j) = cur;
            cur = f->mul(cur, a);
        }
    }
    if (!any_columns_invertible(v))
        fail(ErrorCode::InternalRankFailure, "vandermonde column selection singular");
    return v;
}

std::vector<std::size_t> column_weights(const Matrix& m) {
    std::vector<std::size_t> w(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j)) ++w[j];
    return w;
}

bool any_columns_invertible(const Matrix& m, std::size_t limit) {
    const std::size_t r = m.rows(), c = m.cols();
    if (r == 0) return true;
    if (c < r) return rank(m) == c;
    std::size_t checked = 0;
    return for_each_subset(c, r, [&](const std::vector<std::size_t>& s) {
        if (checked++ >= limit) return false;
        return rank(m.select_cols(s)) == r;
    }) || checked > limit;
}

} // namespace ubcode
