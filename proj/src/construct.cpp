#include "ubcode/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace ubcode {

Matrix RowWiseMdsBase::encode(const Vec& x) const {
    if (x.size() != rows * k) fail(ErrorCode::ShapeMismatch, "base input length");
    const Field& f = generator.field();
    Matrix data(f, rows, k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < rows; ++r) data(r, c) = x[c * rows + r];
    return data * generator;
}

Matrix RowWiseMdsBase::column_map(std::size_t t) const {
    const Field& f = generator.field();
    Matrix a(f, rows, rows * k);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < k; ++c) a(r, c * rows + r) = generator(c, t);
    return a;
}

Vec RowWiseMdsBase::decode(const std::vector<std::size_t>& cols, const std::vector<Vec>& values) const {
    if (cols.size() != k || values.size() != k) fail(ErrorCode::InternalRankFailure, "base decode needs k columns");
    const Field& f = generator.field();
    Matrix inv;
    try {
        inv = invert(generator.select_cols(cols));
    } catch (const Error&) {
        fail(ErrorCode::InternalRankFailure, "base generator columns not invertible");
    }
    Matrix known(f, rows, k);
    for (std::size_t c = 0; c < k; ++c) {
        if (values[c].size() != rows) fail(ErrorCode::InternalRankFailure, "base column length");
        for (std::size_t r = 0; r < rows; ++r) known(r, c) = values[c][r];
    }
    const Matrix data = known * inv;
    Vec x(rows * k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < rows; ++r) x[c * rows + r] = data(r, c);
    return x;
}

Matrix default_generator(const Field& f, std::size_t n_out, std::size_t k) {
    if (k == 0 || k > n_out) fail(ErrorCode::InvalidParams, "base code needs 1 <= k <= n_out");
    if (n_out == k) return Matrix::identity(f, k);
    if (n_out == k + 1) {
        Matrix g(f, k, n_out);
        for (std::size_t i = 0; i < k; ++i) {
            g(i, i) = 1;
            g(i, k) = 1;
        }
        return g;
    }
    const Matrix v = vandermonde_columns(f, k, n_out);
    std::vector<std::size_t> head(k);
    std::iota(head.begin(), head.end(), 0);
    return invert(v.select_cols(head)) * v;
}

Field default_field(std::size_t n, std::size_t k, const Sizes& m) {
    const std::size_t mx = m.empty() ? 0 : *std::max_element(m.begin(), m.end());
    const std::size_t need = std::max<std::size_t>({3, n - 1, (n - 1) * mx / k + 1});
    std::uint32_t q = 2;
    while (q < need) {
        if (q >= GaloisField::kMaxOrder) fail(ErrorCode::FieldTooSmall, "parameters need a field above 2^16");
        q <<= 1;
    }
    return field_new(q);
}

Sizes mub_profile(std::size_t n, std::size_t k, const Sizes& m) {
    Sizes p(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        Sizes r;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) r.push_back(m[i] / k);
        std::sort(r.begin(), r.end(), std::greater<>());
        p[j] = std::accumulate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n - k), std::size_t{0});
    }
    return p;
}

namespace {

void check_common(std::size_t n, std::size_t k, const Sizes& m) {
    if (n < 2 || k < 1 || k >= n) fail(ErrorCode::InvalidParams, "need 1 <= k < n");
    if (m.size() != n) fail(ErrorCode::InvalidParams, "m must have n entries");
    if (std::accumulate(m.begin(), m.end(), std::size_t{0}) == 0) fail(ErrorCode::InvalidParams, "B must be positive");
    for (std::size_t i = 0; i < n; ++i)
        if (m[i] % k != 0)
            fail(ErrorCode::DivisibilityViolation,
                 "k=" + std::to_string(k) + " does not divide m_" + std::to_string(i + 1) + "=" + std::to_string(m[i]));
}

BuiltCode assemble_code(std::string kind, std::size_t n, std::size_t k, const Sizes& m, const Sizes& p,
                        const BuildOptions& opts, bool shared_v) {
    const Field f = opts.field ? opts.field : default_field(n, k, m);
    BuiltCode b;
    b.kind = std::move(kind);
    b.base.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        RowWiseMdsBase& base = b.base[i];
        base.n_out = n - 1;
        base.k = k;
        base.rows = m[i] / k;
        if (i < opts.generators.size() && opts.generators[i]) {
            base.generator = *opts.generators[i];
            if (base.generator.rows() != k || base.generator.cols() != n - 1)
                fail(ErrorCode::ShapeMismatch, "base generator must be k x (n-1)");
            if (!any_columns_invertible(base.generator))
                fail(ErrorCode::InvalidParams, "base generator is not MDS");
        } else {
            base.generator = default_generator(f, n - 1, k);
        }
    }

    CodeParams params;
    params.n = n;
    params.k = k;
    params.m = m;
    params.p = p;
    params.q = f->q();

    b.V.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) c += m[i] / k;
        std::optional<Matrix> given;
        if (shared_v && opts.V) given = opts.V;
        if (j < opts.Vj.size() && opts.Vj[j]) given = opts.Vj[j];
        if (given) {
            if (given->rows() != p[j] || given->cols() != c)
                fail(ErrorCode::ShapeMismatch, "assembly matrix for node " + std::to_string(j + 1) + " must be " +
                                                   std::to_string(p[j]) + " x " + std::to_string(c));
            if (!any_columns_invertible(*given))
                fail(ErrorCode::InvalidParams, "assembly matrix for node " + std::to_string(j + 1) +
                                                   " has a singular column selection");
            b.V[j] = *given;
        } else {
            b.V[j] = vandermonde_columns(f, p[j], c);
        }
    }

    Grid A(n, std::vector<Matrix>(n)), Bm(n, std::vector<Matrix>(n));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = Matrix(f, 0, m[i]);
        Bm[i][i] = Matrix(f, p[i], 0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t off = 0;
        for (std::size_t s = 1; s < n; ++s) {
            const std::size_t i = (j + s) % n;
            const std::size_t r = b.base[i].rows;
            A[i][j] = r ? b.base[i].column_map(b.offset(i, j)) : Matrix(f, 0, m[i]);
            Bm[i][j] = b.V[j].block(0, off, p[j], r);
            off += r;
        }
    }
    b.code = IrregularArrayCode::from_factors(f, params, A, Bm);
    b.code.validate();
    return b;
}

} // namespace

BuiltCode build_mrmub(std::size_t n, std::size_t k, std::size_t m, const BuildOptions& opts) {
    const Sizes mv(n, m);
    check_common(n, k, mv);
    const Sizes p(n, (n - k) * m / k);
    return assemble_code("mrmub", n, k, mv, p, opts, true);
}

BuiltCode build_mub(std::size_t n, std::size_t k, const Sizes& m, const BuildOptions& opts) {
    check_common(n, k, m);
    const Sizes p = mub_profile(n, k, m);
    if (k < n - 1) {
        const BoundsReport br = bounds(n, k, m);
        if (!br.p_profile_sma || *br.p_profile_sma != p)
            fail(ErrorCode::InternalRankFailure, "parity profile disagrees with the closed form");
    }
    return assemble_code("mub", n, k, m, p, opts, false);
}

std::vector<Vec> intermediates(const BuiltCode& b, std::size_t i, const Vec& x) {
    const CodeParams& P = b.code.params;
    if (i >= P.n) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(i + 1));
    if (x.size() != P.m[i]) fail(ErrorCode::ShapeMismatch, "data length for node " + std::to_string(i + 1));
    std::vector<Vec> out;
    for (std::size_t j = 0; j < P.n; ++j)
        if (j != i) out.push_back(b.code.A[i][j] * x);
    return out;
}

Codeword encode(const BuiltCode& b, const std::vector<Vec>& data) {
    return assemble(b.code.params, data, encode_pipeline(b.code, data));
}

Codeword decode(const BuiltCode& b, const Codeword& partial, const std::vector<bool>& erased) {
    const IrregularArrayCode& code = b.code;
    const CodeParams& P = code.params;
    const GaloisField& F = *code.field;
    const std::size_t n = P.n;
    if (erased.size() != n || partial.columns.size() != n) fail(ErrorCode::ShapeMismatch, "codeword width");
    std::vector<std::size_t> E, S;
    for (std::size_t j = 0; j < n; ++j) (erased[j] ? E : S).push_back(j);
    if (E.size() > n - P.k) fail(ErrorCode::TooManyErasures, std::to_string(E.size()) + " erasures exceed n-k");
    for (std::size_t j : S)
        if (partial.columns[j].size() != P.alpha(j))
            fail(ErrorCode::ShapeMismatch, "surviving column " + std::to_string(j + 1) + " has wrong length");

    std::vector<Vec> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = erased[i] ? Vec(P.m[i], 0) : data_part(P, partial, i);

    // (1) intermediates of surviving nodes.
    // (2) per surviving node, peel known contributions and solve for the
    //     erased nodes' intermediates.
    std::vector<std::vector<Vec>> inter(n, std::vector<Vec>(n)); // inter[e][j] for erased e
    std::vector<std::size_t> live;
    for (std::size_t e : E)
        if (b.base[e].rows > 0) live.push_back(e);
    if (!live.empty()) {
        for (std::size_t j : S) {
            Vec res = parity_part(P, partial, j);
            for (std::size_t i : S) {
                if (i == j || code.A[i][j].rows() == 0) continue;
                res = vec_sub(F, res, code.Bm[i][j] * (code.A[i][j] * data[i]));
            }
            std::vector<Matrix> blocks;
            for (std::size_t e : live) blocks.push_back(code.Bm[e][j]);
            const Matrix stack = hstack(code.field, P.p[j], blocks);
            Matrix z;
            try {
                z = solve(stack, Matrix::column(code.field, res));
            } catch (const Error& err) {
                fail(ErrorCode::InternalRankFailure,
                     "stacked assembly blocks at node " + std::to_string(j + 1) + ": " + err.what());
            }
            std::size_t off = 0;
            for (std::size_t e : live) {
                const std::size_t r = b.base[e].rows;
                Vec v(r);
                for (std::size_t t = 0; t < r; ++t) v[t] = z(off + t, 0);
                inter[e][j] = v;
                off += r;
            }
        }
        // (3) base MDS decoding of every erased node.
        for (std::size_t e : live) {
            std::vector<std::size_t> cols;
            std::vector<Vec> vals;
            for (std::size_t j : S) {
                if (cols.size() == P.k) break;
                cols.push_back(b.offset(e, j));
                vals.push_back(inter[e][j]);
            }
            data[e] = b.base[e].decode(cols, vals);
        }
    }
    // (4) re-encode the erased parities.
    const std::vector<Vec> par = encode_pipeline(code, data);
    Codeword out = partial;
    for (std::size_t e : E) {
        out.columns[e] = data[e];
        out.columns[e].insert(out.columns[e].end(), par[e].begin(), par[e].end());
    }
    return out;
}

Decoder decoder_of(const BuiltCode& b) {
    return [b](const Codeword& c, const std::vector<bool>& e) { return decode(b, c, e); };
}

} // namespace ubcode
