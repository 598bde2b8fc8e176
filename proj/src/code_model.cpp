#include "ubcode/code_model.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "ubcode/combinatorics.hpp"
#include "ubcode/rng.hpp"

namespace ubcode {

std::uint64_t default_seed() {
    if (const char* s = std::getenv("UBCODE_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && end != s && *end == '\0') return v;
    }
    return kDefaultSeed;
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::size_t CodeParams::B() const { return std::accumulate(m.begin(), m.end(), std::size_t{0}); }
std::size_t CodeParams::R() const { return std::accumulate(p.begin(), p.end(), std::size_t{0}); }

void CodeParams::validate() const {
    if (n < 2 || k < 1 || k >= n)
        fail(ErrorCode::InvalidParams, "need 1 <= k < n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    if (m.size() != n || p.size() != n) fail(ErrorCode::InvalidParams, "m and p must have n entries");
    if (B() == 0) fail(ErrorCode::InvalidParams, "no data symbols");
}

namespace {

Grid empty_grid(std::size_t n) { return Grid(n, std::vector<Matrix>(n)); }

} // namespace

IrregularArrayCode IrregularArrayCode::from_construction(Field f, CodeParams params, Grid M) {
    params.validate();
    params.q = f->q();
    const std::size_t n = params.n;
    IrregularArrayCode c{f, params, empty_grid(n), empty_grid(n), empty_grid(n)};
    if (M.size() != n) fail(ErrorCode::ShapeMismatch, "construction grid must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
        if (M[i].size() != n) fail(ErrorCode::ShapeMismatch, "construction grid must be n x n");
        for (std::size_t j = 0; j < n; ++j) {
            Matrix m = M[i][j];
            if (m.rows() == 0 && m.cols() == 0 && m.field() == nullptr) m = Matrix(f, params.p[j], params.m[i]);
            if (m.rows() != params.p[j] || m.cols() != params.m[i])
                fail(ErrorCode::ShapeMismatch, "M[" + std::to_string(i) + "][" + std::to_string(j) + "] shape");
            FullRank fr = full_rank_decompose(m);
            c.M[i][j] = m;
            c.A[i][j] = fr.A;
            c.Bm[i][j] = fr.B;
        }
    }
    return c;
}

IrregularArrayCode IrregularArrayCode::from_factors(Field f, CodeParams params, Grid A, Grid Bm) {
    params.validate();
    params.q = f->q();
    const std::size_t n = params.n;
    if (A.size() != n || Bm.size() != n) fail(ErrorCode::ShapeMismatch, "factor grids must be n x n");
    Grid M = empty_grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n || Bm[i].size() != n) fail(ErrorCode::ShapeMismatch, "factor grids must be n x n");
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix& a = A[i][j];
            const Matrix& b = Bm[i][j];
            const std::size_t g = a.rows();
            const bool absent = a.rows() == 0 && b.cols() == 0;
            if (absent) {
                M[i][j] = Matrix(f, params.p[j], params.m[i]);
                continue;
            }
            if (a.cols() != params.m[i] || b.rows() != params.p[j] || b.cols() != g)
                fail(ErrorCode::ShapeMismatch,
                     "factor shapes at [" + std::to_string(i) + "][" + std::to_string(j) + "]");
            M[i][j] = b * a;
        }
    }
    IrregularArrayCode c = from_construction(f, params, M);
    // Keep the supplied factors when they are already minimal.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix& a = A[i][j];
            if (a.rows() == 0) continue;
            const std::size_t g = rank(c.M[i][j]);
            if (a.rows() == g && rank(a) == g && rank(Bm[i][j]) == g) {
                c.A[i][j] = a;
                c.Bm[i][j] = Bm[i][j];
            }
        }
    }
    return c;
}

bool IrregularArrayCode::zero_diagonal() const {
    for (std::size_t i = 0; i < params.n; ++i)
        if (!M[i][i].is_zero()) return false;
    return true;
}

void IrregularArrayCode::validate() const {
    params.validate();
    const std::size_t n = params.n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix& m = M[i][j];
            if (m.rows() != params.p[j] || m.cols() != params.m[i])
                fail(ErrorCode::ShapeMismatch, "construction matrix shape");
            const std::size_t g = rank(m);
            if (A[i][j].rows() != g || Bm[i][j].cols() != g || rank(A[i][j]) != g || rank(Bm[i][j]) != g ||
                Bm[i][j].rows() != params.p[j] || A[i][j].cols() != params.m[i])
                fail(ErrorCode::InternalRankFailure, "factors are not full rank");
            if (g > 0 && Bm[i][j] * A[i][j] != m) fail(ErrorCode::InternalRankFailure, "M != B*A");
        }
    }
}

Vec data_part(const CodeParams& p, const Codeword& c, std::size_t i) {
    const Column& col = c.columns.at(i);
    return Vec(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(p.m[i]));
}

Vec parity_part(const CodeParams& p, const Codeword& c, std::size_t i) {
    const Column& col = c.columns.at(i);
    return Vec(col.begin() + static_cast<std::ptrdiff_t>(p.m[i]), col.end());
}

Codeword assemble(const CodeParams& p, const std::vector<Vec>& data, const std::vector<Vec>& parity) {
    Codeword c;
    c.columns.resize(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        if (data[i].size() != p.m[i] || parity[i].size() != p.p[i]) fail(ErrorCode::ShapeMismatch, "column sizes");
        c.columns[i] = data[i];
        c.columns[i].insert(c.columns[i].end(), parity[i].begin(), parity[i].end());
    }
    return c;
}

std::vector<Vec> split_data(const CodeParams& p, const Codeword& c) {
    std::vector<Vec> d(p.n);
    for (std::size_t i = 0; i < p.n; ++i) d[i] = data_part(p, c, i);
    return d;
}

namespace {

void check_data(const CodeParams& p, const std::vector<Vec>& data) {
    if (data.size() != p.n) fail(ErrorCode::ShapeMismatch, "expected one data vector per node");
    for (std::size_t i = 0; i < p.n; ++i)
        if (data[i].size() != p.m[i])
            fail(ErrorCode::ShapeMismatch, "data vector " + std::to_string(i + 1) + " has length " +
                                               std::to_string(data[i].size()) + ", expected " +
                                               std::to_string(p.m[i]));
}

} // namespace

std::vector<Vec> encode_direct(const IrregularArrayCode& code, const std::vector<Vec>& data) {
    const CodeParams& P = code.params;
    check_data(P, data);
    const GaloisField& F = *code.field;
    std::vector<Vec> par(P.n);
    for (std::size_t j = 0; j < P.n; ++j) {
        par[j].assign(P.p[j], 0);
        for (std::size_t i = 0; i < P.n; ++i) {
            if (P.m[i] == 0 || P.p[j] == 0) continue;
            par[j] = vec_add(F, par[j], code.M[i][j] * data[i]);
        }
    }
    return par;
}

std::vector<Vec> encode_pipeline(const IrregularArrayCode& code, const std::vector<Vec>& data) {
    const CodeParams& P = code.params;
    check_data(P, data);
    const GaloisField& F = *code.field;
    std::vector<Vec> par(P.n);
    for (std::size_t j = 0; j < P.n; ++j) par[j].assign(P.p[j], 0);
    for (std::size_t i = 0; i < P.n; ++i) {
        for (std::size_t j = 0; j < P.n; ++j) {
            if (code.A[i][j].rows() == 0) continue;
            const Vec inter = code.A[i][j] * data[i];
            par[j] = vec_add(F, par[j], code.Bm[i][j] * inter);
        }
    }
    return par;
}

GammaReport gamma_of(const IrregularArrayCode& code) {
    const std::size_t n = code.n();
    GammaReport r;
    r.matrix.assign(n, Sizes(n, 0));
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            r.matrix[i][j] = rank(code.M[i][j]);
            total += static_cast<std::int64_t>(r.matrix[i][j]);
        }
    r.gamma = Rational(total, static_cast<std::int64_t>(n));
    return r;
}

std::size_t redundancy(const IrregularArrayCode& code) { return code.params.R(); }

IrregularArrayCode zero_diagonal(const IrregularArrayCode& code) {
    IrregularArrayCode c = code;
    for (std::size_t i = 0; i < c.n(); ++i) {
        c.M[i][i] = Matrix(c.field, c.params.p[i], c.params.m[i]);
        c.A[i][i] = Matrix(c.field, 0, c.params.m[i]);
        c.Bm[i][i] = Matrix(c.field, c.params.p[i], 0);
    }
    return c;
}

Codeword zero_diagonal_map(const IrregularArrayCode& code, const Codeword& cw) {
    Codeword out = cw;
    const CodeParams& P = code.params;
    for (std::size_t i = 0; i < P.n; ++i) {
        const Vec x = data_part(P, cw, i);
        const Vec p = vec_sub(*code.field, parity_part(P, cw, i), code.M[i][i] * x);
        std::copy(p.begin(), p.end(), out.columns[i].begin() + static_cast<std::ptrdiff_t>(P.m[i]));
    }
    return out;
}

Rational update_complexity(const IrregularArrayCode& code) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < code.n(); ++i)
        for (std::size_t j = 0; j < code.n(); ++j) {
            if (i == j) continue;
            for (std::size_t w : column_weights(code.M[i][j])) total += static_cast<std::int64_t>(w);
        }
    return Rational(total, static_cast<std::int64_t>(code.params.B()));
}

int check_subset(std::size_t n, const Sizes& m, const Sizes& p, const std::vector<Sizes>& gamma,
                 const std::vector<std::size_t>& E, std::size_t* node) {
    std::vector<bool> inE(n, false);
    for (std::size_t e : E) inE[e] = true;
    for (std::size_t i : E) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (!inE[j]) s += gamma[i][j];
        if (s < m[i]) {
            if (node) *node = i;
            return 1;
        }
    }
    std::size_t lhs = 0, rhs = 0;
    for (std::size_t i : E) lhs += m[i];
    for (std::size_t j = 0; j < n; ++j) {
        if (inE[j]) continue;
        std::size_t s = 0;
        for (std::size_t i : E) s += gamma[i][j];
        rhs += std::min(p[j], s);
    }
    return lhs <= rhs ? 0 : 2;
}

FeasibleReport feasible(std::size_t n, std::size_t k, const Sizes& m, const Sizes& p,
                        const std::vector<Sizes>& gamma) {
    if (k < 1 || k >= n || m.size() != n || p.size() != n || gamma.size() != n)
        fail(ErrorCode::InvalidParams, "inconsistent dimensions");
    for (const auto& row : gamma)
        if (row.size() != n) fail(ErrorCode::InvalidParams, "gamma must be n x n");
    if (binomial(n, n - k) > 1000000) fail(ErrorCode::TooLarge, "more than 10^6 subsets");
    FeasibleReport r;
    for_each_subset(n, n - k, [&](const std::vector<std::size_t>& E) {
        std::size_t node = 0;
        const int c = check_subset(n, m, p, gamma, E, &node);
        if (c == 0) return true;
        r.feasible = false;
        r.condition = c;
        r.node = node;
        r.witness = E;
        return false;
    });
    return r;
}

Matrix erasure_system(const IrregularArrayCode& code, const std::vector<bool>& erased) {
    const CodeParams& P = code.params;
    std::size_t rows = 0, cols = 0;
    for (std::size_t j = 0; j < P.n; ++j) (erased[j] ? cols += P.m[j] : rows += P.p[j]);
    Matrix S(code.field, rows, cols);
    std::size_t r0 = 0;
    for (std::size_t j = 0; j < P.n; ++j) {
        if (erased[j]) continue;
        std::size_t c0 = 0;
        for (std::size_t e = 0; e < P.n; ++e) {
            if (!erased[e]) continue;
            const Matrix& m = code.M[e][j];
            for (std::size_t a = 0; a < m.rows(); ++a)
                for (std::size_t b = 0; b < m.cols(); ++b) S(r0 + a, c0 + b) = m(a, b);
            c0 += P.m[e];
        }
        r0 += P.p[j];
    }
    return S;
}

Codeword decode_linear(const IrregularArrayCode& code, const Codeword& partial, const std::vector<bool>& erased) {
    const CodeParams& P = code.params;
    const GaloisField& F = *code.field;
    if (erased.size() != P.n || partial.columns.size() != P.n) fail(ErrorCode::ShapeMismatch, "codeword width");
    std::size_t ne = 0;
    for (bool e : erased) ne += e;
    if (ne > P.n - P.k) fail(ErrorCode::TooManyErasures, std::to_string(ne) + " erasures exceed n-k");
    for (std::size_t j = 0; j < P.n; ++j)
        if (!erased[j] && partial.columns[j].size() != P.alpha(j))
            fail(ErrorCode::ShapeMismatch, "surviving column " + std::to_string(j + 1) + " has wrong length");

    std::vector<Vec> data(P.n);
    for (std::size_t i = 0; i < P.n; ++i)
        data[i] = erased[i] ? Vec(P.m[i], 0) : data_part(P, partial, i);

    std::size_t unknowns = 0;
    for (std::size_t e = 0; e < P.n; ++e)
        if (erased[e]) unknowns += P.m[e];
    if (unknowns > 0) {
        const Matrix S = erasure_system(code, erased);
        Matrix rhs(code.field, S.rows(), 1);
        std::size_t r0 = 0;
        for (std::size_t j = 0; j < P.n; ++j) {
            if (erased[j]) continue;
            Vec res = parity_part(P, partial, j);
            for (std::size_t i = 0; i < P.n; ++i) {
                if (erased[i] || P.m[i] == 0) continue;
                res = vec_sub(F, res, code.M[i][j] * data[i]);
            }
            for (std::size_t t = 0; t < res.size(); ++t) rhs(r0 + t, 0) = res[t];
            r0 += P.p[j];
        }
        const Matrix x = solve(S, rhs);
        std::size_t c0 = 0;
        for (std::size_t e = 0; e < P.n; ++e) {
            if (!erased[e]) continue;
            for (std::size_t t = 0; t < P.m[e]; ++t) data[e][t] = x(c0 + t, 0);
            c0 += P.m[e];
        }
    }
    const std::vector<Vec> par = encode_direct(code, data);
    Codeword out = partial;
    for (std::size_t j = 0; j < P.n; ++j) {
        if (!erased[j]) continue;
        out.columns[j] = data[j];
        out.columns[j].insert(out.columns[j].end(), par[j].begin(), par[j].end());
    }
    return out;
}

MdsReport verify_mds(const IrregularArrayCode& code, const Decoder& decoder, std::size_t fills, std::uint64_t seed) {
    const CodeParams& P = code.params;
    const std::size_t n = P.n, k = P.k;
    if (binomial(n, k) > 10000) fail(ErrorCode::TooLarge, "C(n,k) exceeds 10^4");
    Decoder dec = decoder ? decoder : Decoder([&code](const Codeword& c, const std::vector<bool>& e) {
        return decode_linear(code, c, e);
    });
    Rng rng(seed);
    MdsReport rep;

    // A failing access set stays failing when shrunk, so report k columns.
    auto survivors = [&](const std::vector<bool>& erased) {
        std::vector<std::size_t> s;
        for (std::size_t j = 0; j < n && s.size() < k; ++j)
            if (!erased[j]) s.push_back(j);
        return s;
    };

    for (std::size_t t = 0; t <= n - k; ++t) {
        const bool ok = for_each_subset(n, t, [&](const std::vector<std::size_t>& E) {
            std::vector<bool> erased(n, false);
            std::size_t need = 0;
            for (std::size_t e : E) {
                erased[e] = true;
                need += P.m[e];
            }
            ++rep.patterns;
            if (need > 0 && rank(erasure_system(code, erased)) < need) {
                rep.verdict = MdsReport::Verdict::NotMds;
                rep.witness = survivors(erased);
                rep.detail = "data not determined by the accessed columns";
                return false;
            }
            for (std::size_t f = 0; f < fills; ++f) {
                std::vector<Vec> data(n);
                for (std::size_t i = 0; i < n; ++i) data[i] = rng.vec(*code.field, P.m[i]);
                const Codeword full = assemble(P, data, encode_direct(code, data));
                Codeword partial = full;
                for (std::size_t e : E) std::fill(partial.columns[e].begin(), partial.columns[e].end(), 0);
                Codeword got;
                try {
                    got = dec(partial, erased);
                } catch (const Error& err) {
                    rep.verdict = MdsReport::Verdict::NotMds;
                    rep.witness = survivors(erased);
                    rep.detail = err.what();
                    return false;
                }
                ++rep.fills;
                if (got.columns != full.columns) {
                    rep.verdict = MdsReport::Verdict::NotMds;
                    rep.witness = survivors(erased);
                    rep.detail = "decoded codeword differs from the original";
                    return false;
                }
            }
            return true;
        });
        if (!ok) return rep;
    }

    const std::size_t B = P.B();
    const bool found = !for_each_subset(n, k - 1, [&](const std::vector<std::size_t>& S) {
        std::vector<bool> erased(n, true);
        std::size_t symbols = 0;
        for (std::size_t s : S) {
            erased[s] = false;
            symbols += P.alpha(s);
        }
        std::size_t need = 0;
        for (std::size_t e = 0; e < n; ++e)
            if (erased[e]) need += P.m[e];
        if (symbols < B || rank(erasure_system(code, erased)) < need) {
            rep.insufficient = S;
            return false;
        }
        return true;
    });
    if (!found) {
        rep.verdict = MdsReport::Verdict::NotExact;
        rep.detail = "every (k-1)-subset recovers the data";
    }
    return rep;
}

} // namespace ubcode
