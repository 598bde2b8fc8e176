#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ubcode/code_model.hpp"

namespace ubcode {

// (n_out, k) MDS code applied row-wise: x (length rows*k) is laid out as a
// rows x k matrix filled column by column (data column c is the chunk
// x[c*rows, (c+1)*rows)), and every row is multiplied by the generator.
struct RowWiseMdsBase {
    std::size_t n_out = 0, k = 0, rows = 0;
    Matrix generator; // k x n_out

    // rows x n_out matrix F.
    Matrix encode(const Vec& x) const;
    // Linear map x -> column t of F (rows x rows*k).
    Matrix column_map(std::size_t t) const;
    // Recovers x from k columns of F. Throws InternalRankFailure.
    Vec decode(const std::vector<std::size_t>& cols, const std::vector<Vec>& values) const;
};

// Systematic k x n_out generator: identity when n_out = k, a single all-ones
// parity column when n_out = k+1, otherwise V[:, :k]^{-1} V for the
// Vandermonde matrix V of the first n_out field elements.
Matrix default_generator(const Field& f, std::size_t n_out, std::size_t k);

// Smallest GF(2^w) with 2^w >= max(3, n-1, (n-1)*max_i(m_i)/k + 1).
Field default_field(std::size_t n, std::size_t k, const Sizes& m);

struct BuildOptions {
    Field field;                                   // default_field when null
    std::vector<std::optional<Matrix>> generators; // per-node base generator
    std::optional<Matrix> V;                       // shared assembly matrix
    std::vector<std::optional<Matrix>> Vj;         // per-node assembly matrices
};

struct BuiltCode {
    std::string kind; // "mrmub" or "mub"
    IrregularArrayCode code;
    std::vector<RowWiseMdsBase> base;
    // V[j] is p_j x sum_{i != j} m_i/k; its column blocks follow the senders
    // j+1, j+2, ..., j-1 (cyclic).
    std::vector<Matrix> V;

    // Index of the base column that node i feeds into node j.
    std::size_t offset(std::size_t i, std::size_t j) const { return (j + base.size() - i) % base.size() - 1; }
};

BuiltCode build_mrmub(std::size_t n, std::size_t k, std::size_t m, const BuildOptions& opts = {});
BuiltCode build_mub(std::size_t n, std::size_t k, const Sizes& m, const BuildOptions& opts = {});

// p_j = max over E subset of [n]\{j}, |E| = n-k, of sum_{i in E} m_i/k.
Sizes mub_profile(std::size_t n, std::size_t k, const Sizes& m);

// n-1 intermediate vectors A_{i,j} x_i, j != i in increasing order.
std::vector<Vec> intermediates(const BuiltCode& b, std::size_t i, const Vec& x);

Codeword encode(const BuiltCode& b, const std::vector<Vec>& data);

// Structured erasure decoding. Throws TooManyErasures or
// InternalRankFailure.
Codeword decode(const BuiltCode& b, const Codeword& partial, const std::vector<bool>& erased);

Decoder decoder_of(const BuiltCode& b);

} // namespace ubcode
