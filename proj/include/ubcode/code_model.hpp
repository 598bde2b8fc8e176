#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ubcode/matrix.hpp"

namespace ubcode {

using Rational = boost::rational<std::int64_t>;
std::string to_string(const Rational& r);

using Sizes = std::vector<std::size_t>;
using Grid = std::vector<std::vector<Matrix>>; // [i][j]
using Column = Vec;

struct CodeParams {
    std::size_t n = 0, k = 0;
    Sizes m, p;
    std::uint32_t q = 0;

    std::size_t B() const;
    std::size_t R() const;
    std::size_t alpha(std::size_t i) const { return m[i] + p[i]; }
    // Throws InvalidParams.
    void validate() const;
};

// Linear code with construction matrices M[i][j] (p_j x m_i) and their
// factors M = B*A. Indices are 0-based internally.
struct IrregularArrayCode {
    Field field;
    CodeParams params;
    Grid M, A, Bm;

    // Factors each M[i][j] (diagonal included) by full_rank_decompose.
    static IrregularArrayCode from_construction(Field f, CodeParams params, Grid M);
    // M = B*A. Empty diagonal entries stand for zero blocks.
    static IrregularArrayCode from_factors(Field f, CodeParams params, Grid A, Grid Bm);

    std::size_t n() const { return params.n; }
    std::size_t k() const { return params.k; }
    bool zero_diagonal() const;
    // Throws ShapeMismatch / InternalRankFailure.
    void validate() const;
};

// Columns as stacks [x_i ; p_i].
struct Codeword {
    std::vector<Column> columns;
};

Vec data_part(const CodeParams& p, const Codeword& c, std::size_t i);
Vec parity_part(const CodeParams& p, const Codeword& c, std::size_t i);
Codeword assemble(const CodeParams& p, const std::vector<Vec>& data, const std::vector<Vec>& parity);
std::vector<Vec> split_data(const CodeParams& p, const Codeword& c);

// p_j = sum_i M[i][j] x_i.
std::vector<Vec> encode_direct(const IrregularArrayCode& code, const std::vector<Vec>& data);
// p_{i,j} = A x_i then p_j = sum_i B p_{i,j}.
std::vector<Vec> encode_pipeline(const IrregularArrayCode& code, const std::vector<Vec>& data);

struct GammaReport {
    std::vector<Sizes> matrix;
    Rational gamma;
};
GammaReport gamma_of(const IrregularArrayCode& code);
std::size_t redundancy(const IrregularArrayCode& code);
IrregularArrayCode zero_diagonal(const IrregularArrayCode& code);
// Codeword of code -> codeword of zero_diagonal(code).
Codeword zero_diagonal_map(const IrregularArrayCode& code, const Codeword& c);
// Off-diagonal column weights per data symbol; diagonal blocks are ignored,
// which is the value of the zero-diagonal normal form.
Rational update_complexity(const IrregularArrayCode& code);

struct BoundsReport {
    std::size_t n = 0, k = 0;
    Sizes m;                    // as given
    std::vector<std::size_t> order; // order[r] = input index of the r-th largest m
    std::size_t mu = 0;
    std::size_t r_min = 0;
    Rational gamma_min;
    std::optional<std::size_t> r_sma;
    Rational theta_lb;
    Sizes p_profile_min;
    std::optional<Sizes> p_profile_sma;
    std::vector<Sizes> gamma_assignment;
};
BoundsReport bounds(std::size_t n, std::size_t k, const Sizes& m);

enum class Admissibility { Admissible, NotAdmissible, Undetermined };
struct AdmissibleReport {
    Admissibility verdict = Admissibility::Undetermined;
    std::string reason;
    std::optional<Sizes> p;
};
AdmissibleReport mrmub_admissible(std::size_t n, std::size_t k, const Sizes& m);
const char* admissibility_name(Admissibility a);

struct FeasibleReport {
    bool feasible = true;
    std::vector<std::size_t> witness; // violating E (0-based)
    int condition = 0;                // 1 or 2 when infeasible
    std::size_t node = 0;             // offending node for condition 1
};
// 0 when E satisfies both necessary conditions, otherwise 1 or 2.
int check_subset(std::size_t n, const Sizes& m, const Sizes& p, const std::vector<Sizes>& gamma,
                 const std::vector<std::size_t>& E, std::size_t* node = nullptr);
FeasibleReport feasible(std::size_t n, std::size_t k, const Sizes& m, const Sizes& p,
                        const std::vector<Sizes>& gamma);

// Generic erasure decoder: solves for the erased data from the surviving
// parities, then re-encodes. Throws TooManyErasures / Underdetermined.
Codeword decode_linear(const IrregularArrayCode& code, const Codeword& partial,
                       const std::vector<bool>& erased);

// Stacked system for erased set E given the surviving columns; recoverable
// iff its rank equals sum_{e in E} m_e.
Matrix erasure_system(const IrregularArrayCode& code, const std::vector<bool>& erased);

using Decoder = std::function<Codeword(const Codeword&, const std::vector<bool>&)>;

struct MdsReport {
    enum class Verdict { Mds, NotMds, NotExact } verdict = Verdict::Mds;
    std::vector<std::size_t> witness;      // failing k-subset of accessed columns
    std::vector<std::size_t> insufficient; // (k-1)-subset that cannot recover
    std::size_t patterns = 0;
    std::size_t fills = 0;
    std::string detail;
    bool ok() const { return verdict == Verdict::Mds; }
};
// Checks every erasure pattern of size <= n-k (rank test plus `fills`
// random decodes through `decoder`, defaulting to decode_linear), then
// exhibits an insufficient (k-1)-subset.
MdsReport verify_mds(const IrregularArrayCode& code, const Decoder& decoder = {},
                     std::size_t fills = 20, std::uint64_t seed = 1);

} // namespace ubcode
