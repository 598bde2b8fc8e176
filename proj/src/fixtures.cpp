#include "ubcode/fixtures.hpp"

#include <map>
#include <sstream>

#include "ubcode/rng.hpp"

namespace ubcode {

namespace {

using Rows = std::vector<std::vector<Felt>>;

// Expected cell values, column by column.
const std::vector<std::vector<std::string>> kFig1bGrid = {
    {"x1,1", "x1,2", "x3,2+x4,1", "x2,1+x2,2+x3,2"},
    {"x2,1", "x2,2", "x1,1+x4,2", "x3,1+x3,2+x4,2"},
    {"x3,1", "x3,2", "x1,2+x2,1", "x1,2+x4,1+x4,2"},
    {"x4,1", "x4,2", "x2,2+x3,1", "x1,1+x1,2+x2,2"},
};

const std::map<std::pair<int, int>, std::vector<std::string>> kFig1bInter = {
    {{1, 2}, {"x1,1"}}, {{1, 3}, {"x1,2"}}, {{1, 4}, {"x1,1+x1,2"}},
    {{2, 1}, {"x2,1+x2,2"}}, {{2, 3}, {"x2,1"}}, {{2, 4}, {"x2,2"}},
    {{3, 1}, {"x3,2"}}, {{3, 2}, {"x3,1+x3,2"}}, {{3, 4}, {"x3,1"}},
    {{4, 1}, {"x4,1"}}, {{4, 2}, {"x4,2"}}, {{4, 3}, {"x4,1+x4,2"}},
};

const std::vector<std::vector<std::string>> kFig3Grid = {
    {"x1,1", "x1,2", "x1,3", "x1,4", "x2,1+x2,2", "x3,2"},
    {"x2,1", "x2,2", "x1,1", "x1,2", "x3,1+x3,2"},
    {"x3,1", "x3,2", "x1,3", "x1,4", "x2,1"},
    {"x1,1+x1,3+x3,1", "x1,2+x1,4+x3,1", "x2,2+x3,1"},
};

const std::map<std::pair<int, int>, std::vector<std::string>> kFig3Inter = {
    {{1, 2}, {"x1,1", "x1,2"}}, {{1, 3}, {"x1,3", "x1,4"}}, {{1, 4}, {"x1,1+x1,3", "x1,2+x1,4"}},
    {{2, 1}, {"x2,1+x2,2"}}, {{2, 3}, {"x2,1"}}, {{2, 4}, {"x2,2"}},
    {{3, 1}, {"x3,2"}}, {{3, 2}, {"x3,1+x3,2"}}, {{3, 4}, {"x3,1"}},
    {{4, 1}, {}}, {{4, 2}, {}}, {{4, 3}, {}},
};

std::string coeff_digits(const GaloisField& f, const Vec& v) {
    std::string out;
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (f.q() > 10 && t) out += ',';
        out += std::to_string(v[t]);
    }
    return out;
}

std::vector<std::size_t> offsets(const Sizes& m) {
    std::vector<std::size_t> off(m.size() + 1, 0);
    for (std::size_t i = 0; i < m.size(); ++i) off[i + 1] = off[i] + m[i];
    return off;
}

struct Symbol {
    std::size_t node, row;
    Vec coeffs;
};

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

} // namespace

BuiltCode fig1b_code() {
    const Field f = field_new(2);
    BuildOptions o;
    o.field = f;
    o.V = Matrix::from_rows(f, {{0, 1, 1}, {1, 1, 0}});
    return build_mrmub(4, 2, 2, o);
}

RepairPlan fig1b_repair(std::size_t r) {
    if (r >= 4) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(r + 1));
    const Field f = field_new(2);
    const std::vector<std::vector<std::size_t>> rows = {{0, 1}, {1, 2}, {0, 3}};
    RepairPlan plan;
    plan.node = r;
    for (std::size_t s = 0; s < 3; ++s) {
        Matrix F(f, 2, 4);
        for (std::size_t t = 0; t < 2; ++t) F(t, rows[s][t]) = 1;
        plan.downloads.push_back({(r + s + 1) % 4, F});
    }
    return plan;
}

BuiltCode fig3_code() {
    const Field f = field_new(2);
    BuildOptions o;
    o.field = f;
    o.Vj = {
        Matrix::identity(f, 2),
        Matrix::from_rows(f, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
        Matrix::identity(f, 3),
        Matrix::from_rows(f, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}),
    };
    return build_mub(4, 2, {4, 2, 2, 0}, o);
}

std::string expression(const GaloisField& f, const Vec& coeffs, const Sizes& m) {
    const auto off = offsets(m);
    if (coeffs.size() != off.back()) fail(ErrorCode::ShapeMismatch, "coefficient vector length");
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t t = 0; t < m[i]; ++t) {
            const Felt c = coeffs[off[i] + t];
            if (!c) continue;
            if (!out.empty()) out += '+';
            if (c != 1) out += std::to_string(c) + '*';
            out += "x" + std::to_string(i + 1) + "," + std::to_string(t + 1);
        }
    (void)f;
    return out.empty() ? "0" : out;
}

Vec parse_expression(const GaloisField& f, const std::string& s, const Sizes& m) {
    const auto off = offsets(m);
    Vec v(off.back(), 0);
    if (s == "0") return v;
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) {
        Felt c = 1;
        const auto star = term.find('*');
        if (star != std::string::npos) {
            c = static_cast<Felt>(std::stoul(term.substr(0, star)));
            term = term.substr(star + 1);
        }
        const auto comma = term.find(',');
        if (term.empty() || term[0] != 'x' || comma == std::string::npos)
            fail(ErrorCode::InvalidSpec, "bad term '" + term + "'");
        const std::size_t i = std::stoul(term.substr(1, comma - 1)), t = std::stoul(term.substr(comma + 1));
        if (i < 1 || i > m.size() || t < 1 || t > m[i - 1]) fail(ErrorCode::InvalidSpec, "unknown symbol " + term);
        v[off[i - 1] + t - 1] = f.add(v[off[i - 1] + t - 1], c);
    }
    return v;
}

namespace {

struct DemoSpec {
    std::string title;
    BuiltCode built;
    const std::vector<std::vector<std::string>>* grid;
    const std::map<std::pair<int, int>, std::vector<std::string>>* inter;
    bool registered_repair;
};

} // namespace

DemoResult demo(const std::string& name) {
    DemoSpec spec;
    if (name == "fig1b") {
        spec = {"fig1b: (4,2) MR-MUB code over GF(2), m = (2,2,2,2)", fig1b_code(), &kFig1bGrid, &kFig1bInter, true};
    } else if (name == "fig3") {
        spec = {"fig3: (4,2) MUB code over GF(2), m = (4,2,2,0)", fig3_code(), &kFig3Grid, &kFig3Inter, false};
    } else {
        fail(ErrorCode::InvalidParams, "unknown demo '" + name + "' (expected fig1b or fig3)");
    }
    const IrregularArrayCode& code = spec.built.code;
    const CodeParams& P = code.params;
    const GaloisField& F = *code.field;
    const auto off = offsets(P.m);
    std::ostringstream os;
    bool ok = true;
    std::size_t cells = 0, cells_ok = 0, inter = 0, inter_ok = 0;

    os << spec.title << "\n";
    os << "p = (";
    for (std::size_t j = 0; j < P.n; ++j) os << (j ? "," : "") << P.p[j];
    os << ")\n\n";

    os << "codeword grid\n";
    os << pad("node", 6) << pad("row", 5) << pad("part", 8) << pad("computed", 20) << pad("coefficients", 14)
       << pad("expected", 20) << "match\n";
    for (std::size_t j = 0; j < P.n; ++j) {
        const Matrix G = node_generator(code, j);
        const auto& exp = (*spec.grid)[j];
        if (exp.size() != G.rows()) fail(ErrorCode::InternalRankFailure, "fixture column size");
        for (std::size_t r = 0; r < G.rows(); ++r) {
            const Vec c = G.row(r);
            const bool match = c == parse_expression(F, exp[r], P.m);
            ++cells;
            cells_ok += match;
            os << pad(std::to_string(j + 1), 6) << pad(std::to_string(r + 1), 5)
               << pad(r < P.m[j] ? "data" : "parity", 8) << pad(expression(F, c, P.m), 20)
               << pad(coeff_digits(F, c), 14) << pad(exp[r], 20) << (match ? "yes" : "NO") << "\n";
        }
    }

    os << "\nintermediates p_{i,j}\n";
    os << pad("from", 6) << pad("to", 4) << pad("row", 5) << pad("computed", 20) << pad("expected", 20) << "match\n";
    for (std::size_t i = 0; i < P.n; ++i)
        for (std::size_t j = 0; j < P.n; ++j) {
            if (i == j) continue;
            const Matrix& A = code.A[i][j];
            const auto& exp = spec.inter->at({static_cast<int>(i + 1), static_cast<int>(j + 1)});
            if (A.rows() == 0) {
                const bool match = exp.empty();
                ++inter;
                inter_ok += match;
                os << pad(std::to_string(i + 1), 6) << pad(std::to_string(j + 1), 4) << pad("-", 5)
                   << pad("null", 20) << pad(exp.empty() ? "null" : exp[0], 20) << (match ? "yes" : "NO") << "\n";
                continue;
            }
            for (std::size_t r = 0; r < A.rows(); ++r) {
                Vec c(off.back(), 0);
                for (std::size_t t = 0; t < P.m[i]; ++t) c[off[i] + t] = A(r, t);
                const std::string e = r < exp.size() ? exp[r] : "?";
                const bool match = r < exp.size() && c == parse_expression(F, e, P.m) && A.rows() == exp.size();
                ++inter;
                inter_ok += match;
                os << pad(std::to_string(i + 1), 6) << pad(std::to_string(j + 1), 4) << pad(std::to_string(r + 1), 5)
                   << pad(expression(F, c, P.m), 20) << pad(e, 20) << (match ? "yes" : "NO") << "\n";
            }
        }

    const GammaReport gr = gamma_of(code);
    const Rational theta = update_complexity(code);
    const MdsReport mds = verify_mds(code, decoder_of(spec.built));
    os << "\nmetrics\n";
    os << "R=" << redundancy(code) << ", gamma=" << to_string(gr.gamma) << ", theta=" << to_string(theta) << "\n";
    os << "update bandwidth per node:";
    for (std::size_t i = 0; i < P.n; ++i) {
        std::size_t s = 0;
        for (std::size_t j = 0; j < P.n; ++j) s += gr.matrix[i][j];
        os << " " << s;
    }
    os << "\n";
    os << "mds: " << (mds.ok() ? "yes" : "NO") << " (" << mds.patterns << " erasure patterns, " << mds.fills
       << " random fills)\n";
    ok = ok && mds.ok();

    if (spec.registered_repair) {
        Rng rng(kDefaultSeed);
        std::vector<Vec> data(P.n);
        for (std::size_t i = 0; i < P.n; ++i) data[i] = rng.vec(F, P.m[i]);
        const Codeword cw = encode(spec.built, data);
        os << "repair downloads per node:";
        bool restored = true;
        for (std::size_t r = 0; r < P.n; ++r) {
            RepairPlan plan = fig1b_repair(r);
            prepare(code, plan);
            restored = restored && rebuild(plan, helper_payloads(plan, cw)) == cw.columns[r];
            os << " " << plan.symbols();
        }
        os << "\nrepair restores every node: " << (restored ? "yes" : "NO") << "\n";
        ok = ok && restored;
        RepairPlan first = fig1b_repair(0);
        os << "gamma=" << to_string(gr.gamma) << ", repair(node 1)=" << first.symbols() << ", theta=" << to_string(theta)
           << "\n";
    } else {
        std::size_t up1 = 0;
        for (std::size_t j = 0; j < P.n; ++j) up1 += gr.matrix[0][j];
        os << "gamma=" << to_string(gr.gamma) << ", R=" << redundancy(code) << ", update(node 1)=" << up1 << "\n";
    }

    ok = ok && cells == cells_ok && inter == inter_ok;
    os << "\ncells matched: " << cells_ok << "/" << cells << ", intermediates matched: " << inter_ok << "/" << inter
       << "\n";
    os << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    return {os.str(), ok};
}

} // namespace ubcode
