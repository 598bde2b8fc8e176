#include "ubcode/serialize.hpp"

#include <fstream>
#include <sstream>

namespace ubcode {

namespace {

template <class T>
T get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::InvalidSpec, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidSpec, std::string("bad value for '") + key + "': " + e.what());
    }
}

Sizes sizes_from_json(const Json& j, const char* key) {
    const auto v = get<std::vector<std::int64_t>>(j, key);
    Sizes out;
    for (auto x : v) {
        if (x < 0) fail(ErrorCode::InvalidSpec, std::string("negative entry in '") + key + "'");
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

Json grid_to_json(const Grid& g) {
    Json out = Json::array();
    for (const auto& row : g) {
        Json r = Json::array();
        for (const Matrix& m : row) r.push_back(matrix_to_json(m));
        out.push_back(r);
    }
    return out;
}

Grid grid_from_json(const Field& f, const Json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) fail(ErrorCode::InvalidSpec, "grid must be n x n");
    Grid g(n, std::vector<Matrix>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) fail(ErrorCode::InvalidSpec, "grid must be n x n");
        for (std::size_t k = 0; k < n; ++k) g[i][k] = matrix_from_json(f, j[i][k]);
    }
    return g;
}

Json code_matrices(const IrregularArrayCode& code) {
    const std::size_t n = code.n();
    Grid A = code.A, B = code.Bm;
    for (std::size_t i = 0; i < n; ++i)
        if (code.M[i][i].is_zero()) {
            A[i][i] = Matrix(code.field, 0, code.params.m[i]);
            B[i][i] = Matrix(code.field, code.params.p[i], 0);
        }
    return {{"A", grid_to_json(A)}, {"B", grid_to_json(B)}};
}

IrregularArrayCode code_from_parts(const Json& j) {
    const Field f = field_from_json(get<Json>(j, "field"));
    const Json& pj = j.at("params");
    CodeParams P;
    P.n = get<std::size_t>(pj, "n");
    P.k = get<std::size_t>(pj, "k");
    P.m = sizes_from_json(pj, "m");
    P.p = sizes_from_json(pj, "p");
    P.q = f->q();
    if (pj.contains("q") && get<std::uint32_t>(pj, "q") != f->q())
        fail(ErrorCode::InvalidSpec, "params.q disagrees with the field");
    if (P.m.size() != P.n || P.p.size() != P.n) fail(ErrorCode::InvalidSpec, "m and p need n entries");
    try {
        P.validate();
    } catch (const Error& e) {
        fail(ErrorCode::InvalidSpec, e.what());
    }
    const Json& mj = get<Json>(j, "matrices");
    Grid A = grid_from_json(f, get<Json>(mj, "A"), P.n), B = grid_from_json(f, get<Json>(mj, "B"), P.n);
    try {
        return IrregularArrayCode::from_factors(f, P, A, B);
    } catch (const Error& e) {
        fail(ErrorCode::InvalidSpec, e.what());
    }
}

Json construction_to_json(const BuiltCode& b) {
    Json gens = Json::array(), vs = Json::array();
    for (const auto& base : b.base) gens.push_back(matrix_to_json(base.generator));
    for (const Matrix& v : b.V) vs.push_back(matrix_to_json(v));
    return {{"kind", b.kind}, {"generators", gens}, {"V", vs}};
}

// Rebuilds the construction; nullopt when it does not reproduce `code`.
std::optional<BuiltCode> construction_from_json(const Json& c, const IrregularArrayCode& code) {
    const std::string kind = get<std::string>(c, "kind");
    const std::size_t n = code.n();
    BuildOptions o;
    o.field = code.field;
    const Json& gens = get<Json>(c, "generators");
    const Json& vs = get<Json>(c, "V");
    if (!gens.is_array() || gens.size() != n || !vs.is_array() || vs.size() != n)
        fail(ErrorCode::InvalidSpec, "construction needs n generators and n assembly matrices");
    for (std::size_t i = 0; i < n; ++i) {
        o.generators.emplace_back(matrix_from_json(code.field, gens[i]));
        o.Vj.emplace_back(matrix_from_json(code.field, vs[i]));
    }
    try {
        BuiltCode b;
        if (kind == "mrmub") {
            b = build_mrmub(n, code.k(), code.params.m[0], o);
        } else if (kind == "mub") {
            b = build_mub(n, code.k(), code.params.m, o);
        } else {
            fail(ErrorCode::InvalidSpec, "unknown construction kind '" + kind + "'");
        }
        if (b.code.params.m != code.params.m || b.code.params.p != code.params.p) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (b.code.M[i][j] != code.M[i][j]) return std::nullopt;
        return b;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidSpec) throw;
        return std::nullopt;
    }
}

} // namespace

Json field_to_json(const GaloisField& f) {
    return {{"q", f.q()}, {"modulus", f.modulus()}, {"primitive", f.primitive()}};
}

Field field_from_json(const Json& j) {
    const auto q = get<std::uint32_t>(j, "q");
    Field f;
    try {
        f = field_new(q);
    } catch (const Error& e) {
        fail(ErrorCode::InvalidSpec, e.what());
    }
    if (j.contains("modulus") && get<std::vector<std::uint32_t>>(j, "modulus") != f->modulus())
        fail(ErrorCode::InvalidSpec, "field modulus differs from the canonical one");
    if (j.contains("primitive") && get<Felt>(j, "primitive") != f->primitive())
        fail(ErrorCode::InvalidSpec, "primitive element differs from the canonical one");
    return f;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const Field& f, const Json& j) {
    const auto r = get<std::size_t>(j, "rows"), c = get<std::size_t>(j, "cols");
    const auto e = get<std::vector<std::vector<std::int64_t>>>(j, "entries");
    if (e.size() != r) fail(ErrorCode::InvalidSpec, "matrix entries need one array per row");
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (e[i].size() != c) fail(ErrorCode::InvalidSpec, "matrix row length");
        for (std::size_t k = 0; k < c; ++k) {
            if (e[i][k] < 0 || e[i][k] >= static_cast<std::int64_t>(f->q()))
                fail(ErrorCode::InvalidSpec, "matrix entry outside the field");
            m(i, k) = static_cast<Felt>(e[i][k]);
        }
    }
    return m;
}

Json sizes_to_json(const Sizes& s) { return Json(s); }

Json params_to_json(const CodeParams& p) {
    return {{"n", p.n}, {"k", p.k}, {"m", p.m}, {"p", p.p}, {"q", p.q}};
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Json code_to_json(const ClusterCode& code) {
    Json out;
    if (const TransformedCode* t = code.transformed()) {
        const IrregularArrayCode& base = t->base();
        out["kind"] = "transformed";
        out["field"] = field_to_json(*base.field);
        out["params"] = params_to_json(base.params);
        out["matrices"] = code_matrices(base);
        Json pairs = Json::array();
        for (const NodePair& p : t->pairs()) pairs.push_back({p.first + 1, p.second + 1});
        out["transform"] = {{"pairs", pairs}, {"g", t->g()}};
        return out;
    }
    const IrregularArrayCode& c = code.linear();
    out["kind"] = code.kind();
    out["field"] = field_to_json(*c.field);
    out["params"] = params_to_json(c.params);
    out["matrices"] = code_matrices(c);
    if (const BuiltCode* b = code.built()) out["construction"] = construction_to_json(*b);
    if (auto* lc = dynamic_cast<const LinearCode*>(&code)) {
        Json plans = Json::array();
        for (const RepairPlan& p : lc->registered_plans()) {
            Json d = Json::array();
            for (const Download& dl : p.downloads) d.push_back({{"helper", dl.helper + 1}, {"F", matrix_to_json(dl.F)}});
            plans.push_back({{"node", p.node + 1}, {"downloads", d}});
        }
        if (!plans.empty()) out["repair_plans"] = plans;
    }
    return out;
}

CodePtr code_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::InvalidSpec, "code spec must be a JSON object");
    const IrregularArrayCode code = code_from_parts(j);
    std::optional<BuiltCode> built;
    if (j.contains("construction")) built = construction_from_json(j.at("construction"), code);
    if (j.contains("transform")) {
        const Json& t = j.at("transform");
        std::vector<NodePair> pairs;
        for (const Json& p : get<Json>(t, "pairs")) {
            if (!p.is_array() || p.size() != 2) fail(ErrorCode::InvalidSpec, "pair must have two nodes");
            const auto a = p[0].get<std::int64_t>(), b = p[1].get<std::int64_t>();
            if (a < 1 || b < 1) fail(ErrorCode::InvalidPair, "pair nodes are 1-based");
            pairs.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
        }
        std::optional<Felt> g;
        if (t.contains("g")) g = get<Felt>(t, "g");
        return std::make_shared<TransformedClusterCode>(TransformedCode::from_pairs(code, pairs, g));
    }
    auto lc = built ? std::make_shared<LinearCode>(*built) : std::make_shared<LinearCode>(code);
    if (j.contains("repair_plans")) {
        for (const Json& pj : j.at("repair_plans")) {
            RepairPlan plan;
            const auto node = get<std::size_t>(pj, "node");
            if (node < 1) fail(ErrorCode::InvalidSpec, "repair plan nodes are 1-based");
            plan.node = node - 1;
            for (const Json& d : get<Json>(pj, "downloads")) {
                const auto h = get<std::size_t>(d, "helper");
                if (h < 1) fail(ErrorCode::InvalidSpec, "repair plan nodes are 1-based");
                plan.downloads.push_back({h - 1, matrix_from_json(code.field, get<Json>(d, "F"))});
            }
            lc->register_plan(plan);
        }
    }
    return lc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

CodePtr read_code_file(const std::string& path) {
    const std::string text = read_text_file(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidSpec, std::string("'") + path + "' is not JSON: " + e.what());
    }
    return code_from_json(j);
}

namespace {

int hex_width(const GaloisField& f) {
    int w = 1;
    for (std::uint32_t v = (f.q() - 1) >> 4; v; v >>= 4) ++w;
    return w;
}

} // namespace

std::string write_columns(const GaloisField& f, const std::vector<Vec>& cols, const std::vector<bool>& erased) {
    const int w = hex_width(f);
    std::ostringstream os;
    static const char* digits = "0123456789abcdef";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i < erased.size() && erased[i]) {
            os << "x\n";
            continue;
        }
        if (cols[i].empty()) {
            os << "-\n";
            continue;
        }
        for (std::size_t t = 0; t < cols[i].size(); ++t) {
            if (t) os << ' ';
            std::string s(static_cast<std::size_t>(w), '0');
            Felt v = cols[i][t];
            for (int d = w - 1; d >= 0; --d, v >>= 4) s[static_cast<std::size_t>(d)] = digits[v & 15];
            os << s;
        }
        os << "\n";
    }
    return os.str();
}

ColumnFile read_columns(const GaloisField& f, const std::string& text) {
    ColumnFile out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() == 1 && (toks[0] == "x" || toks[0] == "-")) {
            out.columns.emplace_back();
            out.erased.push_back(toks[0] == "x");
            continue;
        }
        Vec col;
        for (const std::string& t : toks) {
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(t, &used, 16);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size() || v >= f.q())
                fail(ErrorCode::InvalidSpec, "line " + std::to_string(lineno) + ": bad symbol '" + t + "'");
            col.push_back(static_cast<Felt>(v));
        }
        out.columns.push_back(std::move(col));
        out.erased.push_back(false);
    }
    return out;
}

Json bounds_to_json(const BoundsReport& b) {
    Json out = {{"n", b.n},
                {"k", b.k},
                {"m", b.m},
                {"mu", b.mu},
                {"r_min", b.r_min},
                {"gamma_min", rational_to_json(b.gamma_min)},
                {"theta_lb", rational_to_json(b.theta_lb)},
                {"p_profile_min", b.p_profile_min},
                {"gamma_assignment", b.gamma_assignment}};
    out["r_sma"] = b.r_sma ? Json(*b.r_sma) : Json(nullptr);
    out["p_profile_sma"] = b.p_profile_sma ? Json(*b.p_profile_sma) : Json(nullptr);
    return out;
}

Json admissible_to_json(const AdmissibleReport& a) {
    Json out = {{"verdict", admissibility_name(a.verdict)}, {"reason", a.reason}};
    out["p"] = a.p ? Json(*a.p) : Json(nullptr);
    return out;
}

} // namespace ubcode
