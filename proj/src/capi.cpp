#include "ubcode/ubcode.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ubcode/cluster.hpp"
#include "ubcode/fixtures.hpp"
#include "ubcode/rng.hpp"
#include "ubcode/serialize.hpp"
#include "ubcode/verify.hpp"

using namespace ubcode;

struct ubc_code {
    CodePtr code;
};

struct ubc_cluster {
    Cluster cl;
};

namespace {

thread_local std::string last_error;

int set_error(int status, const std::string& msg) {
    last_error = msg;
    return status;
}

template <class Fn>
int guard(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return UBC_OK;
    } catch (const Error& e) {
        return set_error(static_cast<int>(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return set_error(UBC_INVALID_SPEC, std::string("InvalidSpec: ") + e.what());
    } catch (const std::bad_alloc&) {
        return set_error(UBC_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(UBC_INTERNAL, e.what());
    }
}

void need(const void* p, const char* name) {
    if (!p) throw Error(static_cast<ErrorCode>(UBC_NULL_ARGUMENT), std::string("NullArgument: ") + name);
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::size_t node_index(const CodeParams& P, std::size_t node) {
    if (node < 1 || node > P.n)
        fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(node) + " (n=" + std::to_string(P.n) + ")");
    return node - 1;
}

Sizes sizes(std::size_t n, const std::size_t* m) {
    need(m, "m");
    return Sizes(m, m + n);
}

std::size_t total_data(const CodeParams& P) {
    std::size_t s = 0;
    for (std::size_t v : P.m) s += v;
    return s;
}

std::size_t total_columns(const CodeParams& P) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < P.n; ++i) s += P.alpha(i);
    return s;
}

void check_symbols(const GaloisField& F, const uint32_t* v, std::size_t len) {
    for (std::size_t t = 0; t < len; ++t)
        if (!F.contains(v[t])) fail(ErrorCode::InvalidParams, "symbol " + std::to_string(v[t]) + " outside the field");
}

std::vector<Vec> unflatten_data(const ClusterCode& c, const uint32_t* data, std::size_t len) {
    const CodeParams& P = c.params();
    need(data, "data");
    if (len != total_data(P)) fail(ErrorCode::ShapeMismatch, "data length " + std::to_string(len));
    check_symbols(*c.field(), data, len);
    std::vector<Vec> out(P.n);
    std::size_t at = 0;
    for (std::size_t i = 0; i < P.n; ++i) {
        out[i].assign(data + at, data + at + P.m[i]);
        at += P.m[i];
    }
    return out;
}

Codeword unflatten_columns(const ClusterCode& c, const uint32_t* cols, std::size_t len) {
    const CodeParams& P = c.params();
    need(cols, "columns");
    if (len != total_columns(P)) fail(ErrorCode::ShapeMismatch, "codeword length " + std::to_string(len));
    check_symbols(*c.field(), cols, len);
    Codeword cw;
    cw.columns.resize(P.n);
    std::size_t at = 0;
    for (std::size_t i = 0; i < P.n; ++i) {
        cw.columns[i].assign(cols + at, cols + at + P.alpha(i));
        at += P.alpha(i);
    }
    return cw;
}

void flatten(const Codeword& cw, uint32_t* out) {
    std::size_t at = 0;
    for (const Column& c : cw.columns)
        for (Felt v : c) out[at++] = v;
}

CodePtr fixture(const std::string& kind) {
    if (kind == "fig1b") {
        auto lc = std::make_shared<LinearCode>(fig1b_code());
        for (std::size_t r = 0; r < 4; ++r) lc->register_plan(fig1b_repair(r));
        return lc;
    }
    return std::make_shared<LinearCode>(fig3_code());
}

Json verify_to_json(const VerifyReport& r) {
    Json checks = Json::array();
    for (const Check& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    const char* verdict = r.mds.verdict == MdsReport::Verdict::Mds      ? "Mds"
                          : r.mds.verdict == MdsReport::Verdict::NotMds ? "NotMds"
                                                                        : "NotExact";
    Json witness = Json::array();
    for (std::size_t w : r.mds.witness) witness.push_back(w + 1);
    return {{"ok", r.ok()}, {"mds", verdict}, {"witness", witness}, {"checks", checks}};
}

Json simulation_to_json(const SimulationReport& r) {
    return {{"updates", r.updates},
            {"repairs", r.repairs},
            {"seed", r.seed},
            {"gamma_measured", rational_to_json(r.gamma_measured)},
            {"gamma_theory", rational_to_json(r.gamma_theory)},
            {"theta", rational_to_json(r.theta)},
            {"beta", r.beta},
            {"repair_count", r.repair_count},
            {"repair_measured", r.repair_measured},
            {"repairs_restored", r.repairs_restored},
            {"audit_ok", r.audit_ok},
            {"totals", r.log.totals()}};
}

} // namespace

extern "C" {

const char* ubc_last_error(void) { return last_error.c_str(); }

const char* ubc_status_name(int status) {
    if (status == UBC_NULL_ARGUMENT) return "NullArgument";
    if (status == UBC_INTERNAL) return "Internal";
    if (status < 0 || status > UBC_IO) return "Unknown";
    return error_name(static_cast<ErrorCode>(status));
}

void ubc_string_free(char* s) { std::free(s); }

uint64_t ubc_default_seed(void) { return default_seed(); }

int ubc_bounds(size_t n, size_t k, const size_t* m, int json, char** out) {
    return guard([&] {
        need(out, "out");
        const Sizes ms = sizes(n, m);
        const BoundsReport b = bounds(n, k, ms);
        const AdmissibleReport a = mrmub_admissible(n, k, ms);
        if (json) {
            Json j = bounds_to_json(b);
            j["admissible"] = admissible_to_json(a);
            *out = dup(j.dump(2) + "\n");
            return;
        }
        auto list = [](const Sizes& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        std::string t = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " m=" + list(ms) + "\n";
        t += "mu=" + std::to_string(b.mu) + " R_min=" + std::to_string(b.r_min) + " gamma_min=" + to_string(b.gamma_min);
        t += " R_sma=" + (b.r_sma ? std::to_string(*b.r_sma) : std::string("n/a")) + "\n";
        t += "theta_lb=" + to_string(b.theta_lb) + "\n";
        t += "p_profile_min=" + list(b.p_profile_min) + "\n";
        if (b.p_profile_sma) t += "p_profile_sma=" + list(*b.p_profile_sma) + "\n";
        t += "gamma_assignment:\n";
        for (const Sizes& row : b.gamma_assignment) t += "  " + list(row) + "\n";
        t += std::string("mrmub_admissible=") + admissibility_name(a.verdict);
        if (!a.reason.empty()) t += " (" + a.reason + ")";
        t += "\n";
        *out = dup(t);
    });
}

int ubc_admissible_json(size_t n, size_t k, const size_t* m, char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(admissible_to_json(mrmub_admissible(n, k, sizes(n, m))).dump(2));
    });
}

int ubc_feasible_json(size_t n, size_t k, const size_t* m, const size_t* p, const size_t* gamma, char** out) {
    return guard([&] {
        need(out, "out");
        need(gamma, "gamma");
        std::vector<Sizes> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i].assign(gamma + i * n, gamma + (i + 1) * n);
        const FeasibleReport f = feasible(n, k, sizes(n, m), sizes(n, p), g);
        Json w = Json::array();
        for (std::size_t e : f.witness) w.push_back(e + 1);
        Json j = {{"feasible", f.feasible}, {"condition", f.condition}, {"witness", w}};
        if (f.condition == 1) j["node"] = f.node + 1;
        *out = dup(j.dump(2));
    });
}

int ubc_code_build(const char* kind, size_t n, size_t k, const size_t* m, uint32_t q, ubc_code** out) {
    return guard([&] {
        need(kind, "kind");
        need(out, "out");
        *out = nullptr;
        const std::string s = kind;
        CodePtr code;
        if (s == "fig1b" || s == "fig3") {
            code = fixture(s);
        } else if (s == "mrmub" || s == "mub") {
            const Sizes ms = sizes(n, m);
            BuildOptions opts;
            if (q) opts.field = field_new(q);
            if (s == "mrmub") {
                for (std::size_t v : ms)
                    if (v != ms[0]) fail(ErrorCode::InvalidParams, "mrmub needs equal data sizes; use mub");
                code = std::make_shared<LinearCode>(build_mrmub(n, k, ms.empty() ? 0 : ms[0], opts));
            } else {
                code = std::make_shared<LinearCode>(build_mub(n, k, ms, opts));
            }
        } else {
            fail(ErrorCode::InvalidParams, "unknown kind '" + s + "'");
        }
        *out = new ubc_code{code};
    });
}

int ubc_code_transform(const ubc_code* base, size_t rounds, uint32_t g, ubc_code** out) {
    return guard([&] {
        need(base, "base");
        need(out, "out");
        *out = nullptr;
        std::optional<Felt> gg;
        if (g) gg = g;
        auto t = TransformedCode::iterate_transform(base->code->linear(), rounds, gg);
        *out = new ubc_code{std::make_shared<TransformedClusterCode>(std::move(t))};
    });
}

int ubc_code_pair_transform(const ubc_code* base, size_t a, size_t b, uint32_t g, ubc_code** out) {
    return guard([&] {
        need(base, "base");
        need(out, "out");
        *out = nullptr;
        if (a < 1 || b < 1) fail(ErrorCode::InvalidPair, "pair nodes are 1-based");
        std::optional<Felt> gg;
        if (g) gg = g;
        auto t = TransformedCode::pair_transform(base->code->linear(), {a - 1, b - 1}, gg);
        *out = new ubc_code{std::make_shared<TransformedClusterCode>(std::move(t))};
    });
}

int ubc_code_from_json(const char* json, ubc_code** out) {
    return guard([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        Json j;
        try {
            j = Json::parse(json);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorCode::InvalidSpec, e.what());
        }
        *out = new ubc_code{code_from_json(j)};
    });
}

int ubc_code_to_json(const ubc_code* code, char** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        *out = dup(code_to_json(*code->code).dump(2));
    });
}

int ubc_code_info_json(const ubc_code* code, char** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        const ClusterCode& c = *code->code;
        const IrregularArrayCode& lin = c.linear();
        const CodeParams& P = lin.params;
        const BoundsReport b = bounds(P.n, P.k, P.m);
        const GammaReport gr = gamma_of(lin);
        std::vector<Sizes> msg(P.n, Sizes(P.n, 0));
        Sizes beta;
        for (std::size_t u = 0; u < P.n; ++u) {
            for (std::size_t j = 0; j < P.n; ++j) msg[u][j] = c.message_size(u, j);
            beta.push_back(c.repair_plan(u).symbols());
        }
        Json j = {{"kind", c.kind()},
                  {"q", lin.field->q()},
                  {"params", params_to_json(P)},
                  {"R", redundancy(lin)},
                  {"r_min", b.r_min},
                  {"gamma", rational_to_json(gr.gamma)},
                  {"gamma_min", rational_to_json(b.gamma_min)},
                  {"gamma_matrix", gr.matrix},
                  {"message_sizes", msg},
                  {"theta", rational_to_json(update_complexity(lin))},
                  {"repair_download", beta},
                  {"mrmub", is_mrmub(lin)}};
        if (const TransformedCode* t = c.transformed()) {
            Json pairs = Json::array();
            for (const NodePair& p : t->pairs()) pairs.push_back({p.first + 1, p.second + 1});
            j["pairs"] = pairs;
            j["g"] = t->g();
        }
        *out = dup(j.dump(2));
    });
}

void ubc_code_free(ubc_code* code) { delete code; }

size_t ubc_code_n(const ubc_code* code) { return code ? code->code->params().n : 0; }
size_t ubc_code_k(const ubc_code* code) { return code ? code->code->params().k : 0; }
uint32_t ubc_code_q(const ubc_code* code) { return code ? code->code->field()->q() : 0; }

size_t ubc_code_data_len(const ubc_code* code, size_t node) {
    if (!code || node < 1 || node > code->code->params().n) return 0;
    return code->code->params().m[node - 1];
}

size_t ubc_code_column_len(const ubc_code* code, size_t node) {
    if (!code || node < 1 || node > code->code->params().n) return 0;
    return code->code->params().alpha(node - 1);
}

size_t ubc_code_total_data(const ubc_code* code) { return code ? total_data(code->code->params()) : 0; }
size_t ubc_code_total_columns(const ubc_code* code) { return code ? total_columns(code->code->params()) : 0; }

int ubc_encode(const ubc_code* code, const uint32_t* data, size_t data_len, uint32_t* columns, size_t columns_len) {
    return guard([&] {
        need(code, "code");
        need(columns, "columns");
        const ClusterCode& c = *code->code;
        if (columns_len != total_columns(c.params())) fail(ErrorCode::ShapeMismatch, "codeword buffer length");
        flatten(c.encode(unflatten_data(c, data, data_len)), columns);
    });
}

int ubc_decode(const ubc_code* code, const uint32_t* columns, size_t columns_len, const unsigned char* erased,
               uint32_t* out, size_t out_len) {
    return guard([&] {
        need(code, "code");
        need(erased, "erased");
        need(out, "out");
        const ClusterCode& c = *code->code;
        const CodeParams& P = c.params();
        if (out_len != total_columns(P)) fail(ErrorCode::ShapeMismatch, "output buffer length");
        std::vector<bool> e(P.n);
        for (std::size_t i = 0; i < P.n; ++i) e[i] = erased[i] != 0;
        // Erased columns may hold anything; zero them before the range check.
        need(columns, "columns");
        if (columns_len != total_columns(P)) fail(ErrorCode::ShapeMismatch, "codeword length");
        std::vector<uint32_t> clean(columns, columns + columns_len);
        std::size_t at = 0;
        for (std::size_t i = 0; i < P.n; ++i) {
            if (e[i]) std::fill(clean.begin() + at, clean.begin() + at + P.alpha(i), 0);
            at += P.alpha(i);
        }
        flatten(c.decode(unflatten_columns(c, clean.data(), clean.size()), e), out);
    });
}

int ubc_update_columns(const ubc_code* code, uint32_t* columns, size_t columns_len, size_t node,
                       const uint32_t* new_data, size_t data_len, size_t* sent, char** log) {
    return guard([&] {
        need(code, "code");
        need(new_data, "new_data");
        const ClusterCode& c = *code->code;
        const std::size_t i = node_index(c.params(), node);
        if (data_len != c.params().m[i]) fail(ErrorCode::ShapeMismatch, "update length");
        check_symbols(*c.field(), new_data, data_len);
        Codeword cw = unflatten_columns(c, columns, columns_len);
        const TransferLog l = update_codeword(c, cw, i, Vec(new_data, new_data + data_len));
        flatten(cw, columns);
        if (sent) *sent = l.total();
        if (log) *log = dup(l.lines());
    });
}

int ubc_repair_column(const ubc_code* code, uint32_t* columns, size_t columns_len, size_t node, size_t* downloaded,
                      char** log) {
    return guard([&] {
        need(code, "code");
        const ClusterCode& c = *code->code;
        const std::size_t i = node_index(c.params(), node);
        need(columns, "columns");
        if (columns_len != total_columns(c.params())) fail(ErrorCode::ShapeMismatch, "codeword length");
        // The lost column's contents are irrelevant.
        std::size_t at = 0;
        for (std::size_t j = 0; j < i; ++j) at += c.params().alpha(j);
        std::fill(columns + at, columns + at + c.params().alpha(i), 0);
        Codeword cw = unflatten_columns(c, columns, columns_len);
        const TransferLog l = repair_codeword(c, cw, i);
        flatten(cw, columns);
        if (downloaded) *downloaded = l.total();
        if (log) *log = dup(l.lines());
    });
}

int ubc_verify(const ubc_code* code, uint64_t seed, int json, char** out, int* passed) {
    return guard([&] {
        need(code, "code");
        const VerifyReport r = verify_suite(*code->code, seed);
        if (out) *out = dup(json ? verify_to_json(r).dump(2) + "\n" : r.text());
        if (passed) *passed = r.ok() ? 1 : 0;
    });
}

int ubc_format_vectors(const ubc_code* code, int columns, const uint32_t* flat, size_t len,
                       const unsigned char* erased, char** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        const ClusterCode& c = *code->code;
        const CodeParams& P = c.params();
        std::vector<Vec> vs;
        if (columns) {
            vs = unflatten_columns(c, flat, len).columns;
        } else {
            vs = unflatten_data(c, flat, len);
        }
        std::vector<bool> e(P.n, false);
        if (erased)
            for (std::size_t i = 0; i < P.n; ++i) e[i] = erased[i] != 0;
        *out = dup(write_columns(*c.field(), vs, e));
    });
}

int ubc_parse_vectors(const ubc_code* code, int columns, const char* text, uint32_t* flat, size_t len,
                      unsigned char* erased) {
    return guard([&] {
        need(code, "code");
        need(text, "text");
        need(flat, "flat");
        const ClusterCode& c = *code->code;
        const CodeParams& P = c.params();
        const std::size_t want = columns ? total_columns(P) : total_data(P);
        if (len != want) fail(ErrorCode::ShapeMismatch, "buffer length");
        const ColumnFile f = read_columns(*c.field(), text);
        if (f.columns.size() != P.n)
            fail(ErrorCode::ShapeMismatch, "expected " + std::to_string(P.n) + " lines, found " +
                                               std::to_string(f.columns.size()));
        std::size_t at = 0;
        for (std::size_t i = 0; i < P.n; ++i) {
            const std::size_t l = columns ? P.alpha(i) : P.m[i];
            if (f.erased[i]) {
                if (!erased) fail(ErrorCode::InvalidSpec, "line " + std::to_string(i + 1) + " is marked erased");
                std::fill(flat + at, flat + at + l, 0);
            } else {
                if (f.columns[i].size() != l)
                    fail(ErrorCode::ShapeMismatch, "line " + std::to_string(i + 1) + " has " +
                                                       std::to_string(f.columns[i].size()) + " symbols, expected " +
                                                       std::to_string(l));
                std::copy(f.columns[i].begin(), f.columns[i].end(), flat + at);
            }
            if (erased) erased[i] = f.erased[i] ? 1 : 0;
            at += l;
        }
    });
}

int ubc_cluster_new(const ubc_code* code, uint64_t seed, ubc_cluster** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        *out = nullptr;
        *out = new ubc_cluster{Cluster::seeded(code->code, seed)};
    });
}

int ubc_cluster_update(ubc_cluster* cl, size_t node, const uint32_t* new_data, size_t data_len, size_t* sent,
                       char** log) {
    return guard([&] {
        need(cl, "cluster");
        need(new_data, "new_data");
        const ClusterCode& c = cl->cl.code();
        const std::size_t i = node_index(c.params(), node);
        check_symbols(*c.field(), new_data, data_len);
        const TransferLog l = cl->cl.apply_update(i, Vec(new_data, new_data + data_len));
        if (sent) *sent = l.total();
        if (log) *log = dup(l.lines());
    });
}

int ubc_cluster_repair(ubc_cluster* cl, size_t node, size_t* downloaded, char** log) {
    return guard([&] {
        need(cl, "cluster");
        const std::size_t i = node_index(cl->cl.code().params(), node);
        const TransferLog l = cl->cl.fail_and_repair(i);
        if (downloaded) *downloaded = l.total();
        if (log) *log = dup(l.lines());
    });
}

int ubc_cluster_audit(const ubc_cluster* cl, int* ok, size_t* node, size_t* row) {
    return guard([&] {
        need(cl, "cluster");
        need(ok, "ok");
        const AuditReport a = cl->cl.audit();
        *ok = a.ok ? 1 : 0;
        if (node) *node = a.ok ? 0 : a.node + 1;
        if (row) *row = a.ok ? 0 : a.row + 1;
    });
}

int ubc_cluster_corrupt(ubc_cluster* cl, size_t node, size_t row) {
    return guard([&] {
        need(cl, "cluster");
        const std::size_t i = node_index(cl->cl.code().params(), node);
        if (row < 1) fail(ErrorCode::ShapeMismatch, "rows are 1-based");
        cl->cl.corrupt(i, row - 1);
    });
}

int ubc_cluster_columns(const ubc_cluster* cl, uint32_t* out, size_t len) {
    return guard([&] {
        need(cl, "cluster");
        need(out, "out");
        if (len != total_columns(cl->cl.code().params())) fail(ErrorCode::ShapeMismatch, "buffer length");
        flatten(cl->cl.columns(), out);
    });
}

void ubc_cluster_free(ubc_cluster* cl) { delete cl; }

int ubc_simulate(const ubc_code* code, size_t updates, size_t repairs, uint64_t seed, int json, char** summary,
                 char** log, int* passed) {
    return guard([&] {
        need(code, "code");
        const SimulationReport r = simulate(code->code, updates, repairs, seed);
        if (summary) *summary = dup(json ? simulation_to_json(r).dump(2) + "\n" : r.summary());
        if (log) *log = dup(r.log.lines());
        if (passed) *passed = r.audit_ok && r.repairs_restored ? 1 : 0;
    });
}

int ubc_demo(const char* name, char** text, int* passed) {
    return guard([&] {
        need(name, "name");
        const DemoResult d = demo(name);
        if (text) *text = dup(d.text);
        if (passed) *passed = d.ok ? 1 : 0;
    });
}

} // extern "C"
