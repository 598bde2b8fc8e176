#include "ubcode/verify.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ubcode/combinatorics.hpp"
#include "ubcode/rng.hpp"

namespace ubcode {

namespace {

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
}

std::string matrix_str(const std::vector<Sizes>& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < g[i].size(); ++j) s += (j ? " " : "") + std::to_string(g[i][j]);
    }
    return s;
}

template <class Fn>
Check run(const std::string& name, Fn&& fn) {
    Check c{name, true, ""};
    try {
        fn(c);
    } catch (const Error& e) {
        c.ok = false;
        c.detail = e.what();
    }
    return c;
}

bool vertical(const CodeParams& P) {
    return std::all_of(P.m.begin(), P.m.end(), [&](std::size_t v) { return v == P.m[0]; });
}

} // namespace

bool VerifyReport::ok() const {
    return mds.ok() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::string VerifyReport::text() const {
    std::ostringstream os;
    for (const Check& c : checks) {
        std::string name = c.name;
        name.resize(20, ' ');
        os << (c.ok ? "ok    " : "FAIL  ") << name << c.detail << "\n";
    }
    os << (ok() ? "verify: pass" : "verify: FAIL") << "\n";
    return os.str();
}

WeightCounts weight_counts(const IrregularArrayCode& code) {
    const CodeParams& P = code.params;
    WeightCounts w;
    w.min_touched = std::numeric_limits<std::size_t>::max();
    w.min_heavy = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < P.n; ++i)
        for (std::size_t l = 0; l < P.m[i]; ++l) {
            std::size_t touched = 0;
            for (std::size_t j = 0; j < P.n; ++j) {
                if (j == i) continue;
                const Matrix& M = code.M[i][j];
                bool nz = false;
                for (std::size_t r = 0; r < M.rows() && !nz; ++r) nz = M(r, l) != 0;
                touched += nz;
            }
            w.min_touched = std::min(w.min_touched, touched);
        }
    for (std::size_t j = 0; j < P.n; ++j) {
        std::size_t heavy = 0;
        for (std::size_t i = 0; i < P.n; ++i) {
            if (i == j) continue;
            for (std::size_t c : column_weights(code.M[i][j])) heavy += c >= 2;
        }
        w.min_heavy = std::min(w.min_heavy, heavy);
        w.total_heavy += heavy;
    }
    return w;
}

bool is_mrmub(const IrregularArrayCode& code) {
    const CodeParams& P = code.params;
    const BoundsReport b = bounds(P.n, P.k, P.m);
    return redundancy(code) == b.r_min && gamma_of(code).gamma == b.gamma_min;
}

VerifyReport verify_suite(const ClusterCode& code, std::uint64_t seed, std::size_t fills) {
    VerifyReport rep;
    const IrregularArrayCode& lin = code.linear();
    const CodeParams& P = lin.params;
    const GaloisField& F = *lin.field;
    const std::size_t n = P.n, k = P.k;
    const BoundsReport bd = bounds(n, k, P.m);
    const GammaReport gr = gamma_of(lin);
    const std::string kind = code.kind();

    rep.checks.push_back(run("factors", [&](Check& c) {
        lin.validate();
        c.detail = "M = B*A with rank(A) = rank(B) = rank(M) for every block";
    }));

    rep.checks.push_back(run("mds", [&](Check& c) {
        rep.mds = verify_mds(lin, [&](const Codeword& p, const std::vector<bool>& e) { return code.decode(p, e); },
                             fills, seed);
        c.ok = rep.mds.ok();
        std::ostringstream os;
        if (rep.mds.verdict == MdsReport::Verdict::NotMds)
            os << "NotMds: columns " << join(rep.mds.witness) << " " << rep.mds.detail;
        else if (rep.mds.verdict == MdsReport::Verdict::NotExact)
            os << "NotExact: every " << k - 1 << "-subset recovers the data";
        else
            os << rep.mds.patterns << " erasure patterns x " << fills << " fills; " << k - 1 << "-subset "
               << join(rep.mds.insufficient) << " insufficient";
        c.detail = os.str();
    }));

    rep.checks.push_back(run("encode", [&](Check& c) {
        Rng rng(seed ^ 0x5eedULL);
        for (int t = 0; t < 100 && c.ok; ++t) {
            std::vector<Vec> data(n);
            for (std::size_t i = 0; i < n; ++i) data[i] = rng.vec(F, P.m[i]);
            const std::vector<Vec> direct = encode_direct(lin, data);
            c.ok = encode_pipeline(lin, data) == direct && code.encode(data).columns == assemble(P, data, direct).columns;
        }
        c.detail = c.ok ? "pipeline, direct and native encoders agree on 100 fills" : "encoders disagree";
    }));

    rep.checks.push_back(run("feasible", [&](Check& c) {
        if (binomial(n, n - k) > 1000000) {
            c.detail = "skipped: too many subsets";
            return;
        }
        const FeasibleReport f = feasible(n, k, P.m, P.p, gr.matrix);
        c.ok = f.feasible;
        c.detail = f.feasible ? "both necessary conditions hold for every (n-k)-subset"
                              : "condition " + std::to_string(f.condition) + " fails for E=" + join(f.witness);
    }));

    rep.checks.push_back(run("bounds", [&](Check& c) {
        const std::size_t R = redundancy(lin);
        std::ostringstream os;
        os << "R=" << R << " R_min=" << bd.r_min;
        if (bd.r_sma) os << " R_sma=" << *bd.r_sma;
        os << " gamma=" << to_string(gr.gamma) << " gamma_min=" << to_string(bd.gamma_min);
        c.ok = R >= bd.r_min && gr.gamma >= bd.gamma_min;
        if (kind == "mrmub") c.ok = c.ok && R == bd.r_min && gr.gamma == bd.gamma_min;
        if (kind == "mub") {
            c.ok = c.ok && gr.gamma == bd.gamma_min;
            if (k + 1 < n) c.ok = c.ok && bd.r_sma && R == *bd.r_sma;
        }
        c.detail = os.str();
    }));

    if (vertical(P) && is_mrmub(lin)) {
        rep.checks.push_back(run("update_complexity", [&](Check& c) {
            const Rational th = update_complexity(lin);
            c.ok = th >= bd.theta_lb;
            c.detail = "theta=" + to_string(th) + " lower bound " + to_string(bd.theta_lb);
        }));
        rep.checks.push_back(run("column_weights", [&](Check& c) {
            const WeightCounts w = weight_counts(lin);
            const std::size_t m = P.m[0];
            const std::size_t per = (k - 1) * m / k, total = (k - 1) * m * n / k;
            c.ok = w.min_touched >= n - k && w.min_heavy * k >= (k - 1) * m && w.total_heavy * k >= (k - 1) * m * n;
            std::ostringstream os;
            os << "min nodes touched " << w.min_touched << " (>= " << n - k << "), heavy columns per node >= "
               << w.min_heavy << " (>= " << per << "), total " << w.total_heavy << " (>= " << total << ")";
            c.detail = os.str();
        }));
    }

    rep.checks.push_back(run("update", [&](Check& c) {
        auto ptr = std::shared_ptr<const ClusterCode>(&code, [](const ClusterCode*) {});
        Rng rng(seed);
        Cluster cl = Cluster::seeded(ptr, seed);
        std::size_t total = 0;
        const std::size_t rounds = 2;
        for (std::size_t t = 0; t < rounds * n && c.ok; ++t) {
            const std::size_t i = t % n;
            const TransferLog log = cl.apply_update(i, rng.vec(F, P.m[i]));
            for (const Transfer& e : log.entries)
                if (e.count != code.message_size(e.from, e.to) || e.count < gr.matrix[e.from][e.to]) {
                    c.ok = false;
                    c.detail = "edge " + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1) + " sent " +
                               std::to_string(e.count) + " symbols";
                }
            total += log.total();
            const AuditReport a = cl.audit();
            if (!a.ok) {
                c.ok = false;
                c.detail = "after update of node " + std::to_string(i + 1) + ": " + a.detail;
            }
        }
        if (!c.ok) return;
        const Rational measured(static_cast<std::int64_t>(total), static_cast<std::int64_t>(rounds * n));
        // The linear protocol sends exactly rank(M_{i,j}) per edge; the
        // transformed protocol is held to its own message sizes.
        Rational expected = gr.gamma;
        if (code.transformed()) {
            std::size_t s = 0;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t j = 0; j < n; ++j) s += code.message_size(u, j);
            expected = Rational(static_cast<std::int64_t>(s), static_cast<std::int64_t>(n));
        }
        c.ok = measured == expected;
        c.detail = "round-robin measured gamma " + to_string(measured) + ", rank gamma " + to_string(gr.gamma);
    }));

    rep.checks.push_back(run("repair", [&](Check& c) {
        auto ptr = std::shared_ptr<const ClusterCode>(&code, [](const ClusterCode*) {});
        Cluster cl = Cluster::seeded(ptr, seed + 1);
        std::ostringstream os;
        os << "downloads per node:";
        for (std::size_t i = 0; i < n; ++i) {
            const Column before = cl.columns().columns[i];
            const TransferLog log = cl.fail_and_repair(i);
            if (cl.columns().columns[i] != before) {
                c.ok = false;
                os << " node " << i + 1 << " not restored";
            }
            os << " " << log.total();
        }
        c.detail = os.str();
    }));

    if (const BuiltCode* b = code.built()) {
        rep.checks.push_back(run("assembly_blocks", [&](Check& c) {
            std::size_t tested = 0;
            for_each_subset(n, n - k, [&](const std::vector<std::size_t>& E) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::find(E.begin(), E.end(), j) != E.end()) continue;
                    std::vector<Matrix> blocks;
                    for (std::size_t e : E) blocks.push_back(b->code.Bm[e][j]);
                    const Matrix S = hstack(lin.field, P.p[j], blocks);
                    ++tested;
                    if (rank(S) != S.cols()) {
                        c.ok = false;
                        c.detail = "stack for E=" + join(E) + " at node " + std::to_string(j + 1) + " is rank deficient";
                        return false;
                    }
                }
                return true;
            });
            if (c.ok) c.detail = std::to_string(tested) + " stacked assembly blocks have full column rank";
        }));
    }

    if (const TransformedCode* t = code.transformed()) {
        rep.checks.push_back(run("transform_gamma", [&](Check& c) {
            const auto gs = t->gamma_structural(), gf = t->gamma_formula();
            c.ok = gs == gf;
            c.detail = "protocol [" + matrix_str(gs) + "]";
            if (!c.ok) c.detail += " formula [" + matrix_str(gf) + "]";
            if (gs != gr.matrix) c.detail += "; ranks [" + matrix_str(gr.matrix) + "]";
        }));
        rep.checks.push_back(run("transform_repair", [&](Check& c) {
            const std::size_t opt = (n - 1) * t->alpha() / (n - k);
            std::vector<bool> paired(n, false);
            for (const NodePair& p : t->pairs()) paired[p.first] = paired[p.second] = true;
            std::ostringstream os;
            os << "optimum " << opt << ":";
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t s = code.repair_plan(i).symbols();
                if (paired[i] && s != opt) c.ok = false;
                os << " " << s << (paired[i] ? "*" : "");
            }
            os << " (* paired)";
            c.detail = os.str();
        }));
    }
    return rep;
}

} // namespace ubcode
