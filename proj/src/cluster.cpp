#include "ubcode/cluster.hpp"

#include <sstream>

#include "ubcode/rng.hpp"

namespace ubcode {

namespace {

void check_node(std::size_t n, std::size_t i) {
    if (i >= n) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(i + 1) + " (n=" + std::to_string(n) + ")");
}

} // namespace

LinearCode::LinearCode(IrregularArrayCode code) : code_(std::move(code)), plans_(code_.n()) { code_.validate(); }

LinearCode::LinearCode(BuiltCode built) : code_(built.code), built_(std::move(built)), plans_(code_.n()) {}

void LinearCode::register_plan(RepairPlan plan) {
    check_node(code_.n(), plan.node);
    plan.by_decode = false;
    prepare(code_, plan);
    plans_[plan.node] = std::move(plan);
}

std::vector<RepairPlan> LinearCode::registered_plans() const {
    std::vector<RepairPlan> out;
    for (const auto& p : plans_)
        if (p) out.push_back(*p);
    return out;
}

std::string LinearCode::kind() const { return built_ ? built_->kind : "linear"; }

Codeword LinearCode::encode(const std::vector<Vec>& data) const {
    const CodeParams& P = code_.params;
    if (data.size() != P.n) fail(ErrorCode::ShapeMismatch, "need one data vector per node");
    for (std::size_t i = 0; i < P.n; ++i)
        if (data[i].size() != P.m[i]) fail(ErrorCode::ShapeMismatch, "data length for node " + std::to_string(i + 1));
    return assemble(P, data, encode_pipeline(code_, data));
}

Codeword LinearCode::decode(const Codeword& partial, const std::vector<bool>& erased) const {
    return built_ ? ubcode::decode(*built_, partial, erased) : decode_linear(code_, partial, erased);
}

std::size_t LinearCode::message_size(std::size_t u, std::size_t j) const {
    check_node(code_.n(), u);
    check_node(code_.n(), j);
    return u == j ? 0 : code_.A[u][j].rows();
}

Vec LinearCode::send(std::size_t u, const Vec& delta, std::size_t j) const {
    check_node(code_.n(), u);
    check_node(code_.n(), j);
    return code_.A[u][j] * delta;
}

Vec LinearCode::recv(std::size_t u, std::size_t j, const Vec& payload) const {
    check_node(code_.n(), u);
    check_node(code_.n(), j);
    return code_.Bm[u][j] * payload;
}

Vec LinearCode::local(std::size_t u, const Vec& delta) const {
    check_node(code_.n(), u);
    return code_.M[u][u] * delta;
}

RepairPlan LinearCode::repair_plan(std::size_t i) const {
    check_node(code_.n(), i);
    if (plans_[i]) return *plans_[i];
    return naive_plan(code_, i);
}

TransformedClusterCode::TransformedClusterCode(TransformedCode code) : code_(std::move(code)) {
    for (std::size_t i = 0; i < code_.n(); ++i) plans_.push_back(code_.repair_plan(i));
}

Codeword TransformedClusterCode::decode(const Codeword& partial, const std::vector<bool>& erased) const {
    return decode_linear(code_.flat(), partial, erased);
}

RepairPlan TransformedClusterCode::repair_plan(std::size_t i) const {
    check_node(code_.n(), i);
    return plans_[i];
}

std::size_t TransferLog::total() const {
    std::size_t s = 0;
    for (const Transfer& t : entries) s += t.count;
    return s;
}

std::size_t TransferLog::total(const std::string& op) const {
    std::size_t s = 0;
    for (const Transfer& t : entries)
        if (t.op == op) s += t.count;
    return s;
}

std::map<std::string, std::size_t> TransferLog::totals() const {
    std::map<std::string, std::size_t> out;
    for (const Transfer& t : entries) out[t.op] += t.count;
    return out;
}

void TransferLog::append(const TransferLog& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

std::string TransferLog::lines() const {
    std::ostringstream os;
    for (const Transfer& t : entries) os << t.op << "," << t.from + 1 << "," << t.to + 1 << "," << t.count << "\n";
    return os.str();
}

Cluster::Cluster(CodePtr code, std::vector<Vec> data) : code_(std::move(code)), truth_(std::move(data)) {
    columns_ = code_->encode(truth_);
}

Cluster Cluster::seeded(CodePtr code, std::uint64_t seed) {
    Rng rng(seed);
    const CodeParams& P = code->params();
    std::vector<Vec> data(P.n);
    for (std::size_t i = 0; i < P.n; ++i) data[i] = rng.vec(*code->field(), P.m[i]);
    return Cluster(std::move(code), std::move(data));
}

TransferLog update_codeword(const ClusterCode& code, Codeword& cw, std::size_t i, const Vec& new_x) {
    const CodeParams& P = code.params();
    const GaloisField& F = *code.field();
    check_node(P.n, i);
    if (cw.columns.size() != P.n) fail(ErrorCode::ShapeMismatch, "codeword width");
    for (std::size_t j = 0; j < P.n; ++j)
        if (cw.columns[j].size() != P.alpha(j)) fail(ErrorCode::ShapeMismatch, "column " + std::to_string(j + 1) + " length");
    if (new_x.size() != P.m[i]) fail(ErrorCode::ShapeMismatch, "update length for node " + std::to_string(i + 1));
    const Vec delta = vec_sub(F, new_x, data_part(P, cw, i));
    TransferLog log;
    for (std::size_t j = 0; j < P.n; ++j) {
        if (j == i || code.message_size(i, j) == 0) continue;
        const Vec payload = code.send(i, delta, j);
        log.entries.push_back({"update", i, j, payload.size()});
        const Vec dp = code.recv(i, j, payload);
        Column& col = cw.columns[j];
        for (std::size_t r = 0; r < P.p[j]; ++r) col[P.m[j] + r] = F.add(col[P.m[j] + r], dp[r]);
    }
    const Vec own = code.local(i, delta);
    Column& col = cw.columns[i];
    for (std::size_t r = 0; r < P.m[i]; ++r) col[r] = new_x[r];
    for (std::size_t r = 0; r < P.p[i]; ++r) col[P.m[i] + r] = F.add(col[P.m[i] + r], own[r]);
    return log;
}

TransferLog repair_codeword(const ClusterCode& code, Codeword& cw, std::size_t i) {
    const CodeParams& P = code.params();
    check_node(P.n, i);
    if (cw.columns.size() != P.n) fail(ErrorCode::ShapeMismatch, "codeword width");
    cw.columns[i].assign(P.alpha(i), 0); // lost
    for (std::size_t j = 0; j < P.n; ++j)
        if (cw.columns[j].size() != P.alpha(j)) fail(ErrorCode::ShapeMismatch, "column " + std::to_string(j + 1) + " length");
    const RepairPlan plan = code.repair_plan(i);
    const std::vector<Vec> payloads = helper_payloads(plan, cw);
    TransferLog log;
    for (std::size_t t = 0; t < plan.downloads.size(); ++t)
        log.entries.push_back({"repair", plan.downloads[t].helper, i, payloads[t].size()});
    if (plan.by_decode) {
        Codeword partial;
        partial.columns.resize(P.n);
        std::vector<bool> erased(P.n, true);
        for (std::size_t t = 0; t < plan.downloads.size(); ++t) {
            const std::size_t h = plan.downloads[t].helper;
            partial.columns[h] = payloads[t];
            erased[h] = false;
        }
        for (std::size_t j = 0; j < P.n; ++j)
            if (erased[j]) partial.columns[j].assign(P.alpha(j), 0);
        cw.columns[i] = code.decode(partial, erased).columns[i];
    } else {
        cw.columns[i] = rebuild(plan, payloads);
    }
    return log;
}

TransferLog Cluster::apply_update(std::size_t i, const Vec& new_x) {
    TransferLog log = update_codeword(*code_, columns_, i, new_x);
    truth_[i] = new_x;
    return log;
}

TransferLog Cluster::fail_and_repair(std::size_t i) { return repair_codeword(*code_, columns_, i); }

AuditReport Cluster::audit() const {
    AuditReport rep;
    const Codeword fresh = code_->encode(truth_);
    for (std::size_t j = 0; j < fresh.columns.size(); ++j) {
        const Column& a = fresh.columns[j];
        const Column& b = columns_.columns[j];
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r >= b.size() || a[r] != b[r]) {
                rep.ok = false;
                rep.node = j;
                rep.row = r;
                rep.detail = "node " + std::to_string(j + 1) + " row " + std::to_string(r + 1) + " differs from re-encode";
                return rep;
            }
        }
    }
    return rep;
}

void Cluster::corrupt(std::size_t node, std::size_t row) {
    check_node(code_->params().n, node);
    Column& col = columns_.columns[node];
    if (row >= col.size()) fail(ErrorCode::ShapeMismatch, "row out of range");
    col[row] = code_->field()->add(col[row], 1);
}

SimulationReport simulate(CodePtr code, std::size_t updates, std::size_t repairs, std::uint64_t seed) {
    const CodeParams P = code->params();
    const GaloisField& F = *code->field();
    Rng rng(seed);
    SimulationReport rep;
    rep.updates = updates;
    rep.repairs = repairs;
    rep.seed = seed;
    rep.gamma_theory = gamma_of(code->linear()).gamma;
    rep.theta = update_complexity(code->linear());
    rep.repair_count.assign(P.n, 0);
    rep.repair_measured.assign(P.n, 0);
    for (std::size_t i = 0; i < P.n; ++i) rep.beta.push_back(code->repair_plan(i).symbols());
    rep.repairs_restored = true;

    std::vector<Vec> data(P.n);
    for (std::size_t i = 0; i < P.n; ++i) data[i] = rng.vec(F, P.m[i]);
    Cluster c(code, data);

    // Repair t happens after update floor((t+1) * updates / (repairs+1)).
    std::vector<std::size_t> when;
    for (std::size_t t = 0; t < repairs; ++t) when.push_back((t + 1) * updates / (repairs + 1));
    std::size_t next = 0;
    auto do_repairs = [&](std::size_t done) {
        while (next < when.size() && when[next] == done) {
            const std::size_t node = static_cast<std::size_t>(rng.below(P.n));
            const Column before = c.columns().columns[node];
            const TransferLog l = c.fail_and_repair(node);
            rep.repairs_restored = rep.repairs_restored && c.columns().columns[node] == before;
            ++rep.repair_count[node];
            rep.repair_measured[node] += l.total();
            rep.log.append(l);
            ++next;
        }
    };
    do_repairs(0);
    for (std::size_t t = 0; t < updates; ++t) {
        const std::size_t i = t % P.n;
        rep.log.append(c.apply_update(i, rng.vec(F, P.m[i])));
        do_repairs(t + 1);
    }
    rep.gamma_measured = updates ? Rational(static_cast<std::int64_t>(rep.log.total("update")),
                                            static_cast<std::int64_t>(updates))
                                 : Rational(0);
    rep.audit_ok = c.audit().ok;
    return rep;
}

std::string SimulationReport::summary() const {
    std::ostringstream os;
    os << "updates " << updates << ", repairs " << repairs << ", seed " << seed << "\n";
    os << "gamma measured  " << to_string(gamma_measured) << "\n";
    os << "gamma theory    " << to_string(gamma_theory) << "\n";
    os << "theta           " << to_string(theta) << "\n";
    os << "node  beta  repairs  downloaded\n";
    for (std::size_t i = 0; i < beta.size(); ++i) {
        std::string a = std::to_string(i + 1), b = std::to_string(beta[i]), r = std::to_string(repair_count[i]);
        a.resize(6, ' ');
        b.resize(6, ' ');
        r.resize(9, ' ');
        os << a << b << r << repair_measured[i] << "\n";
    }
    os << "repairs restored " << (repairs_restored ? "yes" : "NO") << "\n";
    os << "audit           " << (audit_ok ? "pass" : "FAIL") << "\n";
    return os.str();
}

} // namespace ubcode
