#include "ubcode/repair.hpp"

#include <string>

namespace ubcode {

std::size_t RepairPlan::symbols() const {
    std::size_t s = 0;
    for (const Download& d : downloads) s += d.F.rows();
    return s;
}

Matrix node_generator(const IrregularArrayCode& code, std::size_t h) {
    const CodeParams& P = code.params;
    Matrix g(code.field, P.alpha(h), P.B());
    std::size_t off = 0;
    for (std::size_t i = 0; i < P.n; ++i) {
        if (i == h)
            for (std::size_t t = 0; t < P.m[i]; ++t) g(t, off + t) = 1;
        const Matrix& M = code.M[i][h];
        for (std::size_t r = 0; r < M.rows(); ++r)
            for (std::size_t c = 0; c < M.cols(); ++c) g(P.m[h] + r, off + c) = M(r, c);
        off += P.m[i];
    }
    return g;
}

RepairPlan naive_plan(const IrregularArrayCode& code, std::size_t i) {
    const CodeParams& P = code.params;
    if (i >= P.n) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(i + 1));
    RepairPlan plan;
    plan.node = i;
    plan.by_decode = true;
    for (std::size_t s = 1; s <= P.k; ++s) {
        const std::size_t h = (i + s) % P.n;
        plan.downloads.push_back({h, Matrix::identity(code.field, P.alpha(h))});
    }
    return plan;
}

void merge_downloads(RepairPlan& plan) {
    std::vector<Download> out;
    for (Download& d : plan.downloads) {
        if (d.F.rows() == 0) continue;
        bool merged = false;
        for (Download& o : out)
            if (o.helper == d.helper) {
                o.F = vstack(o.F.field(), o.F.cols(), {o.F, d.F});
                merged = true;
                break;
            }
        if (!merged) out.push_back(std::move(d));
    }
    plan.downloads = std::move(out);
}

void prepare(const IrregularArrayCode& code, RepairPlan& plan) {
    const CodeParams& P = code.params;
    if (plan.node >= P.n) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(plan.node + 1));
    std::vector<Matrix> parts;
    for (const Download& d : plan.downloads) {
        if (d.helper >= P.n || d.helper == plan.node)
            fail(ErrorCode::InvalidParams, "repair helper " + std::to_string(d.helper + 1) + " is not a survivor");
        if (d.F.cols() != P.alpha(d.helper)) fail(ErrorCode::ShapeMismatch, "download matrix width");
        parts.push_back(d.F * node_generator(code, d.helper));
    }
    const Matrix R = vstack(code.field, P.B(), parts);
    const Matrix target = node_generator(code, plan.node);
    try {
        plan.rebuild = solve_particular(R.transpose(), target.transpose()).transpose();
    } catch (const Error&) {
        fail(ErrorCode::InternalRankFailure,
             "downloads do not determine node " + std::to_string(plan.node + 1));
    }
}

std::vector<Vec> helper_payloads(const RepairPlan& plan, const Codeword& c) {
    std::vector<Vec> out;
    for (const Download& d : plan.downloads) out.push_back(d.F * c.columns.at(d.helper));
    return out;
}

Column rebuild(const RepairPlan& plan, const std::vector<Vec>& payloads) {
    Vec all;
    for (const Vec& v : payloads) all.insert(all.end(), v.begin(), v.end());
    return plan.rebuild * all;
}

} // namespace ubcode
