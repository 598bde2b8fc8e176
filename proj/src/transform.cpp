#include "ubcode/transform.hpp"

#include <algorithm>
#include <string>

namespace ubcode {

namespace {

Vec half(const Vec& v, std::size_t h) {
    const std::size_t len = v.size() / 2;
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(h * len),
               v.begin() + static_cast<std::ptrdiff_t>((h + 1) * len));
}

Vec concat(Vec a, const Vec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool in_pair(const NodePair& p, std::size_t i) { return i == p.first || i == p.second; }

} // namespace

TransformedCode TransformedCode::from_pairs(const IrregularArrayCode& base, std::vector<NodePair> pairs,
                                            std::optional<Felt> g) {
    base.validate();
    const CodeParams& P = base.params;
    if (P.n < 3 || P.k + 2 != P.n) fail(ErrorCode::InvalidParams, "transformation needs an (n, n-2) base code");
    for (std::size_t i = 1; i < P.n; ++i)
        if (P.m[i] != P.m[0] || P.p[i] != P.p[0])
            fail(ErrorCode::InvalidParams, "transformation needs a vertical base code");
    const GaloisField& F = *base.field;
    if (F.q() == 2) fail(ErrorCode::FieldTooSmall, "transformation needs q > 2");
    for (const NodePair& pr : pairs) {
        if (pr.first >= P.n || pr.second >= P.n)
            fail(ErrorCode::InvalidPair, "pair node out of range");
        if (pr.first == pr.second) fail(ErrorCode::InvalidPair, "pair needs two distinct nodes");
    }
    TransformedCode t;
    t.base_ = base;
    t.pairs_ = std::move(pairs);
    t.g_ = g ? *g : F.primitive();
    if (t.g_ >= F.q()) fail(ErrorCode::InvalidParams, "g is not a field element");
    if (t.g_ == 0 || t.g_ == 1) fail(ErrorCode::InvalidParams, "g must differ from 0 and 1");
    t.s_ = F.inv(F.sub(t.g_, 1));
    t.base_plans_.assign(P.n, std::nullopt);
    t.build_flat();
    return t;
}

TransformedCode TransformedCode::pair_transform(const IrregularArrayCode& base, NodePair pair, std::optional<Felt> g) {
    return from_pairs(base, {pair}, g);
}

std::vector<NodePair> TransformedCode::rotation(std::size_t n, std::size_t rounds) {
    if (rounds > (n + 1) / 2)
        fail(ErrorCode::InvalidParams, "at most ceil(n/2) = " + std::to_string((n + 1) / 2) + " rounds");
    std::vector<NodePair> out;
    for (std::size_t t = 1; t <= rounds; ++t) {
        if (2 * t > n)
            out.emplace_back(0, 1);
        else
            out.emplace_back(n - 2 * t, n - 2 * t + 1);
    }
    return out;
}

TransformedCode TransformedCode::iterate_transform(const IrregularArrayCode& base, std::size_t rounds,
                                                   std::optional<Felt> g) {
    return from_pairs(base, rotation(base.n(), rounds), g);
}

CodeParams TransformedCode::params(std::size_t level) const {
    CodeParams P = base_.params;
    for (auto& v : P.m) v <<= level;
    for (auto& v : P.p) v <<= level;
    return P;
}

void TransformedCode::set_base_plan(std::size_t i, RepairPlan plan) {
    if (i >= n()) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(i + 1));
    plan.node = i;
    base_plans_[i] = std::move(plan);
}

std::array<TransformedCode::Slot, 2> TransformedCode::slots(std::size_t level, std::size_t j) const {
    const NodePair& pr = pairs_[level - 1];
    const std::size_t a = pr.first, b = pr.second;
    if (j == a) return {Slot{a, {1, 0}}, Slot{b, {1, g_}}};
    if (j == b) return {Slot{b, {1, 1}}, Slot{a, {0, 1}}};
    return {Slot{j, {1, 0}}, Slot{j, {0, 1}}};
}

std::vector<std::pair<std::size_t, std::array<std::array<Felt, 2>, 2>>>
TransformedCode::sources(std::size_t level, std::size_t u) const {
    const GaloisField& F = *base_.field;
    const NodePair& pr = pairs_[level - 1];
    const std::size_t a = pr.first, b = pr.second;
    using D = std::array<std::array<Felt, 2>, 2>;
    if (u == a)
        return {{a, D{{{1, 0}, {0, 0}}}}, {b, D{{{0, F.neg(s_)}, {0, s_}}}}};
    if (u == b)
        return {{a, D{{{0, 0}, {0, 1}}}}, {b, D{{{F.mul(g_, s_), 0}, {F.neg(s_), 0}}}}};
    return {{u, D{{{1, 0}, {0, 1}}}}};
}

std::vector<TransformedCode::Item> TransformedCode::edge(std::size_t level, std::size_t u, std::size_t j) const {
    const GaloisField& F = *base_.field;
    const Field& f = base_.field;
    const auto sl = slots(level, j);
    std::vector<Item> items;
    for (const auto& [src, d] : sources(level, u)) {
        std::vector<std::size_t> betas;
        for (const Slot& s : sl)
            if (std::find(betas.begin(), betas.end(), s.beta) == betas.end()) betas.push_back(s.beta);
        for (std::size_t beta : betas) {
            std::vector<std::pair<std::size_t, std::array<Felt, 2>>> need;
            for (std::size_t s = 0; s < 2; ++s) {
                if (sl[s].beta != beta) continue;
                std::array<Felt, 2> kappa{0, 0};
                for (std::size_t h = 0; h < 2; ++h)
                    for (std::size_t l = 0; l < 2; ++l) kappa[h] = F.add(kappa[h], F.mul(sl[s].c[l], d[l][h]));
                if (kappa[0] == 0 && kappa[1] == 0) continue;
                need.emplace_back(s, kappa);
            }
            if (need.empty()) continue;
            if (src == beta)
                fail(ErrorCode::InternalRankFailure, "self contribution does not cancel at level " + std::to_string(level));
            Matrix K(f, need.size(), 2);
            for (std::size_t r = 0; r < need.size(); ++r)
                for (std::size_t h = 0; h < 2; ++h) K(r, h) = need[r].second[h];
            const Rref rr = rref(K);
            Item it{src, beta, {}, {}};
            for (std::size_t r = 0; r < rr.pivots.size(); ++r)
                it.basis.push_back({rr.reduced(r, 0), rr.reduced(r, 1)});
            Matrix BT(f, 2, it.basis.size());
            for (std::size_t t = 0; t < it.basis.size(); ++t)
                for (std::size_t h = 0; h < 2; ++h) BT(h, t) = it.basis[t][h];
            for (const auto& [s, kappa] : need) {
                const Matrix lam = solve(BT, Matrix::column(f, Vec{kappa[0], kappa[1]}));
                it.uses.emplace_back(s, lam.col(0));
            }
            items.push_back(std::move(it));
        }
    }
    return items;
}

std::array<std::vector<Vec>, 2> TransformedCode::to_instances(std::size_t level, const std::vector<Vec>& y) const {
    const GaloisField& F = *base_.field;
    const NodePair& pr = pairs_.at(level - 1);
    const std::size_t a = pr.first, b = pr.second;
    std::array<std::vector<Vec>, 2> x{std::vector<Vec>(n()), std::vector<Vec>(n())};
    for (std::size_t i = 0; i < n(); ++i) {
        if (in_pair(pr, i)) continue;
        x[0][i] = half(y[i], 0);
        x[1][i] = half(y[i], 1);
    }
    const Vec ya0 = half(y[a], 0), ya1 = half(y[a], 1), yb0 = half(y[b], 0), yb1 = half(y[b], 1);
    x[0][a] = ya0;
    x[1][a] = yb1;
    x[1][b] = vec_scale(F, vec_sub(F, ya1, yb0), s_);
    x[0][b] = vec_sub(F, yb0, x[1][b]);
    return x;
}

std::vector<Vec> TransformedCode::from_instances(std::size_t level, const std::array<std::vector<Vec>, 2>& x) const {
    const GaloisField& F = *base_.field;
    std::vector<Vec> y(n());
    for (std::size_t j = 0; j < n(); ++j) {
        Vec out;
        for (const Slot& s : slots(level, j)) {
            Vec part = vec_scale(F, x[0][s.beta], s.c[0]);
            vec_axpy(F, part, s.c[1], x[1][s.beta]);
            out = concat(std::move(out), part);
        }
        y[j] = std::move(out);
    }
    return y;
}

std::vector<Vec> TransformedCode::encode_level(std::size_t level, const std::vector<Vec>& y) const {
    if (level == 0) return encode_pipeline(base_, y);
    const auto x = to_instances(level, y);
    const std::array<std::vector<Vec>, 2> par{encode_level(level - 1, x[0]), encode_level(level - 1, x[1])};
    return from_instances(level, par);
}

std::vector<Vec> TransformedCode::encode_parity(const std::vector<Vec>& y) const {
    const CodeParams& P = flat_.params;
    if (y.size() != P.n) fail(ErrorCode::ShapeMismatch, "need one data vector per node");
    for (std::size_t i = 0; i < P.n; ++i)
        if (y[i].size() != P.m[i]) fail(ErrorCode::ShapeMismatch, "data length for node " + std::to_string(i + 1));
    return encode_level(rounds(), y);
}

Codeword TransformedCode::encode(const std::vector<Vec>& y) const {
    return assemble(flat_.params, y, encode_parity(y));
}

void TransformedCode::build_flat() {
    const CodeParams P = params(rounds());
    const std::size_t nn = P.n;
    Grid M(nn, std::vector<Matrix>(nn));
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) M[i][j] = Matrix(base_.field, P.p[j], P.m[i]);
    std::vector<Vec> y(nn);
    for (std::size_t i = 0; i < nn; ++i) y[i] = Vec(P.m[i], 0);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t t = 0; t < P.m[i]; ++t) {
            y[i][t] = 1;
            const std::vector<Vec> par = encode_level(rounds(), y);
            for (std::size_t j = 0; j < nn; ++j)
                for (std::size_t r = 0; r < P.p[j]; ++r) M[i][j](r, t) = par[j][r];
            y[i][t] = 0;
        }
    }
    flat_ = IrregularArrayCode::from_construction(base_.field, P, std::move(M));
}

std::size_t TransformedCode::size_level(std::size_t level, std::size_t u, std::size_t j) const {
    if (level == 0) return base_.A[u][j].rows();
    std::size_t total = 0;
    for (const Item& it : edge(level, u, j)) total += it.basis.size() * size_level(level - 1, it.src, it.beta);
    return total;
}

Vec TransformedCode::send_level(std::size_t level, std::size_t u, const Vec& delta, std::size_t j) const {
    if (level == 0) return base_.A[u][j] * delta;
    const GaloisField& F = *base_.field;
    const Vec d0 = half(delta, 0), d1 = half(delta, 1);
    Vec payload;
    for (const Item& it : edge(level, u, j)) {
        for (const auto& kappa : it.basis) {
            Vec comb = vec_scale(F, d0, kappa[0]);
            vec_axpy(F, comb, kappa[1], d1);
            payload = concat(std::move(payload), send_level(level - 1, it.src, comb, it.beta));
        }
    }
    return payload;
}

Vec TransformedCode::recv_level(std::size_t level, std::size_t u, std::size_t j, const Vec& payload) const {
    if (level == 0) return base_.Bm[u][j] * payload;
    const GaloisField& F = *base_.field;
    const std::size_t plen = params(level - 1).p[j];
    std::array<Vec, 2> acc{Vec(plen, 0), Vec(plen, 0)};
    std::size_t off = 0;
    for (const Item& it : edge(level, u, j)) {
        const std::size_t sz = size_level(level - 1, it.src, it.beta);
        std::vector<Vec> pieces;
        for (std::size_t t = 0; t < it.basis.size(); ++t) {
            if (off + sz > payload.size()) fail(ErrorCode::ShapeMismatch, "update payload too short");
            pieces.emplace_back(payload.begin() + static_cast<std::ptrdiff_t>(off),
                                payload.begin() + static_cast<std::ptrdiff_t>(off + sz));
            off += sz;
        }
        for (const auto& [s, lam] : it.uses) {
            Vec comb(sz, 0);
            for (std::size_t t = 0; t < pieces.size(); ++t) vec_axpy(F, comb, lam[t], pieces[t]);
            acc[s] = vec_add(F, acc[s], recv_level(level - 1, it.src, it.beta, comb));
        }
    }
    if (off != payload.size()) fail(ErrorCode::ShapeMismatch, "update payload length");
    return concat(acc[0], acc[1]);
}

Vec TransformedCode::send(std::size_t u, const Vec& delta, std::size_t j) const {
    if (u >= n() || j >= n()) fail(ErrorCode::NodeOutOfRange, "node out of range");
    if (u == j) fail(ErrorCode::InvalidParams, "send needs two distinct nodes");
    if (delta.size() != flat_.params.m[u]) fail(ErrorCode::ShapeMismatch, "update length");
    return send_level(rounds(), u, delta, j);
}

Vec TransformedCode::recv(std::size_t u, std::size_t j, const Vec& payload) const {
    if (u >= n() || j >= n()) fail(ErrorCode::NodeOutOfRange, "node out of range");
    if (u == j) fail(ErrorCode::InvalidParams, "recv needs two distinct nodes");
    return recv_level(rounds(), u, j, payload);
}

Vec TransformedCode::local(std::size_t u, const Vec& delta) const {
    if (u >= n()) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(u + 1));
    return flat_.M[u][u] * delta;
}

std::size_t TransformedCode::message_size(std::size_t u, std::size_t j) const {
    if (u >= n() || j >= n()) fail(ErrorCode::NodeOutOfRange, "node out of range");
    return u == j ? 0 : size_level(rounds(), u, j);
}

std::vector<Sizes> TransformedCode::gamma_structural() const {
    std::vector<Sizes> g(n(), Sizes(n(), 0));
    for (std::size_t u = 0; u < n(); ++u)
        for (std::size_t j = 0; j < n(); ++j)
            if (u != j) g[u][j] = size_level(rounds(), u, j);
    return g;
}

std::vector<Sizes> TransformedCode::gamma_formula() const {
    std::vector<Sizes> g = gamma_of(base_).matrix;
    const std::size_t nn = n();
    for (const NodePair& pr : pairs_) {
        const std::size_t a = pr.first, b = pr.second;
        std::vector<Sizes> h(nn, Sizes(nn, 0));
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j) {
                if (i == j) continue;
                const bool pi = in_pair(pr, i), pj = in_pair(pr, j);
                if (pi && pj)
                    h[i][j] = g[a][b] + g[b][a];
                else if (pj)
                    h[i][j] = g[i][a] + g[i][b];
                else if (pi)
                    h[i][j] = g[a][j] + g[b][j];
                else
                    h[i][j] = 2 * g[i][j];
            }
        g = std::move(h);
    }
    return g;
}

std::vector<Download> TransformedCode::plan_level(std::size_t level, std::size_t i) const {
    if (level == 0) {
        if (base_plans_[i]) return base_plans_[i]->downloads;
        return naive_plan(base_, i).downloads;
    }
    const Field& f = base_.field;
    const NodePair& pr = pairs_[level - 1];
    const std::size_t a = pr.first, b = pr.second;
    const CodeParams lower = params(level - 1);
    const std::size_t d = lower.m[0], p = lower.p[0];
    std::array<Matrix, 2> H;
    for (std::size_t l = 0; l < 2; ++l) {
        H[l] = Matrix(f, d + p, 2 * (d + p));
        for (std::size_t t = 0; t < d; ++t) H[l](t, l * d + t) = 1;
        for (std::size_t t = 0; t < p; ++t) H[l](d + t, 2 * d + l * p + t) = 1;
    }
    std::vector<Download> out;
    if (i == a || i == b) {
        const std::size_t l = i == b ? 1 : 0;
        const std::size_t partner = i == b ? a : b;
        for (std::size_t s = 1; s < n(); ++s) {
            const std::size_t h = (i + s) % n();
            if (h == partner) continue;
            out.push_back({h, H[l]});
        }
        out.push_back({partner, H[l]});
        return out;
    }
    for (const Download& sub : plan_level(level - 1, i)) {
        const std::size_t h = sub.helper;
        const Matrix F0 = sub.F * H[0], F1 = sub.F * H[1];
        if (h == a) {
            out.push_back({a, F0});
            out.push_back({b, F1});
        } else if (h == b) {
            out.push_back({b, F0});
            out.push_back({a, F1});
        } else {
            out.push_back({h, F0});
            out.push_back({h, F1});
        }
    }
    return out;
}

RepairPlan TransformedCode::repair_plan(std::size_t i) const {
    if (i >= n()) fail(ErrorCode::NodeOutOfRange, "node " + std::to_string(i + 1));
    RepairPlan plan;
    plan.node = i;
    plan.downloads = plan_level(rounds(), i);
    merge_downloads(plan);
    prepare(flat_, plan);
    return plan;
}

} // namespace ubcode
