#include <doctest.h>

#include "ubcode/cluster.hpp"
#include "ubcode/error.hpp"
#include "ubcode/rng.hpp"
#include "ubcode/transform.hpp"

using namespace ubcode;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Ok;
}

BuildOptions over(std::uint32_t q) {
    BuildOptions o;
    o.field = field_new(q);
    return o;
}

std::vector<Vec> fill_data(const CodeParams& P, const GaloisField& F, Rng& rng) {
    std::vector<Vec> d(P.n);
    for (std::size_t i = 0; i < P.n; ++i) d[i] = rng.vec(F, P.m[i]);
    return d;
}

} // namespace

TEST_CASE("single pairing round") {
    const BuiltCode base = build_mrmub(4, 2, 2, over(4));
    const TransformedCode t = TransformedCode::pair_transform(base.code, {2, 3});
    CHECK(t.alpha() == 8);
    CHECK(t.params().m == Sizes(4, 4));
    CHECK(t.params().p == Sizes(4, 4));
    CHECK(t.repair_plan(2).symbols() == 12);
    CHECK(t.repair_plan(3).symbols() == 12);
    CHECK(t.repair_plan(0).symbols() == 2 * 8);
    CHECK(verify_mds(t.flat()).ok());

    const BoundsReport b = bounds(4, 2, Sizes(4, 4));
    const GammaReport g = gamma_of(t.flat());
    CHECK(g.gamma == b.gamma_min);
    CHECK(g.gamma == Rational(6));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) {
                CHECK(g.matrix[i][j] == 2);
                CHECK(t.message_size(i, j) == 2);
            }
    CHECK(t.gamma_structural() == t.gamma_formula());
    CHECK(redundancy(t.flat()) == b.r_min);
}

TEST_CASE("transform errors") {
    CHECK(code_of([] { build_mrmub(4, 2, 2, over(2)); }) == ErrorCode::FieldTooSmall);
    const BuiltCode b2 = build_mrmub(3, 1, 1, over(2));
    CHECK(code_of([&] { TransformedCode::pair_transform(b2.code, {1, 2}); }) == ErrorCode::FieldTooSmall);
    const BuiltCode b = build_mrmub(4, 2, 2, over(4));
    CHECK(code_of([&] { TransformedCode::pair_transform(b.code, {2, 3}, Felt{1}); }) == ErrorCode::InvalidParams);
    CHECK(code_of([&] { TransformedCode::pair_transform(b.code, {2, 2}); }) == ErrorCode::InvalidPair);
    CHECK(code_of([&] { TransformedCode::pair_transform(b.code, {2, 4}); }) == ErrorCode::InvalidPair);
    CHECK(code_of([] { TransformedCode::pair_transform(build_mrmub(5, 2, 2).code, {3, 4}); }) ==
          ErrorCode::InvalidParams);
    CHECK(code_of([&] { TransformedCode::iterate_transform(b.code, 3); }) == ErrorCode::InvalidParams);
}

TEST_CASE("instance correspondence round-trips") {
    const BuiltCode base = build_mrmub(5, 3, 3, over(8));
    const TransformedCode t = TransformedCode::iterate_transform(base.code, 2);
    Rng rng(21);
    for (int r = 0; r < 1000; ++r) {
        const std::size_t level = 1 + rng.below(2);
        const CodeParams P = t.params(level);
        const auto y = fill_data(P, *base.code.field, rng);
        const auto x = t.to_instances(level, y);
        REQUIRE(t.from_instances(level, x) == y);
    }
}

TEST_CASE("zero second instance leaves the lower halves of unpaired columns zero") {
    const BuiltCode base = build_mrmub(4, 2, 2, over(4));
    const TransformedCode t = TransformedCode::pair_transform(base.code, {2, 3});
    Rng rng(5);
    std::array<std::vector<Vec>, 2> x;
    x[0] = fill_data(base.code.params, *base.code.field, rng);
    x[1] = std::vector<Vec>(4, Vec(2, 0));
    const Codeword cw = t.encode(t.from_instances(1, x));
    for (std::size_t j = 0; j < 2; ++j) {
        // [y ; q] layout: the second halves of data and parity.
        for (std::size_t r = 2; r < 4; ++r) CHECK(cw.columns[j][r] == 0);
        for (std::size_t r = 6; r < 8; ++r) CHECK(cw.columns[j][r] == 0);
    }
}

TEST_CASE("iterated transformation") {
    const BuiltCode base = build_mrmub(4, 2, 2, over(4));
    const TransformedCode t0 = TransformedCode::iterate_transform(base.code, 0);
    CHECK(t0.flat().M == base.code.M);
    const TransformedCode t = TransformedCode::iterate_transform(base.code, 2);
    CHECK(t.alpha() == 16);
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.repair_plan(i).symbols() == 24);
    CHECK(gamma_of(t.flat()).gamma == bounds(4, 2, Sizes(4, 8)).gamma_min);
    CHECK(verify_mds(t.flat(), {}, 3).ok());

    CHECK(TransformedCode::rotation(4, 2) == std::vector<NodePair>{{2, 3}, {0, 1}});
    CHECK(TransformedCode::rotation(5, 3) == std::vector<NodePair>{{3, 4}, {1, 2}, {0, 1}});
    const BuiltCode b5 = build_mrmub(5, 3, 3, over(8));
    const TransformedCode t5 = TransformedCode::iterate_transform(b5.code, 3);
    const std::size_t opt = 4 * t5.alpha() / 2;
    for (std::size_t i = 0; i < 5; ++i) CHECK(t5.repair_plan(i).symbols() == opt);
}

TEST_CASE("transformed update and repair in a cluster") {
    const BuiltCode base = build_mrmub(4, 2, 2, over(4));
    const CodePtr code = std::make_shared<TransformedClusterCode>(TransformedCode::pair_transform(base.code, {2, 3}));
    Cluster c = Cluster::seeded(code, 31);
    Rng rng(32);
    for (std::size_t i = 0; i < 4; ++i) {
        const TransferLog log = c.apply_update(i, rng.vec(*code->field(), 4));
        CHECK(log.total() == 6);
        for (const Transfer& e : log.entries) CHECK(e.count == 2);
        REQUIRE(c.audit().ok);
    }
    CHECK(c.apply_update(2, c.data()[2]).total() == 6);
    for (std::size_t i = 0; i < 4; ++i) {
        const Column before = c.columns().columns[i];
        const TransferLog log = c.fail_and_repair(i);
        CHECK(log.total() == (i >= 2 ? 12u : 16u));
        CHECK(c.columns().columns[i] == before);
    }
    CHECK(code_of([&] { c.fail_and_repair(7); }) == ErrorCode::NodeOutOfRange);
}

TEST_CASE("arbitrary pairs and larger bases") {
    Rng rng(40);
    for (std::size_t n = 3; n <= 6; ++n) {
        const BuiltCode base = build_mrmub(n, n - 2, n - 2);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const TransformedCode t = TransformedCode::pair_transform(base.code, {a, b});
                REQUIRE(t.gamma_structural() == t.gamma_formula());
                REQUIRE(gamma_of(t.flat()).gamma == bounds(n, n - 2, Sizes(n, 2 * (n - 2))).gamma_min);
                const std::size_t opt = (n - 1) * t.alpha() / 2;
                REQUIRE(t.repair_plan(a).symbols() == opt);
                REQUIRE(t.repair_plan(b).symbols() == opt);
            }
    }
}
