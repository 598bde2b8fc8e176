#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ubcode/code_model.hpp"
#include "ubcode/repair.hpp"

namespace ubcode {

using NodePair = std::pair<std::size_t, std::size_t>; // 0-based (a, b)

// Pairing transformation applied round by round to a vertical (n, n-2)
// base code. At round r the chosen pair (a, b) plays the roles of the last
// two nodes. Every level-r column is a slot combination of two level-(r-1)
// instance columns c0, c1:
//   node a: (c0_a ; c0_b + g c1_b)
//   node b: (c0_b + c1_b ; c1_a)
//   other:  (c0_j ; c1_j)
// A column is stored as [y ; q] (all data first), so the two halves of the
// data and of the parity are contiguous each.
class TransformedCode {
public:
    // Throws FieldTooSmall (q = 2), InvalidParams, InvalidPair.
    static TransformedCode from_pairs(const IrregularArrayCode& base, std::vector<NodePair> pairs,
                                      std::optional<Felt> g = {});
    static TransformedCode pair_transform(const IrregularArrayCode& base, NodePair pair,
                                          std::optional<Felt> g = {});
    // Round t (1-based) pairs nodes (n-2t+1, n-2t+2) 1-based; when that
    // would reach node 0 the pair is (1, 2).
    static TransformedCode iterate_transform(const IrregularArrayCode& base, std::size_t rounds,
                                             std::optional<Felt> g = {});
    static std::vector<NodePair> rotation(std::size_t n, std::size_t rounds);

    const IrregularArrayCode& base() const { return base_; }
    const std::vector<NodePair>& pairs() const { return pairs_; }
    std::size_t rounds() const { return pairs_.size(); }
    std::size_t n() const { return base_.n(); }
    std::size_t k() const { return base_.k(); }
    Felt g() const { return g_; }
    std::size_t alpha() const { return flat_.params.alpha(0); }
    // Level-r parameters (r = 0 is the base).
    CodeParams params(std::size_t level) const;
    const CodeParams& params() const { return flat_.params; }
    // Flattened construction matrices of the top level.
    const IrregularArrayCode& flat() const { return flat_; }

    // Registers a level-0 repair plan for base node i (unprepared is fine).
    void set_base_plan(std::size_t i, RepairPlan plan);

    std::vector<Vec> encode_parity(const std::vector<Vec>& y) const;
    Codeword encode(const std::vector<Vec>& y) const;

    // Level-r data (y) -> the two level-(r-1) instances, and back.
    std::array<std::vector<Vec>, 2> to_instances(std::size_t level, const std::vector<Vec>& y) const;
    std::vector<Vec> from_instances(std::size_t level, const std::array<std::vector<Vec>, 2>& x) const;

    // Update protocol at the top level. send/recv follow the round structure;
    // local is the sender's own parity change.
    Vec send(std::size_t u, const Vec& delta, std::size_t j) const;
    Vec recv(std::size_t u, std::size_t j, const Vec& payload) const;
    Vec local(std::size_t u, const Vec& delta) const;
    std::size_t message_size(std::size_t u, std::size_t j) const;

    // gamma'_{u,j} as carried by the structural protocol.
    std::vector<Sizes> gamma_structural() const;
    // The closed-form recursion: 2g_{ij} for unpaired i, j; g_{i,a}+g_{i,b}
    // toward a paired receiver; g_{a,j}+g_{b,j} from a paired sender;
    // g_{a,b}+g_{b,a} within the pair.
    std::vector<Sizes> gamma_formula() const;

    // Prepared single-node repair plan at the top level.
    RepairPlan repair_plan(std::size_t i) const;

private:
    TransformedCode() = default;
    void build_flat();

    std::vector<Vec> encode_level(std::size_t level, const std::vector<Vec>& y) const;
    Vec send_level(std::size_t level, std::size_t u, const Vec& delta, std::size_t j) const;
    Vec recv_level(std::size_t level, std::size_t u, std::size_t j, const Vec& payload) const;
    std::size_t size_level(std::size_t level, std::size_t u, std::size_t j) const;
    std::vector<Download> plan_level(std::size_t level, std::size_t i) const;

    IrregularArrayCode base_;
    std::vector<NodePair> pairs_;
    Felt g_ = 0;
    Felt s_ = 0; // (g-1)^{-1}
    std::vector<std::optional<RepairPlan>> base_plans_;
    IrregularArrayCode flat_;

    struct Slot {
        std::size_t beta;
        std::array<Felt, 2> c;
    };
    struct Item {
        std::size_t src, beta;
        std::vector<std::array<Felt, 2>> basis;
        // For each receiver slot s fed by (src, beta): lambda over basis.
        std::vector<std::pair<std::size_t, std::vector<Felt>>> uses;
    };
    std::array<Slot, 2> slots(std::size_t level, std::size_t j) const;
    // d[l][h]: coefficient of sender half h in instance-l data of src.
    std::vector<std::pair<std::size_t, std::array<std::array<Felt, 2>, 2>>> sources(std::size_t level,
                                                                                 std::size_t u) const;
    std::vector<Item> edge(std::size_t level, std::size_t u, std::size_t j) const;
};

} // namespace ubcode
