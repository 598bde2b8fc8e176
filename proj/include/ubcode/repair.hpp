#pragma once

#include <cstddef>
#include <vector>

#include "ubcode/code_model.hpp"

namespace ubcode {

// One helper's contribution: the helper sends F * column.
struct Download {
    std::size_t helper = 0;
    Matrix F;
};

// Single-node repair by linear downloads. `rebuild` (alpha_node x total
// downloaded) maps the concatenated downloads back to the lost column.
struct RepairPlan {
    std::size_t node = 0;
    std::vector<Download> downloads;
    Matrix rebuild;
    bool by_decode = false; // full columns of k helpers, rebuilt by decoding

    std::size_t symbols() const;
};

// alpha_h x B map from all data (node-major) to column h.
Matrix node_generator(const IrregularArrayCode& code, std::size_t h);

// Full columns of the k cyclic successors of node i.
RepairPlan naive_plan(const IrregularArrayCode& code, std::size_t i);

// Merges repeated helpers (first appearance order, rows stacked).
void merge_downloads(RepairPlan& plan);

// Solves for plan.rebuild. Throws InternalRankFailure when the downloads do
// not determine the lost column.
void prepare(const IrregularArrayCode& code, RepairPlan& plan);

// What each helper sends, given the current columns.
std::vector<Vec> helper_payloads(const RepairPlan& plan, const Codeword& c);

Column rebuild(const RepairPlan& plan, const std::vector<Vec>& payloads);

} // namespace ubcode
