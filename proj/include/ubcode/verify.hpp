#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ubcode/cluster.hpp"

namespace ubcode {

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct VerifyReport {
    MdsReport mds;
    std::vector<Check> checks;

    bool ok() const;
    std::string text() const;
};

// Column-weight counts on a vertical code: the fewest parities touched by a
// data symbol, the fewest weight>=2 columns feeding one node, and their sum.
struct WeightCounts {
    std::size_t min_touched = 0;
    std::size_t min_heavy = 0;
    std::size_t total_heavy = 0;
};
WeightCounts weight_counts(const IrregularArrayCode& code);

// MR-MUB test: R = R_min and gamma = gamma_min.
bool is_mrmub(const IrregularArrayCode& code);

// verify_mds plus the invariant suites: pipeline = direct encoding, factor
// ranks, necessary conditions, bounds, update protocol and re-encode,
// single-node repair, and construction-specific checks.
VerifyReport verify_suite(const ClusterCode& code, std::uint64_t seed, std::size_t fills = 20);

} // namespace ubcode
