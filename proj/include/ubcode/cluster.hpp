#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ubcode/construct.hpp"
#include "ubcode/repair.hpp"
#include "ubcode/transform.hpp"

namespace ubcode {

// What a cluster needs from a code: encoding, the per-edge update protocol,
// single-node repair and erasure decoding.
class ClusterCode {
public:
    virtual ~ClusterCode() = default;

    virtual std::string kind() const = 0;
    // Flattened linear description (construction matrices and factors).
    virtual const IrregularArrayCode& linear() const = 0;
    const CodeParams& params() const { return linear().params; }
    const Field& field() const { return linear().field; }

    virtual Codeword encode(const std::vector<Vec>& data) const = 0;
    virtual Codeword decode(const Codeword& partial, const std::vector<bool>& erased) const = 0;

    virtual std::size_t message_size(std::size_t u, std::size_t j) const = 0;
    virtual Vec send(std::size_t u, const Vec& delta, std::size_t j) const = 0;
    virtual Vec recv(std::size_t u, std::size_t j, const Vec& payload) const = 0;
    // Change of node u's own parity (zero for zero-diagonal codes).
    virtual Vec local(std::size_t u, const Vec& delta) const = 0;

    virtual RepairPlan repair_plan(std::size_t i) const = 0;

    virtual const BuiltCode* built() const { return nullptr; }
    virtual const TransformedCode* transformed() const { return nullptr; }
};

using CodePtr = std::shared_ptr<const ClusterCode>;

// Linear code: node u sends A_{u,j} delta, node j applies B_{u,j}. Decoding
// uses the structured decoder when the construction is known.
class LinearCode : public ClusterCode {
public:
    explicit LinearCode(IrregularArrayCode code);
    explicit LinearCode(BuiltCode built);

    // Registers a single-node repair schedule; it is prepared here.
    void register_plan(RepairPlan plan);
    std::vector<RepairPlan> registered_plans() const;

    std::string kind() const override;
    const IrregularArrayCode& linear() const override { return code_; }
    Codeword encode(const std::vector<Vec>& data) const override;
    Codeword decode(const Codeword& partial, const std::vector<bool>& erased) const override;
    std::size_t message_size(std::size_t u, std::size_t j) const override;
    Vec send(std::size_t u, const Vec& delta, std::size_t j) const override;
    Vec recv(std::size_t u, std::size_t j, const Vec& payload) const override;
    Vec local(std::size_t u, const Vec& delta) const override;
    RepairPlan repair_plan(std::size_t i) const override;
    const BuiltCode* built() const override { return built_ ? &*built_ : nullptr; }

private:
    IrregularArrayCode code_;
    std::optional<BuiltCode> built_;
    std::vector<std::optional<RepairPlan>> plans_;
};

class TransformedClusterCode : public ClusterCode {
public:
    explicit TransformedClusterCode(TransformedCode code);

    std::string kind() const override { return "transformed"; }
    const IrregularArrayCode& linear() const override { return code_.flat(); }
    Codeword encode(const std::vector<Vec>& data) const override { return code_.encode(data); }
    Codeword decode(const Codeword& partial, const std::vector<bool>& erased) const override;
    std::size_t message_size(std::size_t u, std::size_t j) const override { return code_.message_size(u, j); }
    Vec send(std::size_t u, const Vec& delta, std::size_t j) const override { return code_.send(u, delta, j); }
    Vec recv(std::size_t u, std::size_t j, const Vec& payload) const override { return code_.recv(u, j, payload); }
    Vec local(std::size_t u, const Vec& delta) const override { return code_.local(u, delta); }
    RepairPlan repair_plan(std::size_t i) const override;
    const TransformedCode* transformed() const override { return &code_; }

private:
    TransformedCode code_;
    std::vector<RepairPlan> plans_;
};

struct Transfer {
    std::string op; // "update" or "repair"
    std::size_t from = 0, to = 0, count = 0;
};

struct TransferLog {
    std::vector<Transfer> entries;

    std::size_t total() const;
    std::size_t total(const std::string& op) const;
    std::map<std::string, std::size_t> totals() const;
    void append(const TransferLog& other);
    // One `op,from,to,count` line per entry, nodes 1-based.
    std::string lines() const;
};

// The update protocol on a codeword: node i sends its messages, receivers
// fold them into their parities. Returns the transfers.
TransferLog update_codeword(const ClusterCode& code, Codeword& cw, std::size_t i, const Vec& new_x);
// Drops column i and rebuilds it from the repair plan's downloads.
TransferLog repair_codeword(const ClusterCode& code, Codeword& cw, std::size_t i);

struct AuditReport {
    bool ok = true;
    std::size_t node = 0, row = 0; // first mismatch (0-based)
    std::string detail;
};

class Cluster {
public:
    Cluster(CodePtr code, std::vector<Vec> data);
    static Cluster seeded(CodePtr code, std::uint64_t seed);

    const ClusterCode& code() const { return *code_; }
    const Codeword& columns() const { return columns_; }
    const std::vector<Vec>& data() const { return truth_; }

    TransferLog apply_update(std::size_t i, const Vec& new_x);
    TransferLog fail_and_repair(std::size_t i);
    AuditReport audit() const;
    // Out-of-band change of one stored symbol (adds 1).
    void corrupt(std::size_t node, std::size_t row);

private:
    CodePtr code_;
    std::vector<Vec> truth_;
    Codeword columns_;
};

struct SimulationReport {
    std::size_t updates = 0, repairs = 0;
    std::uint64_t seed = 0;
    Rational gamma_measured, gamma_theory, theta;
    std::vector<std::size_t> beta;         // plan download count per node
    std::vector<std::size_t> repair_count; // repairs executed per node
    std::vector<std::size_t> repair_measured; // symbols downloaded per node
    bool audit_ok = false;
    bool repairs_restored = false;
    TransferLog log;

    std::string summary() const;
};

// Round-robin updates (node t mod n) with seeded random data; `repairs`
// single-node failures spread evenly over the run at seeded nodes.
SimulationReport simulate(CodePtr code, std::size_t updates, std::size_t repairs, std::uint64_t seed);

} // namespace ubcode
