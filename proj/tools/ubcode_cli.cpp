#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ubcode/ubcode.h"

namespace {

// Library failure carrying the process exit status.
struct Failure {
    int exit;
    std::string msg;
};

struct Str {
    char* p = nullptr;
    ~Str() { ubc_string_free(p); }
    std::string get() const { return p ? p : ""; }
};

struct Code {
    ubc_code* p = nullptr;
    Code() = default;
    Code(const Code&) = delete;
    Code& operator=(const Code&) = delete;
    ~Code() { ubc_code_free(p); }
};

void check(int status, const std::string& what) {
    if (status == UBC_OK) return;
    const bool verification = status == UBC_NOT_MDS || status == UBC_TOO_MANY_ERASURES ||
                              status == UBC_INTERNAL_RANK_FAILURE || status == UBC_INTERNAL;
    throw Failure{verification ? 1 : 2, what + ": " + ubc_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{2, "cannot read " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{2, "cannot write " + path};
}

void load_spec(Code& c, const std::string& path) { check(ubc_code_from_json(read_file(path).c_str(), &c.p), path); }

std::vector<uint32_t> parse_vectors(const Code& c, bool columns, const std::string& text, const std::string& what,
                                    std::vector<unsigned char>* erased) {
    std::vector<uint32_t> flat(columns ? ubc_code_total_columns(c.p) : ubc_code_total_data(c.p));
    if (erased) erased->assign(ubc_code_n(c.p), 0);
    check(ubc_parse_vectors(c.p, columns ? 1 : 0, text.c_str(), flat.data(), flat.size(),
                            erased ? erased->data() : nullptr),
          what);
    return flat;
}

std::string format_vectors(const Code& c, bool columns, const std::vector<uint32_t>& flat) {
    Str s;
    check(ubc_format_vectors(c.p, columns ? 1 : 0, flat.data(), flat.size(), nullptr, &s.p), "format");
    return s.get();
}

// "0 1 a" -> symbols, hex.
std::vector<uint32_t> parse_symbols(const std::string& s) {
    std::vector<uint32_t> out;
    std::string norm = s;
    for (char& ch : norm)
        if (ch == ',') ch = ' ';
    std::istringstream in(norm);
    for (std::string t; in >> t;) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(t, &used, 16);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) throw Failure{2, "--values: bad symbol '" + t + "'"};
        out.push_back(static_cast<uint32_t>(v));
    }
    return out;
}

uint64_t seed_or_default(const std::optional<uint64_t>& s) { return s ? *s : ubc_default_seed(); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Irregular array codes with minimum update bandwidth"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // bounds
    std::size_t b_n = 0, b_k = 0;
    std::vector<std::size_t> b_m;
    bool b_json = false;
    auto* bounds = app.add_subcommand("bounds", "Closed-form bounds and MR-MUB admissibility");
    bounds->add_option("--n", b_n, "Number of nodes")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--k", b_k, "Nodes needed to recover the data")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--m", b_m, "Data symbols per node, comma separated")->required()->delimiter(',');
    bounds->add_flag("--json", b_json, "Machine-readable output");

    // construct
    std::string c_kind, c_fixture, c_out;
    std::size_t c_n = 0, c_k = 0, c_rounds = 0;
    std::vector<std::size_t> c_m, c_pair;
    uint32_t c_q = 0, c_g = 0;
    bool c_json = false;
    auto* construct = app.add_subcommand("construct", "Build a code and write its spec JSON");
    auto* kind_opt = construct->add_option("--kind", c_kind, "Construction")->check(CLI::IsMember({"mrmub", "mub"}));
    auto* fix_opt = construct->add_option("--fixture", c_fixture, "Worked example")->check(CLI::IsMember({"fig1b", "fig3"}));
    kind_opt->excludes(fix_opt);
    construct->add_option("--n", c_n, "Number of nodes")->needs(kind_opt);
    construct->add_option("--k", c_k, "Nodes needed to recover the data")->needs(kind_opt);
    construct->add_option("--m", c_m, "Data symbols per node (one value for all nodes)")->delimiter(',')->needs(kind_opt);
    construct->add_option("--q", c_q, "Field size (default: smallest suitable 2^w)");
    auto* rounds_opt = construct->add_option("--transform", c_rounds, "Rounds of the pairing transformation");
    auto* pair_opt = construct->add_option("--pair", c_pair, "Single pairing round on nodes a,b")->delimiter(',')->expected(2);
    rounds_opt->excludes(pair_opt);
    construct->add_option("--g", c_g, "Pairing coefficient (default: primitive element)");
    construct->add_option("--out", c_out, "Spec file (default: stdout)");
    construct->add_flag("--json", c_json, "Print the code summary as JSON");

    // encode / decode / update / repair
    std::string e_spec, e_data, e_out;
    auto* encode = app.add_subcommand("encode", "Encode a data file into a codeword file");
    encode->add_option("--spec", e_spec, "Code spec")->required()->check(CLI::ExistingFile);
    encode->add_option("--data", e_data, "Data file: one line per node, hex symbols")->required()->check(CLI::ExistingFile);
    encode->add_option("--out", e_out, "Codeword file (default: stdout)");

    std::string d_spec, d_in, d_out;
    bool d_data = false;
    auto* decode = app.add_subcommand("decode", "Recover erased columns (lines marked x)");
    decode->add_option("--spec", d_spec, "Code spec")->required()->check(CLI::ExistingFile);
    decode->add_option("--in", d_in, "Codeword file")->required()->check(CLI::ExistingFile);
    decode->add_option("--out", d_out, "Output file (default: stdout)");
    decode->add_flag("--data", d_data, "Write the data part only");

    std::string u_spec, u_in, u_out, u_values, u_log;
    std::size_t u_node = 0;
    auto* update = app.add_subcommand("update", "Replace one node's data via the update protocol");
    update->add_option("--spec", u_spec, "Code spec")->required()->check(CLI::ExistingFile);
    update->add_option("--in", u_in, "Codeword file")->required()->check(CLI::ExistingFile);
    update->add_option("--node", u_node, "Node (1-based)")->required()->check(CLI::PositiveNumber);
    update->add_option("--values", u_values, "New data, hex symbols")->required();
    update->add_option("--out", u_out, "Output codeword file (default: stdout)");
    update->add_option("--log", u_log, "Transfer log file");

    std::string r_spec, r_in, r_out, r_log;
    std::size_t r_node = 0;
    auto* repair = app.add_subcommand("repair", "Rebuild one column from its repair schedule");
    repair->add_option("--spec", r_spec, "Code spec")->required()->check(CLI::ExistingFile);
    repair->add_option("--in", r_in, "Codeword file")->required()->check(CLI::ExistingFile);
    repair->add_option("--node", r_node, "Failed node (1-based)")->required()->check(CLI::PositiveNumber);
    repair->add_option("--out", r_out, "Output codeword file (default: stdout)");
    repair->add_option("--log", r_log, "Transfer log file");

    // verify
    std::string v_spec;
    std::optional<uint64_t> v_seed;
    bool v_json = false;
    auto* verify = app.add_subcommand("verify", "MDS check and invariant suites");
    verify->add_option("spec", v_spec, "Code spec")->required()->check(CLI::ExistingFile);
    verify->add_option("--seed", v_seed, "Random seed (default: UBCODE_SEED or built-in)");
    verify->add_flag("--json", v_json, "Machine-readable output");

    // simulate
    std::string s_spec, s_log;
    std::size_t s_updates = 100, s_repairs = 3;
    std::optional<uint64_t> s_seed;
    bool s_json = false;
    auto* simulate = app.add_subcommand("simulate", "Seeded workload with transfer accounting");
    simulate->add_option("--spec", s_spec, "Code spec")->required()->check(CLI::ExistingFile);
    simulate->add_option("--updates", s_updates, "Number of updates");
    simulate->add_option("--repairs", s_repairs, "Number of single-node repairs");
    simulate->add_option("--seed", s_seed, "Random seed (default: UBCODE_SEED or built-in)");
    simulate->add_option("--log", s_log, "Transfer log file");
    simulate->add_flag("--json", s_json, "Machine-readable output");

    // demo
    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "Rebuild a worked example and compare with expected values");
    demo->add_option("name", demo_name, "fig1b or fig3")->required()->check(CLI::IsMember({"fig1b", "fig3"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (bounds->parsed()) {
            if (b_m.size() != b_n) throw Failure{2, "--m: expected " + std::to_string(b_n) + " values"};
            Str s;
            check(ubc_bounds(b_n, b_k, b_m.data(), b_json ? 1 : 0, &s.p), "bounds");
            std::cout << s.get();
            return 0;
        }

        if (construct->parsed()) {
            if (c_kind.empty() && c_fixture.empty()) throw Failure{2, "construct: one of --kind or --fixture is required"};
            Code base;
            if (!c_kind.empty()) {
                if (!c_n || !c_k || c_m.empty()) throw Failure{2, "construct: --kind needs --n, --k and --m"};
                if (c_m.size() == 1) c_m.assign(c_n, c_m[0]);
                if (c_m.size() != c_n) throw Failure{2, "--m: expected 1 or " + std::to_string(c_n) + " values"};
                check(ubc_code_build(c_kind.c_str(), c_n, c_k, c_m.data(), c_q, &base.p), "construct");
            } else {
                check(ubc_code_build(c_fixture.c_str(), 0, 0, nullptr, 0, &base.p), "construct");
            }
            Code top;
            const ubc_code* code = base.p;
            if (!c_pair.empty()) {
                check(ubc_code_pair_transform(base.p, c_pair[0], c_pair[1], c_g, &top.p), "--pair");
                code = top.p;
            } else if (*rounds_opt) {
                check(ubc_code_transform(base.p, c_rounds, c_g, &top.p), "--transform");
                code = top.p;
            }
            Str spec;
            check(ubc_code_to_json(code, &spec.p), "construct");
            if (c_out.empty()) {
                std::cout << spec.get() << "\n";
                return 0;
            }
            write_output(c_out, spec.get() + "\n");
            Str info;
            check(ubc_code_info_json(code, &info.p), "construct");
            if (c_json) {
                std::cout << info.get() << "\n";
            } else {
                std::cout << "wrote " << c_out << " (n=" << ubc_code_n(code) << " k=" << ubc_code_k(code)
                          << " q=" << ubc_code_q(code) << ")\n";
            }
            return 0;
        }

        if (encode->parsed()) {
            Code c;
            load_spec(c, e_spec);
            const auto data = parse_vectors(c, false, read_file(e_data), e_data, nullptr);
            std::vector<uint32_t> cols(ubc_code_total_columns(c.p));
            check(ubc_encode(c.p, data.data(), data.size(), cols.data(), cols.size()), "encode");
            write_output(e_out, format_vectors(c, true, cols));
            return 0;
        }

        if (decode->parsed()) {
            Code c;
            load_spec(c, d_spec);
            std::vector<unsigned char> erased;
            const auto cols = parse_vectors(c, true, read_file(d_in), d_in, &erased);
            std::vector<uint32_t> full(cols.size());
            check(ubc_decode(c.p, cols.data(), cols.size(), erased.data(), full.data(), full.size()), "decode");
            if (!d_data) {
                write_output(d_out, format_vectors(c, true, full));
                return 0;
            }
            std::vector<uint32_t> data;
            std::size_t at = 0;
            for (std::size_t i = 1; i <= ubc_code_n(c.p); ++i) {
                const std::size_t m = ubc_code_data_len(c.p, i);
                data.insert(data.end(), full.begin() + at, full.begin() + at + m);
                at += ubc_code_column_len(c.p, i);
            }
            write_output(d_out, format_vectors(c, false, data));
            return 0;
        }

        if (update->parsed()) {
            Code c;
            load_spec(c, u_spec);
            auto cols = parse_vectors(c, true, read_file(u_in), u_in, nullptr);
            const auto values = parse_symbols(u_values);
            std::size_t sent = 0;
            Str log;
            check(ubc_update_columns(c.p, cols.data(), cols.size(), u_node, values.data(), values.size(), &sent,
                                     &log.p),
                  "update");
            write_output(u_out, format_vectors(c, true, cols));
            std::cerr << "update node " << u_node << ": " << sent << " symbols sent\n";
            if (!u_log.empty()) write_output(u_log, log.get());
            return 0;
        }

        if (repair->parsed()) {
            Code c;
            load_spec(c, r_spec);
            std::vector<unsigned char> erased;
            auto cols = parse_vectors(c, true, read_file(r_in), r_in, &erased);
            for (std::size_t i = 0; i < erased.size(); ++i)
                if (erased[i] && i + 1 != r_node)
                    throw Failure{2, "repair: node " + std::to_string(i + 1) + " is also erased; use decode"};
            std::size_t downloaded = 0;
            Str log;
            check(ubc_repair_column(c.p, cols.data(), cols.size(), r_node, &downloaded, &log.p), "repair");
            write_output(r_out, format_vectors(c, true, cols));
            std::cerr << "repair node " << r_node << ": " << downloaded << " symbols downloaded\n";
            if (!r_log.empty()) write_output(r_log, log.get());
            return 0;
        }

        if (verify->parsed()) {
            Code c;
            load_spec(c, v_spec);
            Str s;
            int passed = 0;
            check(ubc_verify(c.p, seed_or_default(v_seed), v_json ? 1 : 0, &s.p, &passed), "verify");
            std::cout << s.get();
            return passed ? 0 : 1;
        }

        if (simulate->parsed()) {
            Code c;
            load_spec(c, s_spec);
            Str summary, log;
            int passed = 0;
            check(ubc_simulate(c.p, s_updates, s_repairs, seed_or_default(s_seed), s_json ? 1 : 0, &summary.p,
                               s_log.empty() ? nullptr : &log.p, &passed),
                  "simulate");
            std::cout << summary.get();
            if (!s_log.empty()) write_output(s_log, log.get());
            return passed ? 0 : 1;
        }

        if (demo->parsed()) {
            Str s;
            int passed = 0;
            check(ubc_demo(demo_name.c_str(), &s.p, &passed), "demo");
            std::cout << s.get();
            return passed ? 0 : 1;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.msg << "\n";
        return f.exit;
    }
    return 2;
}
