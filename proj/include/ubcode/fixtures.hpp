#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ubcode/construct.hpp"
#include "ubcode/repair.hpp"

namespace ubcode {

// (4,2) MR-MUB code with m = 2 over GF(2): parity-check base and
// V = [[0,1,1],[1,1,0]].
BuiltCode fig1b_code();

// Six-symbol repair of node r (0-based): rows {0,1} of node r+1, rows
// {1,2} of node r+2, rows {0,3} of node r+3 (indices mod 4). Unprepared.
RepairPlan fig1b_repair(std::size_t r);

// (4,2) MUB code with m = (4,2,2,0) over GF(2): parity-check bases and the
// per-node assembly matrices listed in the sender order j+1, ..., j-1.
BuiltCode fig3_code();

// "x1,1+2*x2,2" style linear form of a coefficient vector over the data
// symbols (node-major). "0" for the zero form.
std::string expression(const GaloisField& f, const Vec& coeffs, const Sizes& m);

// Coefficient vector of an expression produced by `expression`.
Vec parse_expression(const GaloisField& f, const std::string& s, const Sizes& m);

struct DemoResult {
    std::string text;
    bool ok = false;
};

// "fig1b" or "fig3". Throws InvalidParams for other names.
DemoResult demo(const std::string& name);

} // namespace ubcode
