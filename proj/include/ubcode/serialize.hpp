#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ubcode/cluster.hpp"

namespace ubcode {

using Json = nlohmann::json;

Json field_to_json(const GaloisField& f);
// Rebuilds the canonical field and checks the stored modulus and primitive.
// Throws InvalidSpec.
Field field_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const Json& j);

Json params_to_json(const CodeParams& p);
Json sizes_to_json(const Sizes& s);
Json rational_to_json(const Rational& r); // "num/den" string

// Code-spec document:
//   {field, params, matrices: {A, B}, [construction], [transform],
//    [repair_plans]}
// Grids are indexed [i][j]; zero diagonal blocks are empty matrices. Node
// indices are 1-based.
Json code_to_json(const ClusterCode& code);
// Throws InvalidSpec.
CodePtr code_from_json(const Json& j);

CodePtr read_code_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Column file: one column per line, fixed-width hex symbols separated by
// spaces. "-" is an empty column and "x" an erased one.
struct ColumnFile {
    std::vector<Vec> columns;
    std::vector<bool> erased;
};
std::string write_columns(const GaloisField& f, const std::vector<Vec>& cols, const std::vector<bool>& erased = {});
ColumnFile read_columns(const GaloisField& f, const std::string& text);

Json bounds_to_json(const BoundsReport& b);
Json admissible_to_json(const AdmissibleReport& a);

} // namespace ubcode
