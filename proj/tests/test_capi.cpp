#include <doctest.h>

#include <string>
#include <vector>

#include "ubcode/ubcode.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    ubc_string_free(s);
    return out;
}

} // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(ubc_status_name(UBC_OK)) == "Ok");
    CHECK(std::string(ubc_status_name(UBC_NOT_MDS)) == "NotMds");
    CHECK(std::string(ubc_status_name(UBC_NULL_ARGUMENT)) == "NullArgument");
    ubc_code* c = nullptr;
    const std::size_t m[4] = {3, 3, 3, 3};
    CHECK(ubc_code_build("mrmub", 4, 2, m, 0, &c) == UBC_DIVISIBILITY_VIOLATION);
    CHECK(c == nullptr);
    CHECK(std::string(ubc_last_error()).find("DivisibilityViolation") != std::string::npos);
    CHECK(ubc_code_build("nope", 4, 2, m, 0, &c) == UBC_INVALID_PARAMS);
    CHECK(ubc_code_build("mrmub", 4, 2, m, 0, nullptr) == UBC_NULL_ARGUMENT);
    CHECK(ubc_code_from_json("{not json", &c) == UBC_INVALID_SPEC);
    CHECK(ubc_code_n(nullptr) == 0);
}

TEST_CASE("bounds through the C interface") {
    const std::size_t m[4] = {4, 2, 2, 0};
    char* s = nullptr;
    REQUIRE(ubc_bounds(4, 2, m, 0, &s) == UBC_OK);
    CHECK(take(s).find("mu=4 R_min=8 gamma_min=3 R_sma=11") != std::string::npos);
    REQUIRE(ubc_bounds(4, 2, m, 1, &s) == UBC_OK);
    CHECK(take(s).find("\"r_sma\": 11") != std::string::npos);
    REQUIRE(ubc_admissible_json(4, 2, m, &s) == UBC_OK);
    CHECK(take(s).find("NotAdmissible") != std::string::npos);
    const std::size_t p[4] = {0, 2, 2, 4};
    const std::size_t g[16] = {0, 4, 4, 4, 2, 0, 2, 2, 2, 2, 0, 2, 0, 0, 0, 0};
    REQUIRE(ubc_feasible_json(4, 2, m, p, g, &s) == UBC_OK);
    CHECK(take(s).find("\"feasible\": true") != std::string::npos);
}

TEST_CASE("codec and cluster through the C interface") {
    ubc_code* c = nullptr;
    REQUIRE(ubc_code_build("fig1b", 0, 0, nullptr, 0, &c) == UBC_OK);
    CHECK(ubc_code_n(c) == 4);
    CHECK(ubc_code_q(c) == 2);
    CHECK(ubc_code_total_data(c) == 8);
    CHECK(ubc_code_column_len(c, 1) == 4);
    CHECK(ubc_code_column_len(c, 5) == 0);

    const std::vector<uint32_t> data = {1, 0, 1, 1, 0, 1, 1, 1};
    std::vector<uint32_t> cols(16), out(16);
    REQUIRE(ubc_encode(c, data.data(), data.size(), cols.data(), cols.size()) == UBC_OK);
    const unsigned char erased[4] = {1, 0, 0, 1};
    std::vector<uint32_t> damaged = cols;
    for (std::size_t r = 0; r < 4; ++r) damaged[r] = damaged[12 + r] = 1;
    REQUIRE(ubc_decode(c, damaged.data(), damaged.size(), erased, out.data(), out.size()) == UBC_OK);
    CHECK(out == cols);

    std::size_t sent = 0, got = 0;
    char* log = nullptr;
    const uint32_t nx[2] = {0, 0};
    REQUIRE(ubc_update_columns(c, cols.data(), cols.size(), 1, nx, 2, &sent, &log) == UBC_OK);
    CHECK(sent == 3);
    CHECK(take(log) == "update,1,2,1\nupdate,1,3,1\nupdate,1,4,1\n");
    std::vector<uint32_t> expect(16);
    std::vector<uint32_t> data2 = data;
    data2[0] = data2[1] = 0;
    REQUIRE(ubc_encode(c, data2.data(), data2.size(), expect.data(), expect.size()) == UBC_OK);
    CHECK(cols == expect);
    REQUIRE(ubc_repair_column(c, cols.data(), cols.size(), 3, &got, nullptr) == UBC_OK);
    CHECK(got == 6);
    CHECK(cols == expect);
    CHECK(ubc_repair_column(c, cols.data(), cols.size(), 5, &got, nullptr) == UBC_NODE_OUT_OF_RANGE);

    char* text = nullptr;
    REQUIRE(ubc_format_vectors(c, 1, cols.data(), cols.size(), erased, &text) == UBC_OK);
    const std::string t = take(text);
    CHECK(t.substr(0, 2) == "x\n");
    std::vector<uint32_t> parsed(16, 9);
    unsigned char e2[4] = {0, 0, 0, 0};
    REQUIRE(ubc_parse_vectors(c, 1, t.c_str(), parsed.data(), parsed.size(), e2) == UBC_OK);
    CHECK(e2[0] == 1);
    CHECK(e2[3] == 1);
    CHECK(parsed[0] == 0);
    CHECK(ubc_parse_vectors(c, 1, "1 0\n", parsed.data(), parsed.size(), e2) == UBC_SHAPE_MISMATCH);

    ubc_cluster* cl = nullptr;
    REQUIRE(ubc_cluster_new(c, 5, &cl) == UBC_OK);
    int ok = 0;
    std::size_t node = 0, row = 0;
    REQUIRE(ubc_cluster_audit(cl, &ok, &node, &row) == UBC_OK);
    CHECK(ok == 1);
    REQUIRE(ubc_cluster_update(cl, 2, nx, 2, &sent, nullptr) == UBC_OK);
    CHECK(sent == 3);
    REQUIRE(ubc_cluster_repair(cl, 2, &got, nullptr) == UBC_OK);
    CHECK(got == 6);
    REQUIRE(ubc_cluster_corrupt(cl, 4, 3) == UBC_OK);
    REQUIRE(ubc_cluster_audit(cl, &ok, &node, &row) == UBC_OK);
    CHECK(ok == 0);
    CHECK(node == 4);
    CHECK(row == 3);
    ubc_cluster_free(cl);

    char* summary = nullptr;
    int passed = 0;
    REQUIRE(ubc_simulate(c, 100, 3, 7, 0, &summary, &log, &passed) == UBC_OK);
    CHECK(passed == 1);
    CHECK(take(summary).find("gamma measured  3") != std::string::npos);
    CHECK(take(log).find("repair,") != std::string::npos);

    REQUIRE(ubc_verify(c, 1, 1, &text, &passed) == UBC_OK);
    CHECK(passed == 1);
    CHECK(take(text).find("\"mds\": \"Mds\"") != std::string::npos);

    REQUIRE(ubc_code_to_json(c, &text) == UBC_OK);
    ubc_code* back = nullptr;
    REQUIRE(ubc_code_from_json(text, &back) == UBC_OK);
    ubc_string_free(text);
    REQUIRE(ubc_code_info_json(back, &text) == UBC_OK);
    CHECK(take(text).find("\"repair_download\": [\n    6,") != std::string::npos);
    ubc_code_free(back);
    ubc_code_free(c);
}

TEST_CASE("transformations through the C interface") {
    ubc_code* base = nullptr;
    const std::size_t m[4] = {2, 2, 2, 2};
    REQUIRE(ubc_code_build("mrmub", 4, 2, m, 4, &base) == UBC_OK);
    ubc_code* t = nullptr;
    REQUIRE(ubc_code_pair_transform(base, 3, 4, 0, &t) == UBC_OK);
    CHECK(ubc_code_column_len(t, 1) == 8);
    ubc_code_free(t);
    REQUIRE(ubc_code_transform(base, 2, 0, &t) == UBC_OK);
    CHECK(ubc_code_column_len(t, 1) == 16);
    int passed = 0;
    REQUIRE(ubc_verify(t, 1, 0, nullptr, &passed) == UBC_OK);
    CHECK(passed == 1);
    ubc_code_free(t);
    CHECK(ubc_code_pair_transform(base, 3, 3, 0, &t) == UBC_INVALID_PAIR);
    CHECK(ubc_code_pair_transform(base, 3, 4, 1, &t) == UBC_INVALID_PARAMS);
    ubc_code_free(base);

    ubc_code* b2 = nullptr;
    REQUIRE(ubc_code_build("fig1b", 0, 0, nullptr, 0, &b2) == UBC_OK);
    CHECK(ubc_code_transform(b2, 1, 0, &t) == UBC_FIELD_TOO_SMALL);
    ubc_code_free(b2);
}

TEST_CASE("demos through the C interface") {
    char* text = nullptr;
    int passed = 0;
    REQUIRE(ubc_demo("fig3", &text, &passed) == UBC_OK);
    CHECK(passed == 1);
    CHECK(take(text).find("gamma=3, R=11") != std::string::npos);
    CHECK(ubc_demo("fig9", &text, &passed) == UBC_INVALID_PARAMS);
}
