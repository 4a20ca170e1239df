#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "heavycol/algorithms.hpp"
#include "heavycol/matrix.hpp"
#include "heavycol/report.hpp"
#include "test_support.hpp"

using namespace heavycol;

namespace {

BinaryMatrix M(std::string_view text) { return parse_matrix(text); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Io;
}

} // namespace

TEST(ParseMatrix, TwoByTwo) {
    const auto m = M("10\n01");
    EXPECT_EQ(m.m(), 2);
    EXPECT_EQ(m.n(), 2);
    EXPECT_TRUE(m.at(1, 1));
    EXPECT_FALSE(m.at(1, 2));
    EXPECT_FALSE(m.at(2, 1));
    EXPECT_TRUE(m.at(2, 2));
}

TEST(ParseMatrix, SkipsCommentsAndBlankLines) {
    const auto m = M("# c\n0");
    EXPECT_EQ(m.m(), 1);
    EXPECT_EQ(m.n(), 1);
    EXPECT_FALSE(m.at(1, 1));

    const auto padded = M("\n  # header\n 1 0 \n\n01\r\n");
    EXPECT_EQ(padded, M("10\n01"));
}

TEST(ParseMatrix, Errors) {
    EXPECT_EQ(kind_of([] { M("10\n011"); }), ErrorKind::RaggedRows);
    EXPECT_EQ(kind_of([] { M(""); }), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of([] { M("# only a comment\n\n"); }), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of([] { M("102"); }), ErrorKind::BadCharacter);
    EXPECT_EQ(kind_of([] { M("10 # trailing"); }), ErrorKind::BadCharacter);
    EXPECT_EQ(kind_of([] { M(std::string(64, '1')); }), ErrorKind::TooWide);
    EXPECT_NO_THROW(M(std::string(63, '1')));
}

TEST(BinaryMatrix, RejectsBadConstruction) {
    EXPECT_EQ(kind_of([] { BinaryMatrix({}, 2); }), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of([] { BinaryMatrix({0b100}, 2); }), ErrorKind::TooWide);
    EXPECT_EQ(kind_of([] { BinaryMatrix({0}, 64); }), ErrorKind::TooWide);
}

TEST(ColumnWeight, Examples) {
    EXPECT_EQ(column_weight(M("11\n01\n10"), 1), 2);
    EXPECT_EQ(column_weight(M("0"), 1), 0);
    EXPECT_EQ(column_weight(fixtures::full_cube(2), 2), 2);
    EXPECT_EQ(kind_of([] { column_weight(M("10"), 3); }), ErrorKind::ColumnOutOfRange);
    EXPECT_EQ(kind_of([] { column_weight(M("10"), 0); }), ErrorKind::ColumnOutOfRange);
}

TEST(IsHeavy, CeilingThreshold) {
    // m = 3: weight 2 meets ceil(3/2) = 2, weight 1 does not.
    EXPECT_TRUE(is_heavy(M("1\n1\n0"), 1));
    EXPECT_FALSE(is_heavy(M("1\n0\n0"), 1));
    // m = 2, weight 1: 1 >= ceil(2/2) = 1.
    EXPECT_TRUE(is_heavy(M("1\n0"), 1));
    EXPECT_EQ(kind_of([] { is_heavy(M("1"), 2); }), ErrorKind::ColumnOutOfRange);
}

TEST(HeavyColumns, Examples) {
    EXPECT_EQ(heavy_columns(M("10\n01")), (std::vector<int>{1, 2}));
    EXPECT_TRUE(heavy_columns(M("00\n01\n10")).empty());
    EXPECT_EQ(heavy_columns(M("1")), (std::vector<int>{1}));
}

TEST(MatrixProperties, Examples) {
    const auto zero = matrix_properties(M("00"));
    EXPECT_TRUE(zero.distinct_rows);
    EXPECT_FALSE(zero.distinct_columns);
    EXPECT_TRUE(zero.has_all_zero_column);

    const auto ok = matrix_properties(M("10\n01"));
    EXPECT_TRUE(ok.distinct_rows);
    EXPECT_TRUE(ok.distinct_columns);
    EXPECT_FALSE(ok.has_all_zero_column);
    EXPECT_EQ(ok.column_weights, (std::vector<int>{1, 1}));

    EXPECT_FALSE(matrix_properties(M("1\n1")).distinct_rows);
}

TEST(MatrixProperties, WeightsBoundedAndZeroFlagConsistent) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        const auto m = fixtures::random_any(rng, 8, 10);
        const auto p = matrix_properties(m);
        bool any_zero = false;
        for (int w : p.column_weights) {
            ASSERT_GE(w, 0);
            ASSERT_LE(w, m.m());
            any_zero = any_zero || w == 0;
        }
        ASSERT_EQ(any_zero, p.has_all_zero_column);
    }
}

TEST(HeavyColumns, IntegerFormAgreesWithCeilingForm) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
        const auto m = fixtures::random_any(rng, 6, 15);
        for (int k = 1; k <= m.n(); ++k) {
            const int w = column_weight(m, k);
            ASSERT_EQ(is_heavy(m, k), 2 * w >= m.m());
            ASSERT_EQ(is_heavy(m, k), w >= (m.m() + 1) / 2);
        }
    }
}

TEST(HeavyColumns, InvariantUnderRowPermutation) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        const auto m = fixtures::random_any(rng, 6, 12);
        ASSERT_EQ(heavy_columns(m), heavy_columns(fixtures::shuffled_rows(m, rng)));
    }
}

TEST(HeavyColumns, FullCubeEveryColumnHalfWeight) {
    for (int n = 1; n <= 10; ++n) {
        const auto cube = fixtures::full_cube(n);
        for (int k = 1; k <= n; ++k) ASSERT_EQ(column_weight(cube, k), 1 << (n - 1));
        ASSERT_EQ(heavy_columns(cube).size(), static_cast<std::size_t>(n));
    }
}

TEST(TextFormat, ParseThenPrintReproducesDataLines) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const auto m = fixtures::random_any(rng, 63, 6);
        const std::string text = to_text(m);
        ASSERT_EQ(parse_matrix("# generated\n" + text + "\n\n"), m);
        ASSERT_EQ(to_text(parse_matrix(text)), text);
    }
}

TEST(Report, SchemaInstance) {
    const auto m = M("1");
    const Verdict v = run_a1(m);
    const auto j = nlohmann::json::parse(serialize_report(m, Algorithm::A1, &v));
    EXPECT_EQ(j["verdict"], true);
    EXPECT_EQ(j["heavy_columns"], nlohmann::json::array({1}));
    EXPECT_EQ(j["algorithm"], "a1");
    EXPECT_EQ(j["m"], 1);
    EXPECT_EQ(j["n"], 1);
    EXPECT_EQ(j["witness"]["line"], 3);
    EXPECT_EQ(j["witness"]["column"], 1);
    EXPECT_EQ(j["preconditions"]["distinct_rows"], true);
    EXPECT_EQ(j["stats"]["calls"], 1);
    for (const char* key : {"calls", "max_depth", "cache_hits", "elapsed_ns"}) EXPECT_TRUE(j["stats"].contains(key));
}

TEST(Report, EmptyHeavySetAndOracle) {
    const auto m = M("00\n01\n10");
    const auto j = report_json(m, std::nullopt, nullptr);
    EXPECT_EQ(j["heavy_columns"], nlohmann::json::array());
    EXPECT_EQ(j["algorithm"], "oracle");
    EXPECT_TRUE(j["verdict"].is_null());
    EXPECT_TRUE(j["witness"].is_null());
    EXPECT_NE(serialize_report(m, std::nullopt, nullptr).find("\"heavy_columns\":[]"), std::string::npos);
}

TEST(Report, CarriesStatsLosslessly) {
    Verdict v;
    v.value = true;
    v.stats.calls = 7;
    v.stats.max_depth = 2;
    v.stats.cache_hits = 3;
    v.stats.elapsed_ns = 123456789012ULL;
    const auto text = serialize_report(M("10\n01"), Algorithm::A2, &v);
    EXPECT_NE(text.find("\"calls\":7"), std::string::npos);
    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j["stats"]["cache_hits"], 3);
    EXPECT_EQ(j["stats"]["elapsed_ns"].get<std::uint64_t>(), 123456789012ULL);
}
