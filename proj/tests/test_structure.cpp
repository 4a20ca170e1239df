#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "heavycol/structure.hpp"
#include "test_support.hpp"

using namespace heavycol;

namespace {

BinaryMatrix M(std::string_view text) { return parse_matrix(text); }

} // namespace

TEST(Reduce, Examples) {
    EXPECT_EQ(*reduce(M("10\n01"), 1, false), M("1"));
    EXPECT_EQ(*reduce(M("10\n01"), 1, true), M("0"));
    EXPECT_EQ(*reduce(M("11\n10"), 2, false), M("1"));
    EXPECT_FALSE(reduce(M("11\n01"), 2, false).has_value());
}

TEST(Reduce, KeepsRelativeColumnOrder) {
    EXPECT_EQ(*reduce(M("1011\n0010\n1110"), 2, false), M("111\n010"));
}

TEST(Reduce, Errors) {
    EXPECT_THROW(reduce(M("10"), 3, false), Error);
    try {
        reduce(M("1\n0"), 1, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoColumnLeft);
    }
    // n = 1 with no match is simply undefined.
    EXPECT_FALSE(reduce(M("1\n1"), 1, false).has_value());
}

TEST(BranchSet, Examples) {
    const auto both = branch_set(M("10\n01"), 1);
    ASSERT_EQ(both.branches.size(), 2u);
    EXPECT_FALSE(both.branches[0].value);
    EXPECT_EQ(both.branches[0].reduced, M("1"));
    EXPECT_TRUE(both.branches[1].value);
    EXPECT_EQ(both.branches[1].reduced, M("0"));

    const auto ones = branch_set(M("11\n01"), 2);
    ASSERT_EQ(ones.branches.size(), 1u);
    EXPECT_TRUE(ones.branches[0].value);
    EXPECT_EQ(ones.branches[0].reduced, M("1\n0"));

    const auto zeros = branch_set(M("00\n01"), 1);
    ASSERT_EQ(zeros.branches.size(), 1u);
    EXPECT_FALSE(zeros.branches[0].value);
    EXPECT_EQ(zeros.branches[0].reduced, M("0\n1"));

    EXPECT_THROW(branch_set(M("10"), 5), Error);
}

TEST(BranchSet, PartitionsRowsAndPreservesDistinctness) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 400; ++t) {
        const auto m = fixtures::random_distinct(rng, 6, 20);
        if (m.n() < 2) continue;
        for (int k = 1; k <= m.n(); ++k) {
            const auto s = branch_set(m, k);
            int total = 0;
            for (const auto& b : s.branches) {
                ASSERT_EQ(b.reduced.n(), m.n() - 1);
                ASSERT_GE(b.reduced.m(), 1);
                ASSERT_TRUE(matrix_properties(b.reduced).distinct_rows);
                total += b.reduced.m();
            }
            ASSERT_EQ(total, m.m());
            const int w = column_weight(m, k);
            ASSERT_EQ(s.branches.size(), static_cast<std::size_t>((w > 0) + (w < m.m())));
        }
    }
}

TEST(ConjugateOf, Examples) {
    EXPECT_EQ(conjugate_of(M("00\n10"), 1, 1), 2);
    EXPECT_FALSE(conjugate_of(M("00\n01\n10"), 2, 1).has_value());
    EXPECT_FALSE(conjugate_of(M("00\n11"), 1, 1).has_value());
    EXPECT_THROW(conjugate_of(M("00"), 2, 1), Error);
    EXPECT_THROW(conjugate_of(M("00"), 1, 3), Error);
}

TEST(ConjugateOf, DuplicatesGiveSmallestIndex) {
    EXPECT_EQ(conjugate_of(M("0\n1\n1"), 1, 1), 2);
}

TEST(ConjugateOf, SymmetricOnDistinctRows) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 400; ++t) {
        const auto m = fixtures::random_distinct(rng, 6, 30);
        for (int i = 1; i <= m.m(); ++i) {
            for (int k = 1; k <= m.n(); ++k) {
                if (auto j = conjugate_of(m, i, k)) {
                    ASSERT_EQ(conjugate_of(m, *j, k), i);
                }
            }
        }
    }
}

// The map zero-row -> conjugate at a fixed column never sends two rows to one.
TEST(ConjugateOf, ZeroToOneMapIsInjective) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 400; ++t) {
        const auto m = fixtures::random_distinct(rng, 6, 30);
        for (int k = 1; k <= m.n(); ++k) {
            std::set<int> images;
            int mapped = 0;
            for (int i = 1; i <= m.m(); ++i) {
                if (m.at(i, k)) continue;
                if (auto j = conjugate_of(m, i, k)) {
                    ASSERT_TRUE(m.at(*j, k));
                    images.insert(*j);
                    ++mapped;
                }
            }
            ASSERT_EQ(static_cast<int>(images.size()), mapped);
        }
    }
}

TEST(FindUnpaired, Examples) {
    EXPECT_EQ(find_unpaired(M("00\n01\n10")), (RowColumn{2, 1}));
    EXPECT_FALSE(find_unpaired(fixtures::full_cube(2)).has_value());
    EXPECT_EQ(find_unpaired(M("0")), (RowColumn{1, 1}));
}

TEST(ConsistentRows, Examples) {
    EXPECT_EQ(consistent_rows(M("00\n01"), 1, 2), (std::vector<int>{1, 2}));
    EXPECT_EQ(consistent_rows(M("00\n01\n10"), 2, 1), (std::vector<int>{2}));
    EXPECT_EQ(consistent_rows(M("00\n11"), 1, 1), (std::vector<int>{1}));
    EXPECT_THROW(consistent_rows(M("00"), 0, 1), Error);
}

TEST(SequentialReduction, Examples) {
    const auto t = sequential_reduction(M("00\n01\n10"), 2, 1);
    ASSERT_EQ(t.steps.size(), 1u);
    EXPECT_EQ(t.steps[0].column, 2);
    EXPECT_TRUE(t.steps[0].value);
    EXPECT_EQ(t.steps[0].survivors, 1);
    EXPECT_EQ(t.terminal, M("0"));
    EXPECT_EQ(t.surviving_rows, (std::vector<int>{2}));

    const auto cube = sequential_reduction(fixtures::full_cube(2), 1, 2);
    EXPECT_EQ(cube.terminal, M("0\n1"));
    EXPECT_EQ(cube.surviving_rows, (std::vector<int>{1, 3})); // rows 00 and 01

    const auto single = sequential_reduction(M("0\n1"), 2, 1);
    EXPECT_TRUE(single.steps.empty());
    EXPECT_EQ(single.terminal, M("0\n1"));
}

TEST(SequentialReduction, Errors) {
    const auto m = M("000\n110");
    auto kind = [&](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    EXPECT_EQ(kind([&] { sequential_reduction(m, 3, 1); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind([&] { sequential_reduction(m, 1, 4); }), ErrorKind::IndexOutOfRange);
    EXPECT_EQ(kind([&] { sequential_reduction(m, 1, 1, std::vector<int>{2}); }), ErrorKind::BadOrder);
    EXPECT_EQ(kind([&] { sequential_reduction(m, 1, 1, std::vector<int>{1, 2}); }), ErrorKind::BadOrder);
    EXPECT_EQ(kind([&] { sequential_reduction(m, 1, 1, std::vector<int>{2, 2}); }), ErrorKind::BadOrder);
    EXPECT_EQ(kind([&] { sequential_reduction(M("0"), 1, 1, std::vector<int>{1}); }), ErrorKind::BadOrder);
}

// Survivors equal the consistent rows for every order, counts never grow,
// the terminal is column l of the survivors, and an unpaired start leaves
// only zeros.
TEST(SequentialReduction, TraceProperties) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 400; ++t) {
        const auto m = fixtures::random_distinct(rng, 6, 25);
        const int i = std::uniform_int_distribution<int>(1, m.m())(rng);
        const int l = std::uniform_int_distribution<int>(1, m.n())(rng);
        std::vector<int> order;
        for (int k = 1; k <= m.n(); ++k) {
            if (k != l) order.push_back(k);
        }
        const auto expected = consistent_rows(m, i, l);
        for (int rep = 0; rep < 3; ++rep) {
            std::shuffle(order.begin(), order.end(), rng);
            const auto trace = sequential_reduction(m, i, l, order);
            ASSERT_EQ(trace.steps.size(), static_cast<std::size_t>(m.n() - 1));
            int prev = m.m();
            std::set<int> seen;
            for (const auto& s : trace.steps) {
                ASSERT_LE(s.survivors, prev);
                ASSERT_GE(s.survivors, 1);
                ASSERT_NE(s.column, l);
                ASSERT_EQ(s.value, m.at(i, s.column));
                seen.insert(s.column);
                prev = s.survivors;
            }
            ASSERT_EQ(seen.size(), trace.steps.size());
            ASSERT_EQ(trace.surviving_rows, expected);
            ASSERT_EQ(trace.terminal.n(), 1);
            ASSERT_EQ(trace.terminal.m(), static_cast<int>(expected.size()));
            for (std::size_t s = 0; s < expected.size(); ++s) {
                ASSERT_EQ(trace.terminal.at(static_cast<int>(s) + 1, 1), m.at(expected[s], l));
            }
            if (!m.at(i, l) && !conjugate_of(m, i, l)) {
                for (Row r : trace.terminal.rows()) ASSERT_EQ(r, 0u);
            }
        }
    }
}
