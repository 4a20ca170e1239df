#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "heavycol/matrix.hpp"

namespace heavycol::fixtures {

/// Distinct-row matrix with 1..n_max columns and 1..min(m_max, 2^n) rows,
/// rows in random order.
inline BinaryMatrix random_distinct(std::mt19937_64& rng, int n_max, int m_max) {
    const int n = std::uniform_int_distribution<int>(1, n_max)(rng);
    const int cube = 1 << n;
    const int m = std::uniform_int_distribution<int>(1, std::min(m_max, cube))(rng);
    std::vector<Row> all(static_cast<std::size_t>(cube));
    for (int r = 0; r < cube; ++r) all[static_cast<std::size_t>(r)] = static_cast<Row>(r);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(m));
    return BinaryMatrix(std::move(all), n);
}

/// Rows drawn independently, so duplicates are likely.
inline BinaryMatrix random_any(std::mt19937_64& rng, int n_max, int m_max) {
    const int n = std::uniform_int_distribution<int>(1, n_max)(rng);
    const int m = std::uniform_int_distribution<int>(1, m_max)(rng);
    std::uniform_int_distribution<Row> row(0, column_mask(n));
    std::vector<Row> rows;
    for (int i = 0; i < m; ++i) rows.push_back(row(rng));
    return BinaryMatrix(std::move(rows), n);
}

inline BinaryMatrix shuffled_rows(const BinaryMatrix& M, std::mt19937_64& rng) {
    std::vector<Row> rows(M.rows().begin(), M.rows().end());
    std::shuffle(rows.begin(), rows.end(), rng);
    return BinaryMatrix(std::move(rows), M.n());
}

inline BinaryMatrix full_cube(int n) {
    std::vector<Row> rows;
    for (Row r = 0; r < (Row{1} << n); ++r) rows.push_back(r);
    return BinaryMatrix(std::move(rows), n);
}

} // namespace heavycol::fixtures
