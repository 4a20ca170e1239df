#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heavycol/error.hpp"

namespace heavycol {

using Row = std::uint64_t;

inline constexpr int kMaxColumns = 63;

/// Bit k-1 of a row encoding holds the entry of column k (columns are 1-based).
constexpr bool entry(Row row, int column) noexcept { return ((row >> (column - 1)) & 1u) != 0; }

constexpr Row column_mask(int n) noexcept { return n >= 64 ? ~Row{0} : (Row{1} << n) - 1; }

/// Deletes column `column` from a row encoding; higher columns shift down by one.
constexpr Row drop_column(Row row, int column) noexcept {
    const Row low = row & column_mask(column - 1);
    const Row high = row >> column;
    return low | (high << (column - 1));
}

/// An m x n (0,1)-matrix stored as one bit pattern per row.
///
/// Rows keep the order they were given in and may repeat. Both dimensions are
/// at least one and n is capped at 63 columns.
class BinaryMatrix {
public:
    BinaryMatrix(std::vector<Row> rows, int n) : rows_(std::move(rows)), n_(n) {
        if (n_ < 1 || n_ > kMaxColumns) {
            throw Error(n_ < 1 ? ErrorKind::EmptyInput : ErrorKind::TooWide,
                        "column count " + std::to_string(n_) + " outside 1.." + std::to_string(kMaxColumns));
        }
        if (rows_.empty()) throw Error(ErrorKind::EmptyInput, "matrix has no rows");
        const Row mask = column_mask(n_);
        for (Row r : rows_) {
            if ((r & ~mask) != 0) throw Error(ErrorKind::TooWide, "row uses bits beyond column " + std::to_string(n_));
        }
    }

    /// Builds a matrix from strings such as {"10", "01"}; character k is column k.
    static BinaryMatrix from_strings(const std::vector<std::string>& lines);

    int m() const noexcept { return static_cast<int>(rows_.size()); }
    int n() const noexcept { return n_; }
    std::span<const Row> rows() const noexcept { return rows_; }
    Row row(int i) const { return rows_.at(static_cast<std::size_t>(i - 1)); }
    bool at(int i, int column) const { return entry(row(i), column); }

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::vector<Row> rows_;
    int n_;
};

inline std::string row_to_string(Row row, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 1; k <= n; ++k) {
        if (entry(row, k)) s[static_cast<std::size_t>(k - 1)] = '1';
    }
    return s;
}

/// Parses the matrix text format: one row per line of '0'/'1' characters,
/// '#' comment lines and blank lines ignored, whitespace inside a line dropped.
inline BinaryMatrix parse_matrix(std::istream& in) {
    std::vector<Row> rows;
    int width = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r\f\v");
        if (first == std::string::npos || line[first] == '#') continue;
        Row r = 0;
        int len = 0;
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') continue;
            if (c != '0' && c != '1') {
                throw Error(ErrorKind::BadCharacter,
                            "line " + std::to_string(line_no) + ": unexpected character '" + std::string(1, c) + "'");
            }
            if (len == kMaxColumns) {
                throw Error(ErrorKind::TooWide, "line " + std::to_string(line_no) + " exceeds 63 columns");
            }
            if (c == '1') r |= Row{1} << len;
            ++len;
        }
        if (width < 0) {
            width = len;
        } else if (len != width) {
            throw Error(ErrorKind::RaggedRows, "line " + std::to_string(line_no) + " has " + std::to_string(len) +
                                                  " columns, expected " + std::to_string(width));
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyInput, "no data lines");
    return BinaryMatrix(std::move(rows), width);
}

inline BinaryMatrix parse_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_matrix(in);
}

inline BinaryMatrix BinaryMatrix::from_strings(const std::vector<std::string>& lines) {
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    return parse_matrix(text);
}

/// Data lines joined by '\n', no trailing newline.
inline std::string to_text(const BinaryMatrix& M) {
    std::string out;
    for (Row r : M.rows()) {
        if (!out.empty()) out += '\n';
        out += row_to_string(r, M.n());
    }
    return out;
}

inline void check_column(const BinaryMatrix& M, int column) {
    if (column < 1 || column > M.n()) {
        throw Error(ErrorKind::ColumnOutOfRange,
                    "column " + std::to_string(column) + " outside 1.." + std::to_string(M.n()));
    }
}

inline void check_row(const BinaryMatrix& M, int i) {
    if (i < 1 || i > M.m()) {
        throw Error(ErrorKind::IndexOutOfRange, "row " + std::to_string(i) + " outside 1.." + std::to_string(M.m()));
    }
}

inline int count_ones(std::span<const Row> rows, int column) noexcept {
    int ones = 0;
    for (Row r : rows) ones += entry(r, column) ? 1 : 0;
    return ones;
}

/// ones >= zeros, i.e. ones >= ceil(m/2).
constexpr bool heavy_weight(int ones, int m) noexcept { return 2 * ones >= m; }

/// True when at least one of the n columns of `rows` is heavy.
inline bool has_heavy_column(std::span<const Row> rows, int n) noexcept {
    const int m = static_cast<int>(rows.size());
    for (int k = 1; k <= n; ++k) {
        if (heavy_weight(count_ones(rows, k), m)) return true;
    }
    return false;
}

inline int column_weight(const BinaryMatrix& M, int column) {
    check_column(M, column);
    return count_ones(M.rows(), column);
}

inline bool is_heavy(const BinaryMatrix& M, int column) {
    const int ones = column_weight(M, column);
    const bool by_zeros = ones >= M.m() - ones;
    const bool by_ceiling = ones >= (M.m() + 1) / 2;
    assert(by_zeros == by_ceiling);
    (void)by_ceiling;
    return by_zeros;
}

/// Columns whose ones are at least their zeros, ascending. May be empty.
inline std::vector<int> heavy_columns(const BinaryMatrix& M) {
    std::vector<int> out;
    for (int k = 1; k <= M.n(); ++k) {
        if (is_heavy(M, k)) out.push_back(k);
    }
    return out;
}

struct MatrixProperties {
    bool distinct_rows = false;
    bool distinct_columns = false;
    bool has_all_zero_column = false;
    std::vector<int> column_weights;
};

inline MatrixProperties matrix_properties(const BinaryMatrix& M) {
    MatrixProperties p;
    const std::set<Row> unique_rows(M.rows().begin(), M.rows().end());
    p.distinct_rows = static_cast<int>(unique_rows.size()) == M.m();

    std::set<std::string> unique_columns;
    for (int k = 1; k <= M.n(); ++k) {
        std::string pattern;
        pattern.reserve(static_cast<std::size_t>(M.m()));
        for (Row r : M.rows()) pattern += entry(r, k) ? '1' : '0';
        unique_columns.insert(std::move(pattern));
        const int w = count_ones(M.rows(), k);
        p.column_weights.push_back(w);
        if (w == 0) p.has_all_zero_column = true;
    }
    p.distinct_columns = static_cast<int>(unique_columns.size()) == M.n();
    return p;
}

} // namespace heavycol
