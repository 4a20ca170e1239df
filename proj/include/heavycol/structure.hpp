#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heavycol/matrix.hpp"

namespace heavycol {

/// Rows of M with entry `value` at `column`, that column deleted.
/// Empty optional when no row matches.
inline std::optional<BinaryMatrix> reduce(const BinaryMatrix& M, int column, bool value) {
    check_column(M, column);
    std::vector<Row> kept;
    for (Row r : M.rows()) {
        if (entry(r, column) == value) kept.push_back(drop_column(r, column));
    }
    if (kept.empty()) return std::nullopt;
    if (M.n() == 1) {
        throw Error(ErrorKind::NoColumnLeft, "reducing a single-column matrix would leave no columns");
    }
    return BinaryMatrix(std::move(kept), M.n() - 1);
}

struct Branch {
    bool value;
    BinaryMatrix reduced;
};

/// S_k: the defined reductions at column k, zero branch first.
struct BranchSet {
    int column;
    std::vector<Branch> branches;
};

inline BranchSet branch_set(const BinaryMatrix& M, int column) {
    check_column(M, column);
    if (M.n() < 2) throw Error(ErrorKind::NoColumnLeft, "branch sets need at least two columns");
    BranchSet s{column, {}};
    for (bool b : {false, true}) {
        if (auto reduced = reduce(M, column, b)) s.branches.push_back({b, std::move(*reduced)});
    }
    return s;
}

/// Smallest j != i whose row equals row i with column k flipped.
inline std::optional<int> conjugate_of(const BinaryMatrix& M, int i, int column) {
    check_row(M, i);
    if (column < 1 || column > M.n()) {
        throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(column) + " outside 1.." + std::to_string(M.n()));
    }
    const Row target = M.row(i) ^ (Row{1} << (column - 1));
    for (int j = 1; j <= M.m(); ++j) {
        if (j != i && M.row(j) == target) return j;
    }
    return std::nullopt;
}

struct RowColumn {
    int row;
    int column;
    bool operator==(const RowColumn&) const = default;
};

/// First (row, column) with a zero entry and no conjugate; columns scanned
/// ascending, rows ascending within a column.
inline std::optional<RowColumn> find_unpaired(const BinaryMatrix& M) {
    for (int l = 1; l <= M.n(); ++l) {
        for (int i = 1; i <= M.m(); ++i) {
            if (!M.at(i, l) && !conjugate_of(M, i, l)) return RowColumn{i, l};
        }
    }
    return std::nullopt;
}

/// Rows agreeing with row i on every column except `column`; includes i.
inline std::vector<int> consistent_rows(const BinaryMatrix& M, int i, int column) {
    check_row(M, i);
    if (column < 1 || column > M.n()) {
        throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(column) + " outside 1.." + std::to_string(M.n()));
    }
    const Row ignore = Row{1} << (column - 1);
    const Row r = M.row(i) & ~ignore;
    std::vector<int> out;
    for (int j = 1; j <= M.m(); ++j) {
        if ((M.row(j) & ~ignore) == r) out.push_back(j);
    }
    return out;
}

struct ReductionStep {
    int column;    // original column index
    bool value;    // source row's entry there
    int survivors; // rows left after this step
};

struct ReductionTrace {
    int preserved_column;
    int source_row;
    std::vector<ReductionStep> steps;
    BinaryMatrix terminal;
    std::vector<int> surviving_rows; // original 1-based indices, ascending
};

inline ReductionTrace sequential_reduction(const BinaryMatrix& M, int i, int l,
                                           std::optional<std::vector<int>> order = std::nullopt) {
    check_row(M, i);
    if (l < 1 || l > M.n()) {
        throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(l) + " outside 1.." + std::to_string(M.n()));
    }
    std::vector<int> expected;
    for (int k = 1; k <= M.n(); ++k) {
        if (k != l) expected.push_back(k);
    }
    std::vector<int> steps_order = order ? *order : expected;
    {
        std::vector<int> sorted = steps_order;
        std::ranges::sort(sorted);
        if (sorted != expected) throw Error(ErrorKind::BadOrder, "order must be a permutation of the columns other than the preserved one");
    }

    const Row source = M.row(i);
    BinaryMatrix current = M;
    std::vector<int> columns(static_cast<std::size_t>(M.n()));
    for (int k = 1; k <= M.n(); ++k) columns[static_cast<std::size_t>(k - 1)] = k;
    std::vector<int> survivors(static_cast<std::size_t>(M.m()));
    for (int j = 1; j <= M.m(); ++j) survivors[static_cast<std::size_t>(j - 1)] = j;

    ReductionTrace trace{l, i, {}, M, {}};
    for (int k : steps_order) {
        const auto it = std::ranges::find(columns, k);
        const int position = static_cast<int>(it - columns.begin()) + 1;
        const bool value = entry(source, k);

        std::vector<int> next;
        for (std::size_t s = 0; s < survivors.size(); ++s) {
            if (entry(current.rows()[s], position) == value) next.push_back(survivors[s]);
        }
        // The source row always matches its own value, so the reduction is defined.
        current = *reduce(current, position, value);
        survivors = std::move(next);
        columns.erase(it);
        trace.steps.push_back({k, value, current.m()});
    }
    trace.terminal = std::move(current);
    trace.surviving_rows = std::move(survivors);
    return trace;
}

} // namespace heavycol
