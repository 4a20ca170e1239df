#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "heavycol/matrix.hpp"

namespace heavycol {

enum class Algorithm { A1, A2 };

constexpr std::string_view to_string(Algorithm a) noexcept { return a == Algorithm::A1 ? "a1" : "a2"; }

/// Which return statement of the pseudocode produced a verdict.
enum class WitnessTag { N1Base, M1Base, KeyCondition, NoHeavyChild, ChildFalse, ExhaustedTrue };

constexpr std::string_view to_string(WitnessTag t) noexcept {
    switch (t) {
    case WitnessTag::N1Base: return "N1_BASE";
    case WitnessTag::M1Base: return "M1_BASE";
    case WitnessTag::KeyCondition: return "KEY_CONDITION";
    case WitnessTag::NoHeavyChild: return "NOHEAVY_CHILD";
    case WitnessTag::ChildFalse: return "CHILD_FALSE";
    case WitnessTag::ExhaustedTrue: return "EXHAUSTED_TRUE";
    }
    return "?";
}

struct Witness {
    WitnessTag tag;
    std::optional<int> column;
    bool operator==(const Witness&) const = default;
};

/// Pseudocode line number of the return statement behind `tag`.
constexpr int pseudocode_line(Algorithm algo, WitnessTag tag, bool value) noexcept {
    if (algo == Algorithm::A1) {
        switch (tag) {
        case WitnessTag::N1Base: return value ? 3 : 5;
        case WitnessTag::NoHeavyChild: return 11;
        case WitnessTag::ChildFalse: return 15;
        case WitnessTag::ExhaustedTrue: return 18;
        default: return 0;
        }
    }
    switch (tag) {
    case WitnessTag::M1Base: return 1;
    case WitnessTag::N1Base: return value ? 5 : 7;
    case WitnessTag::KeyCondition: return 14;
    case WitnessTag::NoHeavyChild: return 21;
    case WitnessTag::ChildFalse: return 28;
    case WitnessTag::ExhaustedTrue: return 32;
    }
    return 0;
}

struct RecursionStats {
    std::uint64_t calls = 0;
    int max_depth = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t elapsed_ns = 0;
};

struct Verdict {
    bool value = false;
    Witness witness{WitnessTag::ExhaustedTrue, std::nullopt};
    RecursionStats stats;
};

/// Processing order of A1's column loop. Shuffled orders draw a fresh
/// permutation of 1..n' at every recursion level from (seed, n').
struct ColumnOrder {
    std::optional<std::uint64_t> shuffle_seed;

    static ColumnOrder ascending() { return {}; }
    static ColumnOrder shuffled(std::uint64_t seed) { return {seed}; }
    bool is_ascending() const noexcept { return !shuffle_seed.has_value(); }
};

struct AlgoConfig {
    ColumnOrder column_order_a1 = ColumnOrder::ascending();
    bool memoize = false;
};

/// Fired every time A2 returns through the key condition, at any depth.
struct KeyConditionEvent {
    std::span<const Row> rows;
    int n;
    int column;
    int depth;
};

struct RunOptions {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::function<void(const KeyConditionEvent&)> on_key_condition;
};

namespace detail {

struct KeyHash {
    std::size_t operator()(const std::vector<Row>& key) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Row r : key) {
            h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::vector<int> level_order(const ColumnOrder& order, int n) {
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 1);
    if (order.shuffle_seed) {
        const std::uint64_t seed = *order.shuffle_seed;
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(n)};
        std::mt19937_64 rng(seq);
        std::ranges::shuffle(cols, rng);
    }
    return cols;
}

inline void split(std::span<const Row> rows, int column, std::vector<Row>& zeros, std::vector<Row>& ones) {
    zeros.clear();
    ones.clear();
    for (Row r : rows) {
        (entry(r, column) ? ones : zeros).push_back(drop_column(r, column));
    }
}

class Recursion {
public:
    Recursion(Algorithm algo, const AlgoConfig& config, const RunOptions& options)
        : algo_(algo), config_(config), options_(options), orders_(kMaxColumns) {
        if (algo == Algorithm::A2 && !config.column_order_a1.is_ascending()) {
            throw Error(ErrorKind::InvalidConfig, "a2 processes columns in the fixed order 1..n; --order applies to a1 only");
        }
    }

    Verdict run(const BinaryMatrix& M) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        v.value = algo_ == Algorithm::A1 ? a1(M.rows(), M.n(), 0, &v.witness) : a2(M.rows(), M.n(), 0, &v.witness);
        v.stats = stats_;
        v.stats.elapsed_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
        return v;
    }

private:
    void enter(int depth) {
        ++stats_.calls;
        stats_.max_depth = std::max(stats_.max_depth, depth);
        if (options_.deadline && (stats_.calls & 1023u) == 0 && std::chrono::steady_clock::now() > *options_.deadline) {
            throw Error(ErrorKind::Timeout, "run exceeded its wall-clock budget");
        }
    }

    const std::vector<int>& order_for(int n) {
        auto& slot = orders_[static_cast<std::size_t>(n - 1)];
        if (slot.empty()) slot = level_order(config_.column_order_a1, n);
        return slot;
    }

    std::vector<Row> key_for(std::span<const Row> rows, int n) const {
        std::vector<Row> key;
        key.reserve(rows.size() + 3);
        key.push_back(algo_ == Algorithm::A1 ? 1 : 2);
        key.push_back(static_cast<Row>(n));
        key.push_back(config_.column_order_a1.shuffle_seed ? *config_.column_order_a1.shuffle_seed + 1 : 0);
        const auto offset = key.size();
        key.insert(key.end(), rows.begin(), rows.end());
        std::sort(key.begin() + static_cast<std::ptrdiff_t>(offset), key.end());
        return key;
    }

    template <class Body>
    bool memoized(std::span<const Row> rows, int n, Body&& body) {
        if (!config_.memoize || n < 2) return body();
        auto key = key_for(rows, n);
        if (auto it = cache_.find(key); it != cache_.end()) {
            ++stats_.cache_hits;
            return it->second;
        }
        const bool value = body();
        cache_.emplace(std::move(key), value);
        return value;
    }

    static bool base_case(std::span<const Row> rows, Witness* w) {
        const bool value = heavy_weight(count_ones(rows, 1), static_cast<int>(rows.size()));
        if (w) *w = {WitnessTag::N1Base, 1};
        return value;
    }

    bool a1(std::span<const Row> rows, int n, int depth, Witness* w) {
        enter(depth);
        if (n == 1) return base_case(rows, w);
        return memoized(rows, n, [&] {
            std::vector<Row> zeros, ones;
            for (int k : order_for(n)) {
                split(rows, k, zeros, ones);
                for (const auto* K : {&zeros, &ones}) {
                    if (!K->empty() && !has_heavy_column(*K, n - 1)) {
                        if (w) *w = {WitnessTag::NoHeavyChild, k};
                        return false;
                    }
                }
                for (const auto* K : {&zeros, &ones}) {
                    if (!K->empty() && !a1(*K, n - 1, depth + 1, nullptr)) {
                        if (w) *w = {WitnessTag::ChildFalse, k};
                        return false;
                    }
                }
            }
            if (w) *w = {WitnessTag::ExhaustedTrue, std::nullopt};
            return true;
        });
    }

    bool a2(std::span<const Row> rows, int n, int depth, Witness* w) {
        enter(depth);
        const auto m = rows.size();
        if (m == 1 && n > 1) {
            if (w) *w = {WitnessTag::M1Base, std::nullopt};
            return true;
        }
        if (n == 1) return base_case(rows, w);
        return memoized(rows, n, [&] {
            std::vector<Row> zeros, ones;
            for (int k = 1; k <= n; ++k) {
                split(rows, k, zeros, ones);
                if (zeros.size() == 1) {
                    if (options_.on_key_condition) options_.on_key_condition({rows, n, k, depth});
                    if (w) *w = {WitnessTag::KeyCondition, k};
                    return true;
                }
                for (const auto* K : {&zeros, &ones}) {
                    if (!K->empty() && !has_heavy_column(*K, n - 1)) {
                        if (w) *w = {WitnessTag::NoHeavyChild, k};
                        return false;
                    }
                }
                for (const auto* K : {&zeros, &ones}) {
                    if (!K->empty() && !a2(*K, n - 1, depth + 1, nullptr)) {
                        if (w) *w = {WitnessTag::ChildFalse, k};
                        return false;
                    }
                }
            }
            if (w) *w = {WitnessTag::ExhaustedTrue, std::nullopt};
            return true;
        });
    }

    Algorithm algo_;
    AlgoConfig config_;
    const RunOptions& options_;
    RecursionStats stats_;
    std::vector<std::vector<int>> orders_;
    std::unordered_map<std::vector<Row>, bool, KeyHash> cache_;
};

} // namespace detail

/// Algorithm 1. Total on every valid matrix; duplicate rows are allowed.
inline Verdict run_a1(const BinaryMatrix& M, const AlgoConfig& config = {}, const RunOptions& options = {}) {
    return detail::Recursion(Algorithm::A1, config, options).run(M);
}

/// Algorithm 2, columns always visited 1..n.
inline Verdict run_a2(const BinaryMatrix& M, bool memoize = false, const RunOptions& options = {}) {
    AlgoConfig config;
    config.memoize = memoize;
    return detail::Recursion(Algorithm::A2, config, options).run(M);
}

/// Throws InvalidConfig for a2 with a shuffled order.
inline Verdict run_algorithm(Algorithm algo, const BinaryMatrix& M, const AlgoConfig& config = {},
                             const RunOptions& options = {}) {
    return detail::Recursion(algo, config, options).run(M);
}

/// Same verdict value as the plain run; a private cache keyed on
/// (algorithm, n, sorted rows, order class) prunes repeated submatrices.
inline Verdict run_memoized(Algorithm algo, const BinaryMatrix& M, AlgoConfig config = {},
                            const RunOptions& options = {}) {
    config.memoize = true;
    return run_algorithm(algo, M, config, options);
}

} // namespace heavycol
