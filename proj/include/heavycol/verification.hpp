#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heavycol/algorithms.hpp"
#include "heavycol/matrix.hpp"
#include "heavycol/structure.hpp"

namespace heavycol {

enum class ScanMode { Exhaustive, Random };

/// A family of distinct-row matrices: the nonempty subsets of {0,1}^n
/// (rows in increasing encoding order) within a row-count range, optionally
/// filtered by column constraints.
struct UniverseSpec {
    int n = 1;
    int m_min = 1;
    std::optional<int> m_max; // defaults to 2^n
    bool require_distinct_columns = false;
    bool forbid_all_zero_column = false;
    ScanMode mode = ScanMode::Exhaustive;
    std::uint64_t sample_count = 0;
    std::optional<std::uint64_t> seed;

    static constexpr int kMaxExhaustiveN = 4;
    static constexpr int kMaxN = 6;

    int cube_size() const { return 1 << n; }
    int effective_m_max() const { return m_max.value_or(cube_size()); }

    void validate() const {
        if (n < 1 || n > kMaxN) throw Error(ErrorKind::InvalidSpec, "n must lie in 1..6");
        if (mode == ScanMode::Exhaustive && n > kMaxExhaustiveN) {
            throw Error(ErrorKind::UniverseTooLarge, "exhaustive universes need n <= 4 (2^(2^n) - 1 <= 2^20)");
        }
        if (m_min < 1 || effective_m_max() < m_min || effective_m_max() > cube_size()) {
            throw Error(ErrorKind::InvalidSpec, "row range must satisfy 1 <= m_min <= m_max <= 2^n");
        }
        if (mode == ScanMode::Random && !seed) throw Error(ErrorKind::InvalidSpec, "random mode requires a seed");
    }

    bool admits(const BinaryMatrix& M) const {
        if (M.m() < m_min || M.m() > effective_m_max()) return false;
        if (!require_distinct_columns && !forbid_all_zero_column) return true;
        const MatrixProperties p = matrix_properties(M);
        if (require_distinct_columns && !p.distinct_columns) return false;
        if (forbid_all_zero_column && p.has_all_zero_column) return false;
        return true;
    }

    /// Size of the index space scanned: subset masks or sample numbers.
    std::uint64_t index_count() const {
        if (mode == ScanMode::Random) return sample_count;
        return (std::uint64_t{1} << cube_size()) - 1;
    }
};

inline nlohmann::json to_json(const UniverseSpec& s) {
    nlohmann::json j{
        {"n", s.n},
        {"m_min", s.m_min},
        {"m_max", s.effective_m_max()},
        {"require_distinct_columns", s.require_distinct_columns},
        {"forbid_all_zero_column", s.forbid_all_zero_column},
        {"mode", s.mode == ScanMode::Exhaustive ? "exhaustive" : "random"},
    };
    if (s.mode == ScanMode::Random) {
        j["samples"] = s.sample_count;
        j["seed"] = *s.seed;
    }
    return j;
}

inline BinaryMatrix matrix_from_subset(std::uint64_t mask, int n) {
    std::vector<Row> rows;
    for (Row r = 0; mask != 0; ++r, mask >>= 1) {
        if (mask & 1u) rows.push_back(r);
    }
    return BinaryMatrix(std::move(rows), n);
}

namespace detail {

inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform member of the unconstrained family: m weighted by C(2^n, m), then
/// a uniform m-subset of the cube.
inline BinaryMatrix draw_subset(const UniverseSpec& spec, std::mt19937_64& rng) {
    const int cube = spec.cube_size();
    std::vector<double> weights;
    for (int m = spec.m_min; m <= spec.effective_m_max(); ++m) {
        weights.push_back(std::exp(std::lgamma(cube + 1.0) - std::lgamma(m + 1.0) - std::lgamma(cube - m + 1.0)));
    }
    std::discrete_distribution<int> pick_m(weights.begin(), weights.end());
    const int m = spec.m_min + pick_m(rng);
    std::vector<Row> cube_rows(static_cast<std::size_t>(cube));
    std::iota(cube_rows.begin(), cube_rows.end(), Row{0});
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, cube - 1);
        std::swap(cube_rows[static_cast<std::size_t>(i)], cube_rows[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<Row> rows(cube_rows.begin(), cube_rows.begin() + m);
    std::ranges::sort(rows);
    return BinaryMatrix(std::move(rows), spec.n);
}

} // namespace detail

/// Member at `index` of the scan's index space, or empty when the subset is
/// filtered out (exhaustive mode only; random mode rejects and redraws).
inline std::optional<BinaryMatrix> universe_member(const UniverseSpec& spec, std::uint64_t index) {
    if (spec.mode == ScanMode::Exhaustive) {
        const auto mask = index + 1;
        const int m = std::popcount(mask);
        if (m < spec.m_min || m > spec.effective_m_max()) return std::nullopt;
        BinaryMatrix M = matrix_from_subset(mask, spec.n);
        if (!spec.admits(M)) return std::nullopt;
        return M;
    }
    auto rng = detail::stream_for(*spec.seed, index);
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        BinaryMatrix M = detail::draw_subset(spec, rng);
        if (spec.admits(M)) return M;
    }
    throw Error(ErrorKind::InvalidSpec, "constraints reject every sampled matrix");
}

inline std::vector<BinaryMatrix> enumerate_universe(const UniverseSpec& spec) {
    spec.validate();
    std::vector<BinaryMatrix> out;
    for (std::uint64_t i = 0; i < spec.index_count(); ++i) {
        if (auto M = universe_member(spec, i)) out.push_back(std::move(*M));
    }
    return out;
}

struct Finding {
    std::string matrix;
    std::string property;
    std::uint64_t index = 0;
};

struct ScanReport {
    UniverseSpec universe;
    std::uint64_t tested = 0;
    std::map<std::string, std::uint64_t> tallies;
    std::uint64_t violation_count = 0;
    std::vector<Finding> violations; // first `cap` in universe order
    std::vector<Finding> witnesses;  // exploratory collections, `cap` per property

    bool clean() const noexcept { return violation_count == 0; }
    std::uint64_t tally(const std::string& name) const {
        const auto it = tallies.find(name);
        return it == tallies.end() ? 0 : it->second;
    }
    bool has_witness(const std::string& property, const std::string& matrix) const {
        return std::ranges::any_of(witnesses, [&](const Finding& f) { return f.property == property && f.matrix == matrix; });
    }
};

inline nlohmann::json to_json(const ScanReport& r) {
    auto findings = [](const std::vector<Finding>& fs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& f : fs) a.push_back({{"matrix", f.matrix}, {"property", f.property}});
        return a;
    };
    return nlohmann::json{
        {"spec", to_json(r.universe)},
        {"tested", r.tested},
        {"tallies", r.tallies},
        {"violation_count", r.violation_count},
        {"violations", findings(r.violations)},
        {"witnesses", findings(r.witnesses)},
    };
}

struct ScanOptions {
    unsigned workers = 1;
    std::size_t witness_cap = 20;
    std::uint64_t order_seed = 0x5eed; // shuffled orders inside claim/order scans
};

/// Per-worker accumulator handed to the per-matrix check.
class ScanSink {
public:
    explicit ScanSink(std::size_t cap) : cap_(cap) {}

    void tally(const std::string& name, std::uint64_t by = 1) { report_.tallies[name] += by; }

    void violate(const std::string& property, const BinaryMatrix& M) {
        ++report_.violation_count;
        tally("violation_" + property);
        if (report_.violations.size() < cap_) report_.violations.push_back({to_text(M), property, index_});
    }

    void collect(const std::string& property, const BinaryMatrix& M) {
        tally("collected_" + property);
        if (collected_[property]++ < cap_) report_.witnesses.push_back({to_text(M), property, index_});
    }

    std::uint64_t index() const noexcept { return index_; }

private:
    template <class Fn>
    friend ScanReport run_scan(const UniverseSpec&, const ScanOptions&, Fn&&);

    std::size_t cap_;
    std::uint64_t index_ = 0;
    ScanReport report_;
    std::map<std::string, std::size_t> collected_;
};

namespace detail {

inline void merge_findings(std::vector<Finding>& all, std::size_t cap, bool per_property) {
    std::ranges::stable_sort(all, [](const Finding& a, const Finding& b) {
        return a.index != b.index ? a.index < b.index : a.property < b.property;
    });
    if (!per_property) {
        if (all.size() > cap) all.resize(cap);
        return;
    }
    std::map<std::string, std::size_t> seen;
    std::vector<Finding> kept;
    for (auto& f : all) {
        if (seen[f.property]++ < cap) kept.push_back(std::move(f));
    }
    all = std::move(kept);
}

} // namespace detail

/// Runs `check(M, sink)` over every universe member. The index space is cut
/// into contiguous ranges, one per worker; the merged report is identical
/// for any worker count.
template <class Fn>
ScanReport run_scan(const UniverseSpec& spec, const ScanOptions& options, Fn&& check) {
    spec.validate();
    const std::uint64_t total = spec.index_count();
    const std::uint64_t workers = std::clamp<std::uint64_t>(options.workers, 1, std::max<std::uint64_t>(total, 1));
    std::vector<ScanSink> sinks(workers, ScanSink(options.witness_cap));
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](std::uint64_t w) {
        try {
            const std::uint64_t begin = total * w / workers;
            const std::uint64_t end = total * (w + 1) / workers;
            ScanSink& sink = sinks[w];
            for (std::uint64_t i = begin; i < end; ++i) {
                auto M = universe_member(spec, i);
                if (!M) continue;
                sink.index_ = i;
                ++sink.report_.tested;
                check(*M, sink);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (std::uint64_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ScanReport merged;
    merged.universe = spec;
    for (auto& s : sinks) {
        merged.tested += s.report_.tested;
        merged.violation_count += s.report_.violation_count;
        for (const auto& [k, v] : s.report_.tallies) merged.tallies[k] += v;
        std::ranges::move(s.report_.violations, std::back_inserter(merged.violations));
        std::ranges::move(s.report_.witnesses, std::back_inserter(merged.witnesses));
    }
    detail::merge_findings(merged.violations, options.witness_cap, false);
    detail::merge_findings(merged.witnesses, options.witness_cap, true);
    return merged;
}

/// Rows with the columns rearranged: new column c takes old column perm[c-1].
inline BinaryMatrix permute_columns(const BinaryMatrix& M, const std::vector<int>& perm) {
    std::vector<Row> rows;
    for (Row r : M.rows()) {
        Row out = 0;
        for (std::size_t c = 0; c < perm.size(); ++c) {
            if (entry(r, perm[c])) out |= Row{1} << c;
        }
        rows.push_back(out);
    }
    return BinaryMatrix(std::move(rows), M.n());
}

inline ScanReport check_theorem1(const UniverseSpec& spec, const ScanOptions& options = {}) {
    if (spec.require_distinct_columns || spec.forbid_all_zero_column) {
        throw Error(ErrorKind::InvalidSpec, "theorem1 scans take unconstrained distinct-row universes");
    }
    return run_scan(spec, options, [](const BinaryMatrix& M, ScanSink& sink) {
        const bool value = run_a1(M).value;
        const bool heavy = !heavy_columns(M).empty();
        sink.tally(value ? "a1_true" : "a1_false");
        sink.tally(heavy ? "has_heavy" : "no_heavy");
        if (value && !heavy) sink.violate("theorem1", M);
        if (!value && !heavy) sink.tally("no_heavy_a1_false");
        if (!value && heavy) sink.tally("converse_gap");
    });
}

namespace detail {

/// Every key-condition return with m >= 2 must sit on a heavy column.
inline void audit_key_condition(const BinaryMatrix& M, ScanSink& sink, bool& value) {
    std::uint64_t hits = 0, unsound = 0;
    RunOptions options;
    options.on_key_condition = [&](const KeyConditionEvent& e) {
        const int m = static_cast<int>(e.rows.size());
        if (m < 2) return;
        ++hits;
        if (!heavy_weight(count_ones(e.rows, e.column), m)) ++unsound;
    };
    const Verdict v = run_a2(M, false, options);
    value = v.value;
    sink.tally("key_condition_hits", hits);
    if (v.witness.tag == WitnessTag::KeyCondition) sink.tally("key_condition_top");
    if (unsound > 0) sink.violate("key_condition_not_heavy", M);
}

} // namespace detail

inline ScanReport check_theorem2(const UniverseSpec& spec, const ScanOptions& options = {}) {
    if (!spec.require_distinct_columns || !spec.forbid_all_zero_column) {
        throw Error(ErrorKind::InvalidSpec, "theorem2 scans need distinct columns and no all-zero column");
    }
    return run_scan(spec, options, [](const BinaryMatrix& M, ScanSink& sink) {
        bool value = false;
        detail::audit_key_condition(M, sink, value);
        const bool heavy = !heavy_columns(M).empty();
        sink.tally(value ? "a2_true" : "a2_false");
        sink.tally(heavy ? "has_heavy" : "no_heavy");
        if (value && !heavy) sink.violate("theorem2", M);
        if (!value && !heavy) sink.tally("no_heavy_a2_false");
        if (!value && heavy) sink.tally("converse_gap");
    });
}

/// Key-condition soundness on any universe, constrained or not.
inline ScanReport check_key_condition(const UniverseSpec& spec, const ScanOptions& options = {}) {
    return run_scan(spec, options, [](const BinaryMatrix& M, ScanSink& sink) {
        bool value = false;
        detail::audit_key_condition(M, sink, value);
        sink.tally(value ? "a2_true" : "a2_false");
    });
}

inline ScanReport check_lemma1(const UniverseSpec& spec, const ScanOptions& options = {}) {
    return run_scan(spec, options, [](const BinaryMatrix& M, ScanSink& sink) {
        const bool hypothesis = !find_unpaired(M).has_value();
        sink.tally(hypothesis ? "hypothesis_holds" : "hypothesis_fails");
        if (!hypothesis) return;
        for (int k = 1; k <= M.n(); ++k) {
            const int ones = column_weight(M, k);
            if (M.m() - ones > ones) {
                sink.violate("lemma1", M);
                return;
            }
        }
    });
}

inline ScanReport check_reduction_claim(const UniverseSpec& spec, const ScanOptions& options = {}) {
    const std::uint64_t seed = options.order_seed;
    return run_scan(spec, options, [seed](const BinaryMatrix& M, ScanSink& sink) {
        if (!heavy_columns(M).empty()) return;
        sink.tally("no_heavy");
        const auto unpaired = find_unpaired(M);
        if (!unpaired) {
            sink.violate("unpaired_missing", M);
            return;
        }
        sink.tally("unpaired_found");

        std::vector<int> shuffled;
        for (int k = 1; k <= M.n(); ++k) {
            if (k != unpaired->column) shuffled.push_back(k);
        }
        auto rng = detail::stream_for(seed, sink.index());
        std::ranges::shuffle(shuffled, rng);

        const auto consistent = consistent_rows(M, unpaired->row, unpaired->column);
        for (const auto& order : {std::optional<std::vector<int>>{}, std::optional<std::vector<int>>{shuffled}}) {
            const ReductionTrace trace = sequential_reduction(M, unpaired->row, unpaired->column, order);
            sink.tally("traces_checked");
            if (std::ranges::any_of(trace.terminal.rows(), [](Row r) { return r != 0; })) {
                sink.violate("nonzero_terminal", M);
                return;
            }
            if (trace.surviving_rows != consistent) {
                sink.violate("terminal_not_consistent", M);
                return;
            }
        }
    });
}

/// The fixed 1x2 all-zero matrix: A2 says True, yet no column is heavy,
/// because it has equal columns and all-zero columns.
inline ScanReport remark_counterexamples() {
    const BinaryMatrix M = parse_matrix("00");
    ScanReport r;
    r.universe.n = 2;
    r.universe.m_min = 1;
    r.universe.m_max = 1;
    r.tested = 1;

    auto expect = [&](bool ok, const std::string& name) {
        r.tallies[name] = ok ? 1 : 0;
        if (!ok) {
            ++r.violation_count;
            r.violations.push_back({to_text(M), "remark_" + name, 0});
        }
    };
    const Verdict v = run_a2(M);
    const MatrixProperties p = matrix_properties(M);
    expect(v.value && v.witness.tag == WitnessTag::M1Base, "a2_true_via_m1_base");
    expect(heavy_columns(M).empty(), "no_heavy");
    expect(!p.distinct_columns, "distinct_columns_false");
    expect(p.has_all_zero_column, "all_zero_column_true");

    UniverseSpec constrained = r.universe;
    constrained.require_distinct_columns = true;
    constrained.forbid_all_zero_column = true;
    const auto members = enumerate_universe(constrained);
    expect(std::ranges::none_of(members, [&](const BinaryMatrix& X) { return X == M; }), "excluded_from_theorem2_universe");

    if (r.violation_count == 0) r.witnesses.push_back({to_text(M), "remark_counterexample", 0});
    return r;
}

/// Matrices that have a heavy column while the algorithm answers False.
/// Purely exploratory: never produces violations.
inline ScanReport converse_scan(const UniverseSpec& spec, const ScanOptions& options = {}) {
    return run_scan(spec, options, [](const BinaryMatrix& M, ScanSink& sink) {
        if (heavy_columns(M).empty()) return;
        sink.tally("has_heavy");
        if (!run_a1(M).value) sink.collect("a1_converse_gap", M);
        const MatrixProperties p = matrix_properties(M);
        if (p.distinct_columns && !p.has_all_zero_column) {
            sink.tally("a2_eligible");
            if (!run_a2(M).value) sink.collect("a2_converse_gap", M);
        }
    });
}

namespace detail {

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace detail

/// A2 under column permutations of the input (collected, not judged) and A1
/// across processing orders (must agree; mismatches are violations).
/// Budget: all n! permutations for n <= 4, `sampled_budget` otherwise.
inline ScanReport order_sensitivity_scan(const UniverseSpec& spec, const ScanOptions& options = {},
                                         int sampled_budget = 24) {
    const std::uint64_t seed = options.order_seed;
    return run_scan(spec, options, [seed, sampled_budget](const BinaryMatrix& M, ScanSink& sink) {
        const int n = M.n();
        std::vector<std::vector<int>> perms;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        if (n <= 4) {
            do perms.push_back(perm);
            while (std::ranges::next_permutation(perm).found);
        } else {
            auto rng = detail::stream_for(seed, sink.index());
            perms.push_back(perm);
            for (int i = 1; i < sampled_budget; ++i) {
                std::ranges::shuffle(perm, rng);
                perms.push_back(perm);
            }
        }

        const bool a2_base = run_a2(M).value;
        bool a2_differs = false;
        for (const auto& p : perms) {
            if (run_a2(permute_columns(M, p)).value != a2_base) a2_differs = true;
        }
        sink.tally("a2_permutations_tried", perms.size());
        if (a2_differs) sink.collect("a2_order_sensitive", M);

        const bool a1_base = run_a1(M).value;
        for (std::uint64_t s = 0; s + 1 < perms.size(); ++s) {
            AlgoConfig config;
            config.column_order_a1 = ColumnOrder::shuffled(seed + s);
            if (run_a1(M, config).value != a1_base) {
                sink.violate("a1_order_dependent", M);
                break;
            }
        }
        sink.tally("a1_orders_tried", perms.size());
    });
}

} // namespace heavycol
