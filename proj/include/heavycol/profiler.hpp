#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heavycol/algorithms.hpp"
#include "heavycol/matrix.hpp"
#include "heavycol/verification.hpp"

namespace heavycol {

enum class FamilyKind { FullCube, RandomHalf, WorstFound };

struct Family {
    FamilyKind kind = FamilyKind::FullCube;
    std::uint64_t seed = 0; // random_half only

    std::string name() const {
        switch (kind) {
        case FamilyKind::FullCube: return "full_cube";
        case FamilyKind::RandomHalf: return "random_half:" + std::to_string(seed);
        case FamilyKind::WorstFound: return "worst_found";
        }
        return "?";
    }

    static Family parse(const std::string& text) {
        if (text == "full_cube") return {FamilyKind::FullCube, 0};
        if (text == "worst_found") return {FamilyKind::WorstFound, 0};
        if (text.rfind("random_half:", 0) == 0) {
            try {
                return {FamilyKind::RandomHalf, std::stoull(text.substr(12))};
            } catch (const std::exception&) {
            }
        }
        throw Error(ErrorKind::InvalidConfig, "unknown family '" + text + "' (full_cube | random_half:SEED | worst_found)");
    }
};

struct GrowthRow {
    int n = 0;
    std::string family;
    int m = 0;
    Algorithm algo = Algorithm::A1;
    bool memoized = false;
    std::optional<std::uint64_t> calls; // empty: timed out
    std::uint64_t cache_hits = 0;
    int max_depth = 0;
    std::uint64_t elapsed_ns = 0;

    std::string variant() const { return memoized ? "memo" : "plain"; }
    std::string key() const {
        return std::to_string(n) + "," + family + "," + std::to_string(m) + "," + std::string(to_string(algo)) + "," + variant();
    }
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
};

inline constexpr const char* kGrowthCsvHeader = "n,family,m,algo,variant,calls,cache_hits,max_depth,elapsed_ns";

inline std::string to_csv(const GrowthTable& t) {
    std::ostringstream out;
    out << kGrowthCsvHeader << '\n';
    for (const auto& r : t.rows) {
        out << r.key() << ',' << (r.calls ? std::to_string(*r.calls) : std::string("timeout")) << ',' << r.cache_hits
            << ',' << r.max_depth << ',' << r.elapsed_ns << '\n';
    }
    return out.str();
}

inline GrowthTable parse_growth_csv(std::istream& in) {
    GrowthTable t;
    std::string line;
    if (!std::getline(in, line) || line != kGrowthCsvHeader) {
        throw Error(ErrorKind::InvalidSpec, "growth CSV must start with the header '" + std::string(kGrowthCsvHeader) + "'");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 9) throw Error(ErrorKind::InvalidSpec, "growth CSV row needs 9 fields: " + line);
        GrowthRow r;
        try {
            r.n = std::stoi(f[0]);
            r.family = f[1];
            r.m = std::stoi(f[2]);
            r.algo = f[3] == "a1" ? Algorithm::A1 : Algorithm::A2;
            r.memoized = f[4] == "memo";
            if (f[5] != "timeout") r.calls = std::stoull(f[5]);
            r.cache_hits = std::stoull(f[6]);
            r.max_depth = std::stoi(f[7]);
            r.elapsed_ns = std::stoull(f[8]);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidSpec, "malformed growth CSV row: " + line);
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

inline nlohmann::json to_json(const GrowthTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        rows.push_back({
            {"n", r.n},
            {"family", r.family},
            {"m", r.m},
            {"algo", std::string(to_string(r.algo))},
            {"variant", r.variant()},
            {"calls", r.calls ? nlohmann::json(*r.calls) : nlohmann::json(nullptr)},
            {"timed_out", !r.calls.has_value()},
            {"cache_hits", r.cache_hits},
            {"max_depth", r.max_depth},
            {"elapsed_ns", r.elapsed_ns},
        });
    }
    return nlohmann::json{{"rows", rows}};
}

struct ProfileOptions {
    std::chrono::milliseconds timeout{10'000};
    int worst_samples = 2000; // random search size for worst_found at n = 5, 6
};

/// Matrix with the most plain calls for `algo` among n-column distinct-row
/// matrices: exhaustive for n <= 4, seeded sampling above.
inline BinaryMatrix find_worst(Algorithm algo, int n, int samples = 2000, std::uint64_t seed = 0x5eed) {
    UniverseSpec spec;
    spec.n = n;
    if (n > UniverseSpec::kMaxExhaustiveN) {
        spec.mode = ScanMode::Random;
        spec.sample_count = static_cast<std::uint64_t>(samples);
        spec.seed = seed;
    }
    spec.validate();
    std::optional<BinaryMatrix> best;
    std::uint64_t best_calls = 0;
    for (std::uint64_t i = 0; i < spec.index_count(); ++i) {
        auto M = universe_member(spec, i);
        if (!M) continue;
        const auto calls = run_algorithm(algo, *M).stats.calls;
        if (!best || calls > best_calls) {
            best = std::move(M);
            best_calls = calls;
        }
    }
    return *best;
}

namespace detail {

inline BinaryMatrix random_half(int n, std::uint64_t seed) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(n));
    std::bernoulli_distribution coin(0.5);
    std::vector<Row> rows;
    while (rows.empty()) {
        for (Row r = 0; r < (Row{1} << n); ++r) {
            if (coin(rng)) rows.push_back(r);
        }
    }
    return BinaryMatrix(std::move(rows), n);
}

inline BinaryMatrix full_cube(int n) {
    std::vector<Row> rows(std::size_t{1} << n);
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
    return BinaryMatrix(std::move(rows), n);
}

inline GrowthRow profile_one(const BinaryMatrix& M, const std::string& family, Algorithm algo, bool memo,
                             std::chrono::milliseconds timeout) {
    GrowthRow row;
    row.n = M.n();
    row.family = family;
    row.m = M.m();
    row.algo = algo;
    row.memoized = memo;
    AlgoConfig config;
    config.memoize = memo;
    RunOptions options;
    const auto start = std::chrono::steady_clock::now();
    options.deadline = start + timeout;
    try {
        const Verdict v = run_algorithm(algo, M, config, options);
        row.calls = v.stats.calls;
        row.cache_hits = v.stats.cache_hits;
        row.max_depth = v.stats.max_depth;
        row.elapsed_ns = v.stats.elapsed_ns;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Timeout) throw;
        row.elapsed_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
    }
    return row;
}

} // namespace detail

/// Call-count growth of both algorithms, plain and memoized, over a family.
/// Timed-out runs stay in the table with empty calls.
inline GrowthTable profile_family(const Family& family, int n_min, int n_max, const ProfileOptions& options = {}) {
    const int limit = family.kind == FamilyKind::FullCube ? 10 : family.kind == FamilyKind::WorstFound ? UniverseSpec::kMaxN : 16;
    if (n_min < 1 || n_max < n_min || n_max > limit) {
        throw Error(ErrorKind::InvalidSpec, family.name() + " supports n in 1.." + std::to_string(limit));
    }
    GrowthTable table;
    for (int n = n_min; n <= n_max; ++n) {
        for (Algorithm algo : {Algorithm::A1, Algorithm::A2}) {
            BinaryMatrix M = family.kind == FamilyKind::FullCube     ? detail::full_cube(n)
                             : family.kind == FamilyKind::RandomHalf ? detail::random_half(n, family.seed)
                                                                     : find_worst(algo, n, options.worst_samples);
            for (bool memo : {false, true}) {
                table.rows.push_back(detail::profile_one(M, family.name(), algo, memo, options.timeout));
            }
        }
    }
    return table;
}

struct SnapshotDiff {
    std::vector<std::string> behavioral;    // call counts changed or rows missing
    std::vector<std::string> informational; // elapsed-time drift only

    bool regressed() const noexcept { return !behavioral.empty(); }
};

/// Compares call counts exactly; timing differences beyond a factor of two
/// are noted but never count as regressions.
inline SnapshotDiff snapshot_compare(const GrowthTable& current, const GrowthTable& baseline) {
    if (baseline.rows.empty()) throw Error(ErrorKind::MissingBaseline, "baseline table has no rows");
    std::map<std::string, const GrowthRow*> base;
    for (const auto& r : baseline.rows) base[r.key()] = &r;
    auto show = [](const std::optional<std::uint64_t>& c) { return c ? std::to_string(*c) : std::string("timeout"); };

    SnapshotDiff diff;
    for (const auto& r : current.rows) {
        const auto it = base.find(r.key());
        if (it == base.end()) {
            diff.behavioral.push_back(r.key() + ": not in baseline");
            continue;
        }
        const GrowthRow& b = *it->second;
        if (r.calls != b.calls) {
            diff.behavioral.push_back(r.key() + ": calls " + show(b.calls) + " -> " + show(r.calls));
        } else if (b.elapsed_ns > 0 && r.elapsed_ns > 0 &&
                   (r.elapsed_ns > 2 * b.elapsed_ns || 2 * r.elapsed_ns < b.elapsed_ns)) {
            diff.informational.push_back(r.key() + ": elapsed_ns " + std::to_string(b.elapsed_ns) + " -> " +
                                         std::to_string(r.elapsed_ns));
        }
        base.erase(it);
    }
    for (const auto& [key, row] : base) diff.behavioral.push_back(key + ": missing from current run");
    return diff;
}

inline nlohmann::json to_json(const SnapshotDiff& d) {
    return nlohmann::json{{"behavioral", d.behavioral}, {"informational", d.informational}, {"regressed", d.regressed()}};
}

/// FNV-1a; stable across toolchains, unlike std::hash.
inline std::uint64_t config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::filesystem::path baseline_path(const std::filesystem::path& dir, const Family& family, int n_min, int n_max) {
    const std::string config = "family=" + family.name() + ";n=" + std::to_string(n_min) + ".." + std::to_string(n_max);
    std::ostringstream name;
    name << "growth-" << std::hex << config_hash(config) << ".csv";
    return dir / name.str();
}

inline void save_table(const std::filesystem::path& path, const GrowthTable& t) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << to_csv(t);
}

inline GrowthTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MissingBaseline, "no baseline at " + path.string());
    return parse_growth_csv(in);
}

} // namespace heavycol
