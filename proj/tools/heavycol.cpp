// heavycol: run the heavy-column certificate algorithms on matrix files,
// inspect conjugate structure, run verification scans and profile recursion.
//
// Exit codes: 0 success, 1 violations or regressions found, 2 usage/input error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "heavycol/heavycol.hpp"

namespace {

using namespace heavycol;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

BinaryMatrix read_input(const std::string& path) {
    if (path == "-") return parse_matrix(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return parse_matrix(in);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, "bad " + what + " '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
    return parts;
}

ColumnOrder parse_order(const std::string& text) {
    if (text == "ascending") return ColumnOrder::ascending();
    if (text.rfind("shuffle:", 0) == 0) return ColumnOrder::shuffled(parse_u64(text.substr(8), "shuffle seed"));
    throw Error(ErrorKind::InvalidConfig, "--order takes ascending or shuffle:SEED");
}

std::string join(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_preconditions(const MatrixProperties& p) {
    std::cout << "preconditions  distinct_rows=" << yes_no(p.distinct_rows)
              << " distinct_columns=" << yes_no(p.distinct_columns)
              << " all_zero_column=" << yes_no(p.has_all_zero_column) << '\n';
}

// ---- check / oracle -------------------------------------------------------

struct CheckArgs {
    std::string input;
    std::string algo = "a1";
    std::optional<std::string> order;
    bool memo = false;
    bool json = false;
};

int cmd_check(const CheckArgs& a) {
    const Algorithm algo = a.algo == "a2" ? Algorithm::A2 : Algorithm::A1;
    AlgoConfig config;
    if (a.order) {
        if (algo == Algorithm::A2) {
            throw Error(ErrorKind::InvalidConfig, "--order is not accepted for a2: it visits columns in the fixed order 1..n");
        }
        config.column_order_a1 = parse_order(*a.order);
    }
    config.memoize = a.memo;
    const BinaryMatrix M = read_input(a.input);
    const Verdict v = run_algorithm(algo, M, config);
    const json report = report_json(M, algo, &v);
    if (a.json) {
        std::cout << report.dump() << '\n';
        return kExitOk;
    }
    std::cout << "matrix         " << M.m() << " x " << M.n() << '\n'
              << "algorithm      " << to_string(algo) << (a.memo ? " (memoized)" : "") << '\n'
              << "verdict        " << (v.value ? "true" : "false") << '\n'
              << "witness        line " << report["witness"]["line"] << " " << to_string(v.witness.tag);
    if (v.witness.column) std::cout << " at column " << *v.witness.column;
    std::cout << '\n' << "heavy columns  " << join(heavy_columns(M)) << '\n';
    print_preconditions(matrix_properties(M));
    std::cout << "stats          calls=" << v.stats.calls << " max_depth=" << v.stats.max_depth
              << " cache_hits=" << v.stats.cache_hits << " elapsed_ns=" << v.stats.elapsed_ns << '\n';
    return kExitOk;
}

int cmd_oracle(const std::string& input, bool as_json) {
    const BinaryMatrix M = read_input(input);
    if (as_json) {
        std::cout << serialize_report(M, std::nullopt, nullptr) << '\n';
        return kExitOk;
    }
    const auto props = matrix_properties(M);
    std::cout << "matrix         " << M.m() << " x " << M.n() << '\n'
              << "heavy columns  " << join(heavy_columns(M)) << '\n'
              << "weights        " << join(props.column_weights) << '\n';
    print_preconditions(props);
    return kExitOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::optional<std::string> trace;
    std::optional<std::string> trace_order;
    bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const BinaryMatrix M = read_input(a.input);
    const auto props = matrix_properties(M);

    json pairs = json::array();
    for (int k = 1; k <= M.n(); ++k) {
        for (int i = 1; i <= M.m(); ++i) {
            if (M.at(i, k)) continue;
            const auto j = conjugate_of(M, i, k);
            pairs.push_back({{"row", i}, {"column", k}, {"conjugate", j ? json(*j) : json(nullptr)}});
        }
    }
    const auto unpaired = find_unpaired(M);

    std::optional<ReductionTrace> trace;
    if (a.trace) {
        const auto parts = split(*a.trace, ':');
        if (parts.size() != 2) throw Error(ErrorKind::InvalidConfig, "--trace takes ROW:COLUMN");
        const int row = static_cast<int>(parse_u64(parts[0], "trace row"));
        const int col = static_cast<int>(parse_u64(parts[1], "trace column"));
        std::optional<std::vector<int>> order;
        if (a.trace_order) {
            order.emplace();
            for (const auto& p : split(*a.trace_order, ',')) order->push_back(static_cast<int>(parse_u64(p, "trace order")));
        }
        trace = sequential_reduction(M, row, col, order);
    }

    if (a.json) {
        json j{
            {"m", M.m()},
            {"n", M.n()},
            {"preconditions",
             {{"distinct_rows", props.distinct_rows},
              {"distinct_columns", props.distinct_columns},
              {"all_zero_column", props.has_all_zero_column}}},
            {"column_weights", props.column_weights},
            {"heavy_columns", heavy_columns(M)},
            {"pairs", pairs},
            {"first_unpaired", unpaired ? json{{"row", unpaired->row}, {"column", unpaired->column}} : json(nullptr)},
            {"trace", nullptr},
        };
        if (trace) {
            json steps = json::array();
            for (const auto& s : trace->steps) {
                steps.push_back({{"column", s.column}, {"value", s.value ? 1 : 0}, {"survivors", s.survivors}});
            }
            j["trace"] = {{"row", trace->source_row},
                          {"preserved_column", trace->preserved_column},
                          {"steps", steps},
                          {"terminal", to_text(trace->terminal)},
                          {"surviving_rows", trace->surviving_rows}};
        }
        std::cout << j.dump() << '\n';
        return kExitOk;
    }

    std::cout << "matrix         " << M.m() << " x " << M.n() << '\n'
              << "weights        " << join(props.column_weights) << '\n'
              << "heavy columns  " << join(heavy_columns(M)) << '\n';
    print_preconditions(props);
    std::cout << "zero entries (row, column) -> conjugate row\n";
    for (const auto& p : pairs) {
        std::cout << "  (" << p["row"] << ", " << p["column"] << ") -> "
                  << (p["conjugate"].is_null() ? std::string("unpaired") : p["conjugate"].dump()) << '\n';
    }
    if (unpaired) {
        std::cout << "first unpaired row " << unpaired->row << " at column " << unpaired->column << '\n';
    } else {
        std::cout << "every zero entry has a conjugate\n";
    }
    if (trace) {
        std::cout << "sequential reduction of row " << trace->source_row << " preserving column "
                  << trace->preserved_column << '\n'
                  << "  column  value  survivors\n";
        for (const auto& s : trace->steps) {
            std::cout << "  " << std::setw(6) << s.column << "  " << std::setw(5) << (s.value ? 1 : 0) << "  "
                      << std::setw(9) << s.survivors << '\n';
        }
        std::cout << "  terminal column: ";
        for (Row r : trace->terminal.rows()) std::cout << (r & 1u);
        std::cout << "  (rows " << join(trace->surviving_rows) << ")\n";
    }
    return kExitOk;
}

// ---- verify / explore -----------------------------------------------------

struct ScanArgs {
    std::string target;
    int n = 2;
    std::optional<int> m_min;
    std::optional<int> m_max;
    std::string mode = "exhaustive";
    unsigned workers = 1;
    std::size_t witness_cap = 20;
    std::uint64_t seed = 0x5eed;
    bool distinct_columns = false;
    bool no_zero_column = false;
    bool json = false;
};

UniverseSpec universe_from(const ScanArgs& a) {
    UniverseSpec spec;
    spec.n = a.n;
    spec.m_min = a.m_min.value_or(1);
    spec.m_max = a.m_max;
    spec.require_distinct_columns = a.distinct_columns;
    spec.forbid_all_zero_column = a.no_zero_column;
    if (a.mode != "exhaustive") {
        const auto parts = split(a.mode, ':');
        if (parts.size() != 3 || parts[0] != "random") {
            throw Error(ErrorKind::InvalidConfig, "--mode takes exhaustive or random:COUNT:SEED");
        }
        spec.mode = ScanMode::Random;
        spec.sample_count = parse_u64(parts[1], "sample count");
        spec.seed = parse_u64(parts[2], "seed");
    }
    return spec;
}

void print_scan(const std::string& name, const ScanReport& r) {
    std::cout << name << "  n=" << r.universe.n << " m=" << r.universe.m_min << ".." << r.universe.effective_m_max()
              << " mode=" << (r.universe.mode == ScanMode::Exhaustive ? "exhaustive" : "random");
    if (r.universe.require_distinct_columns) std::cout << " distinct-columns";
    if (r.universe.forbid_all_zero_column) std::cout << " no-zero-column";
    std::cout << '\n' << "  " << std::left << std::setw(32) << "tested" << r.tested << '\n'
              << "  " << std::setw(32) << "violations" << r.violation_count << '\n';
    for (const auto& [k, v] : r.tallies) std::cout << "  " << std::setw(32) << k << v << '\n';
    std::cout << std::right;
    for (const auto& f : r.violations) std::cout << "  VIOLATION " << f.property << ": " << f.matrix << '\n';
    for (const auto& f : r.witnesses) std::cout << "  witness " << f.property << ": " << f.matrix << '\n';
}

ScanOptions scan_options(const ScanArgs& a) {
    ScanOptions o;
    o.workers = a.workers;
    o.witness_cap = a.witness_cap;
    o.order_seed = a.seed;
    return o;
}

int cmd_verify(const ScanArgs& a) {
    const ScanOptions options = scan_options(a);
    std::vector<std::pair<std::string, ScanReport>> reports;
    auto want = [&](const char* name) { return a.target == "all" || a.target == name; };
    if (want("theorem1")) {
        UniverseSpec spec = universe_from(a);
        spec.require_distinct_columns = spec.forbid_all_zero_column = false;
        reports.emplace_back("theorem1", check_theorem1(spec, options));
    }
    if (want("theorem2")) {
        UniverseSpec spec = universe_from(a);
        spec.require_distinct_columns = spec.forbid_all_zero_column = true;
        reports.emplace_back("theorem2", check_theorem2(spec, options));
    }
    if (want("lemma1")) reports.emplace_back("lemma1", check_lemma1(universe_from(a), options));
    if (want("claim")) reports.emplace_back("claim", check_reduction_claim(universe_from(a), options));
    if (want("remark")) reports.emplace_back("remark", remark_counterexamples());
    if (a.target == "keycond") reports.emplace_back("keycond", check_key_condition(universe_from(a), options));

    bool clean = true;
    for (const auto& [name, r] : reports) clean = clean && r.clean();
    if (a.json) {
        if (reports.size() == 1) {
            std::cout << to_json(reports.front().second).dump() << '\n';
        } else {
            json all = json::object();
            for (const auto& [name, r] : reports) all[name] = to_json(r);
            std::cout << json{{"reports", all}}.dump() << '\n';
        }
    } else {
        for (const auto& [name, r] : reports) print_scan(name, r);
    }
    return clean ? kExitOk : kExitViolations;
}

int cmd_explore(const ScanArgs& a) {
    const ScanOptions options = scan_options(a);
    const ScanReport r = a.target == "converse" ? converse_scan(universe_from(a), options)
                                                : order_sensitivity_scan(universe_from(a), options);
    if (a.json) {
        std::cout << to_json(r).dump() << '\n';
    } else {
        print_scan(a.target, r);
    }
    return r.clean() ? kExitOk : kExitViolations;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    std::string target;
    std::string family = "full_cube";
    int n_min = 1;
    int n_max = 4;
    int timeout_ms = 10'000;
    std::optional<std::string> baseline_dir;
    bool save = false;
    bool csv = false;
    bool json = false;
    std::string current_file;
    std::string baseline_file;
};

void print_diff(const SnapshotDiff& d, bool as_json) {
    if (as_json) {
        std::cout << to_json(d).dump() << '\n';
        return;
    }
    for (const auto& b : d.behavioral) std::cout << "BEHAVIORAL " << b << '\n';
    for (const auto& i : d.informational) std::cout << "timing     " << i << '\n';
    if (!d.regressed()) std::cout << "call counts match baseline\n";
}

int cmd_bench(const BenchArgs& a) {
    if (a.target == "compare") {
        const GrowthTable current = load_table(a.current_file);
        const GrowthTable baseline = load_table(a.baseline_file);
        const SnapshotDiff d = snapshot_compare(current, baseline);
        print_diff(d, a.json);
        return d.regressed() ? kExitViolations : kExitOk;
    }

    const Family family = Family::parse(a.family);
    ProfileOptions options;
    options.timeout = std::chrono::milliseconds(a.timeout_ms);
    const GrowthTable table = profile_family(family, a.n_min, a.n_max, options);

    std::optional<SnapshotDiff> diff;
    if (a.baseline_dir) {
        const auto path = baseline_path(*a.baseline_dir, family, a.n_min, a.n_max);
        if (a.save) {
            save_table(path, table);
            std::cerr << "saved baseline " << path.string() << '\n';
        } else {
            diff = snapshot_compare(table, load_table(path));
        }
    }

    if (a.json) {
        json j = to_json(table);
        if (diff) j["diff"] = to_json(*diff);
        std::cout << j.dump() << '\n';
    } else if (a.csv) {
        std::cout << to_csv(table);
    } else {
        std::cout << std::left << std::setw(4) << "n" << std::setw(18) << "family" << std::setw(7) << "m" << std::setw(5)
                  << "algo" << std::setw(7) << "var" << std::setw(12) << "calls" << std::setw(11) << "cache_hits"
                  << std::setw(6) << "depth" << "elapsed_ns\n";
        for (const auto& r : table.rows) {
            std::cout << std::setw(4) << r.n << std::setw(18) << r.family << std::setw(7) << r.m << std::setw(5)
                      << to_string(r.algo) << std::setw(7) << r.variant() << std::setw(12)
                      << (r.calls ? std::to_string(*r.calls) : std::string("timeout")) << std::setw(11) << r.cache_hits
                      << std::setw(6) << r.max_depth << r.elapsed_ns << '\n';
        }
        std::cout << std::right;
        if (diff) print_diff(*diff, false);
    }
    return diff && diff->regressed() ? kExitViolations : kExitOk;
}

void add_scan_flags(CLI::App* cmd, ScanArgs& a) {
    cmd->add_option("--n", a.n, "column count (exhaustive: 1..4, random: 1..6)");
    cmd->add_option("--m-min", a.m_min, "fewest rows");
    cmd->add_option("--m-max", a.m_max, "most rows (default 2^n)");
    cmd->add_option("--mode", a.mode, "exhaustive | random:COUNT:SEED");
    cmd->add_option("--workers", a.workers, "scan threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--witness-cap", a.witness_cap, "matrices kept per list");
    cmd->add_option("--seed", a.seed, "seed for shuffled orders inside scans");
    cmd->add_flag("--distinct-columns", a.distinct_columns, "keep only matrices with distinct columns");
    cmd->add_flag("--no-zero-column", a.no_zero_column, "drop matrices with an all-zero column");
    cmd->add_flag("--json", a.json, "emit one JSON document");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heavy-column certificate algorithms and their verification engine"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "run a1 or a2 on a matrix file ('-' for stdin)");
    check_cmd->add_option("input", check.input)->required();
    check_cmd->add_option("--algo", check.algo)->check(CLI::IsMember({"a1", "a2"}));
    check_cmd->add_option("--order", check.order, "ascending | shuffle:SEED (a1 only)");
    check_cmd->add_flag("--memo", check.memo, "memoize repeated submatrices");
    check_cmd->add_flag("--json", check.json);

    std::string oracle_input;
    bool oracle_json = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "list heavy columns by direct counting");
    oracle_cmd->add_option("input", oracle_input)->required();
    oracle_cmd->add_flag("--json", oracle_json);

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "preconditions, conjugate pairs, unpaired rows, reduction traces");
    analyze_cmd->add_option("input", analyze.input)->required();
    analyze_cmd->add_option("--trace", analyze.trace, "ROW:COLUMN sequential reduction to print");
    analyze_cmd->add_option("--trace-order", analyze.trace_order, "comma-separated column order for --trace");
    analyze_cmd->add_flag("--json", analyze.json);

    ScanArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "exhaustive or sampled theorem scans");
    verify_cmd->add_option("target", verify.target)
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2", "lemma1", "claim", "remark", "keycond", "all"}));
    add_scan_flags(verify_cmd, verify);

    ScanArgs explore;
    auto* explore_cmd = app.add_subcommand("explore", "exploratory scans that report without judging");
    explore_cmd->add_option("target", explore.target)->required()->check(CLI::IsMember({"converse", "order-sensitivity"}));
    add_scan_flags(explore_cmd, explore);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "recursion growth tables and baseline comparison");
    bench_cmd->add_option("target", bench.target)->required()->check(CLI::IsMember({"growth", "compare"}));
    bench_cmd->add_option("--family", bench.family, "full_cube | random_half:SEED | worst_found");
    bench_cmd->add_option("--n-min", bench.n_min);
    bench_cmd->add_option("--n-max", bench.n_max);
    bench_cmd->add_option("--timeout-ms", bench.timeout_ms, "per-run wall-clock budget");
    bench_cmd->add_option("--baseline-dir", bench.baseline_dir, "baseline store; compares unless --save");
    bench_cmd->add_flag("--save", bench.save, "write this run as the baseline");
    bench_cmd->add_flag("--csv", bench.csv);
    bench_cmd->add_flag("--json", bench.json);
    bench_cmd->add_option("--current", bench.current_file, "compare: CSV of the new run");
    bench_cmd->add_option("--baseline", bench.baseline_file, "compare: CSV baseline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*check_cmd) return cmd_check(check);
        if (*oracle_cmd) return cmd_oracle(oracle_input, oracle_json);
        if (*analyze_cmd) return cmd_analyze(analyze);
        if (*verify_cmd) return cmd_verify(verify);
        if (*explore_cmd) return cmd_explore(explore);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
