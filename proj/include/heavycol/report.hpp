#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "heavycol/algorithms.hpp"
#include "heavycol/matrix.hpp"

namespace heavycol {

/// Report document for a single matrix. `algo` empty means the oracle ran
/// alone, in which case verdict, witness and stats are null/zero.
inline nlohmann::json report_json(const BinaryMatrix& M, std::optional<Algorithm> algo, const Verdict* verdict) {
    const MatrixProperties props = matrix_properties(M);
    nlohmann::json j;
    j["m"] = M.m();
    j["n"] = M.n();
    j["algorithm"] = algo ? std::string(to_string(*algo)) : std::string("oracle");
    j["verdict"] = verdict ? nlohmann::json(verdict->value) : nlohmann::json(nullptr);
    j["heavy_columns"] = heavy_columns(M);
    if (verdict && algo) {
        nlohmann::json w;
        w["line"] = pseudocode_line(*algo, verdict->witness.tag, verdict->value);
        w["column"] = verdict->witness.column ? nlohmann::json(*verdict->witness.column) : nlohmann::json(nullptr);
        w["tag"] = std::string(to_string(verdict->witness.tag));
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["preconditions"] = {
        {"distinct_rows", props.distinct_rows},
        {"distinct_columns", props.distinct_columns},
        {"all_zero_column", props.has_all_zero_column},
    };
    const RecursionStats stats = verdict ? verdict->stats : RecursionStats{};
    j["stats"] = {
        {"calls", stats.calls},
        {"max_depth", stats.max_depth},
        {"cache_hits", stats.cache_hits},
        {"elapsed_ns", stats.elapsed_ns},
    };
    return j;
}

inline std::string serialize_report(const BinaryMatrix& M, std::optional<Algorithm> algo, const Verdict* verdict) {
    return report_json(M, algo, verdict).dump();
}

} // namespace heavycol
