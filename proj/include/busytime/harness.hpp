#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "busytime/generator.hpp"
#include "busytime/job.hpp"

namespace busytime {

enum class OracleMode { exact, bounds_only };

/// One adaptive run: adversary type token ("thm1" | "lemma5") with its
/// parameters and the machine model the scheduler plays under. When g is
/// absent, thm1 runs unbounded and lemma5 runs with g = 2.
struct AdversaryRunSpec {
    std::string type;
    int k = 3;
    std::optional<Time> epsilon;
    std::optional<Time> alpha;
    std::optional<Parallelism> g;
    Time lookahead = 0;
    int budget = 1 << 20;
};

/// `count` instances drawn from `base` with seeds base.seed, base.seed+1, ...
struct GeneratorBatchSpec {
    GenSpec base;
    int count = 1;
};

struct ExperimentConfig {
    std::string algo;  // scheduler selection string
    std::vector<std::string> instance_files;
    std::optional<GeneratorBatchSpec> batch;
    std::optional<AdversaryRunSpec> adversary;
    OracleMode oracle_mode = OracleMode::exact;
    std::optional<int> cap;  // overrides the oracle job caps
    bool timing = false;     // false pins the ms column to 0 for reproducible files
    std::string output_path; // empty means stdout
};

/// One experiment outcome; exactly the fields of one CSV row.
struct ResultRow {
    std::string instance;
    int n = 0;
    std::string g;  // "inf" or a number
    Time lookahead;
    std::string algo;
    std::optional<Time> alg_cost;
    std::optional<Time> opt_cost;
    std::string opt_kind;  // exact | upper-bound | lower-bound | none | error
    std::optional<Time> ratio;
    long ms = 0;

    friend bool operator==(const ResultRow& a, const ResultRow& b) {
        return a.instance == b.instance && a.n == b.n && a.g == b.g &&
               a.lookahead == b.lookahead && a.algo == b.algo && a.alg_cost == b.alg_cost &&
               a.opt_cost == b.opt_cost && a.opt_kind == b.opt_kind && a.ratio == b.ratio &&
               a.ms == b.ms;
    }
};

/// Runs every configured source in order: instance files, generator batch,
/// adversary run. Each row simulates a fresh scheduler, re-validates the
/// schedule, then prices it: exact mode asks the matching oracle (adaptive
/// chain runs beyond the cap fall back to the rearrangement upper bound),
/// bounds mode reports the best lower bound. A failed row keeps its place
/// with opt_kind "error" (detail goes to stderr) and the batch continues.
std::vector<ResultRow> run(const ExperimentConfig& cfg);

/// Header plus one line per row; exact fraction serialization; fields with
/// commas or quotes are double-quote escaped.
std::string report_csv(const std::vector<ResultRow>& rows);

/// Inverse of report_csv. Throws ParseError on malformed input.
std::vector<ResultRow> parse_csv(const std::string& text);

/// JSON mirror of ExperimentConfig; unknown keys raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& doc);

}  // namespace busytime
