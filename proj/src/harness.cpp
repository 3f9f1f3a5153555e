#include "busytime/harness.hpp"

#include <chrono>
#include <cstddef>
#include <exception>
#include <algorithm>
#include <initializer_list>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "busytime/adversaries.hpp"
#include "busytime/algorithms.hpp"
#include "busytime/engine.hpp"
#include "busytime/errors.hpp"
#include "busytime/io.hpp"
#include "busytime/oracles.hpp"
#include "busytime/schedule.hpp"
#include "busytime/time.hpp"

namespace busytime {
namespace {

constexpr const char* kHeader[] = {"instance", "n",        "g",        "lookahead", "algo",
                                   "alg_cost", "opt_cost", "opt_kind", "ratio",     "ms"};
constexpr std::size_t kFieldCount = 10;

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled) {
        if (enabled_) start_ = std::chrono::steady_clock::now();
    }
    long elapsed_ms() const {
        if (!enabled_) return 0;
        auto end = std::chrono::steady_clock::now();
        auto delta = std::chrono::duration_cast<std::chrono::milliseconds>(end - start_);
        return static_cast<long>(delta.count());
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_{};
};

void ensure_feasible(const Instance& inst, const Schedule& sched) {
    std::vector<Violation> bad = check_feasible(inst, sched);
    if (!bad.empty()) {
        const Violation& v = bad.front();
        throw FeasibilityError(v.job_id, to_string(v.kind) + ": " + v.detail);
    }
}

/// Fills opt_cost/opt_kind. In exact mode a run past the oracle cap falls
/// back to the rearrangement upper bound, but only when an unbounded-model
/// algorithm schedule is available to rearrange; otherwise the cap error
/// propagates and the row reports an error.
void price(const ExperimentConfig& cfg, const Instance& inst, const Schedule* alg,
           ResultRow& row) {
    if (cfg.oracle_mode == OracleMode::bounds_only) {
        LowerBounds lb = lower_bounds(inst);
        Time best = std::max(lb.load_over_g, lb.max_job);
        if (best > 0) {
            row.opt_cost = best;
            row.opt_kind = "lower-bound";
        } else {
            row.opt_kind = "none";
        }
        return;
    }
    try {
        OracleResult opt = [&]() {
            if (inst.g.is_unbounded()) {
                return cfg.cap ? opt_unbounded(inst, *cfg.cap) : opt_unbounded(inst);
            }
            long g = inst.g.value();
            return cfg.cap ? opt_bounded(inst, g, *cfg.cap) : opt_bounded(inst, g);
        }();
        row.opt_cost = opt.value;
        row.opt_kind = "exact";
    } catch (const SizeCapError&) {
        if (alg == nullptr || !inst.g.is_unbounded()) throw;
        row.opt_cost = rearrangement_upper_bound(inst, *alg);
        row.opt_kind = "upper-bound";
    }
}

void fill_ratio(ResultRow& row) {
    if (row.alg_cost && row.opt_cost && *row.opt_cost > 0) {
        Time r = *row.alg_cost / *row.opt_cost;
        row.ratio = r;
    }
}

void log_row_error(const std::string& label, const std::exception& e) {
    std::cerr << "busytime: row '" << label << "' failed: " << e.what() << '\n';
}

template <typename MakeInstance>
ResultRow run_static(const ExperimentConfig& cfg, const std::string& label,
                     MakeInstance make_instance) {
    ResultRow row;
    row.instance = label;
    row.algo = cfg.algo;
    row.opt_kind = "error";
    try {
        Instance inst = make_instance();
        row.n = static_cast<int>(inst.jobs.size());
        row.g = inst.g.str();
        row.lookahead = inst.lookahead;
        std::unique_ptr<Scheduler> sched = make_scheduler(cfg.algo);
        row.algo = sched->name();
        Stopwatch watch(cfg.timing);
        Schedule sched_out = simulate(inst, *sched);
        ensure_feasible(inst, sched_out);
        Time cost = sched->reported_cost(inst, sched_out);
        row.alg_cost = cost;
        price(cfg, inst, nullptr, row);
        fill_ratio(row);
        row.ms = watch.elapsed_ms();
    } catch (const std::exception& e) {
        log_row_error(label, e);
    }
    return row;
}

ResultRow run_adaptive(const ExperimentConfig& cfg) {
    const AdversaryRunSpec& spec = *cfg.adversary;
    ResultRow row;
    row.instance = spec.type;
    row.algo = cfg.algo;
    row.opt_kind = "error";
    try {
        std::unique_ptr<Adversary> adv = make_adversary(spec.type, spec.k, spec.epsilon, spec.alpha);
        row.instance = adv->name();
        Parallelism g = spec.g ? *spec.g
                               : (spec.type == "lemma5" ? Parallelism::bounded(2)
                                                        : Parallelism::unbounded());
        std::unique_ptr<Scheduler> sched = make_scheduler(cfg.algo);
        row.algo = sched->name();
        Stopwatch watch(cfg.timing);
        AdaptiveResult res = simulate_adaptive(*adv, *sched, spec.budget, g, spec.lookahead);
        row.n = static_cast<int>(res.instance.jobs.size());
        row.g = res.instance.g.str();
        row.lookahead = res.instance.lookahead;
        ensure_feasible(res.instance, res.schedule);
        Time cost = sched->reported_cost(res.instance, res.schedule);
        row.alg_cost = cost;
        price(cfg, res.instance, &res.schedule, row);
        fill_ratio(row);
        row.ms = watch.elapsed_ms();
    } catch (const std::exception& e) {
        log_row_error(row.instance, e);
    }
    return row;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string opt_time_field(const std::optional<Time>& t) {
    return t ? time_to_string(*t) : std::string();
}

/// Quote-aware record splitter; quoted fields may hold commas, quotes and
/// line breaks. Blank lines between records are skipped.
std::vector<std::vector<std::string>> split_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    bool seen = false;  // current line produced any field content or separator
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cur.push_back('"');
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            cur.push_back(c);
            ++i;
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            seen = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
            seen = true;
            ++i;
            continue;
        }
        if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            ++i;
            if (seen || !fields.empty() || !cur.empty()) {
                fields.push_back(cur);
                records.push_back(std::move(fields));
                fields = {};
                cur.clear();
                seen = false;
            }
            continue;
        }
        cur.push_back(c);
        seen = true;
        ++i;
    }
    if (in_quotes) throw ParseError("unterminated quote in csv");
    if (seen || !fields.empty() || !cur.empty()) {
        fields.push_back(cur);
        records.push_back(std::move(fields));
    }
    return records;
}

long parse_long_field(const std::string& text, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    bool ok = true;
    try {
        v = std::stol(text, &pos);
    } catch (const std::exception&) {
        ok = false;
    }
    if (!ok || pos != text.size()) {
        throw ParseError(std::string("bad ") + what + " field: '" + text + "'");
    }
    return v;
}

ResultRow row_from_fields(const std::vector<std::string>& f) {
    if (f.size() != kFieldCount) {
        throw ParseError("csv row has " + std::to_string(f.size()) + " fields, expected " +
                         std::to_string(kFieldCount));
    }
    ResultRow row;
    row.instance = f[0];
    row.n = static_cast<int>(parse_long_field(f[1], "n"));
    row.g = f[2];
    row.lookahead = parse_time(f[3]);
    row.algo = f[4];
    if (!f[5].empty()) row.alg_cost = parse_time(f[5]);
    if (!f[6].empty()) row.opt_cost = parse_time(f[6]);
    row.opt_kind = f[7];
    if (!f[8].empty()) row.ratio = parse_time(f[8]);
    row.ms = parse_long_field(f[9], "ms");
    return row;
}

long long require_integer(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
    return v.get<long long>();
}

std::string require_string(const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a string");
    return v.get<std::string>();
}

bool require_bool(const nlohmann::json& v, const std::string& where) {
    if (!v.is_boolean()) throw ConfigError(where + " must be a boolean");
    return v.get<bool>();
}

Parallelism parallelism_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return Parallelism::unbounded();
        throw ConfigError(where + " must be a positive integer or \"inf\"");
    }
    if (v.is_number_integer()) {
        return Parallelism::bounded(static_cast<long>(v.get<long long>()));
    }
    throw ConfigError(where + " must be a positive integer or \"inf\"");
}

void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

GeneratorBatchSpec batch_from_json(const nlohmann::json& sec) {
    if (!sec.is_object()) throw ConfigError("generator section must be an object");
    check_keys(sec,
               {"seed", "n", "class", "g", "horizon", "lookahead", "lookahead_pmax", "count"},
               "generator section");
    GeneratorBatchSpec batch;
    if (sec.contains("seed")) {
        long long seed = require_integer(sec.at("seed"), "generator seed");
        if (seed < 0) throw ConfigError("generator seed must be non-negative");
        batch.base.seed = static_cast<std::uint64_t>(seed);
    }
    if (sec.contains("n")) {
        batch.base.n = static_cast<int>(require_integer(sec.at("n"), "generator n"));
    }
    if (sec.contains("class")) {
        batch.base.job_class = job_class_from_string(require_string(sec.at("class"), "generator class"));
    }
    if (sec.contains("g")) {
        batch.base.g = parallelism_from_json(sec.at("g"), "generator g");
    }
    if (sec.contains("horizon")) {
        batch.base.horizon = static_cast<long>(require_integer(sec.at("horizon"), "generator horizon"));
    }
    if (sec.contains("lookahead")) {
        batch.base.lookahead = time_from_json(sec.at("lookahead"));
    }
    if (sec.contains("lookahead_pmax")) {
        batch.base.lookahead_pmax = require_bool(sec.at("lookahead_pmax"), "generator lookahead_pmax");
    }
    if (sec.contains("count")) {
        batch.count = static_cast<int>(require_integer(sec.at("count"), "generator count"));
        if (batch.count < 1) throw ConfigError("generator count must be positive");
    }
    return batch;
}

AdversaryRunSpec adversary_from_json(const nlohmann::json& sec) {
    if (!sec.is_object()) throw ConfigError("adversary section must be an object");
    check_keys(sec, {"type", "k", "epsilon", "alpha", "g", "lookahead", "budget"},
               "adversary section");
    if (!sec.contains("type")) throw ConfigError("adversary section needs a type");
    AdversaryRunSpec spec;
    spec.type = require_string(sec.at("type"), "adversary type");
    if (sec.contains("k")) spec.k = static_cast<int>(require_integer(sec.at("k"), "adversary k"));
    if (sec.contains("epsilon")) spec.epsilon = time_from_json(sec.at("epsilon"));
    if (sec.contains("alpha")) spec.alpha = time_from_json(sec.at("alpha"));
    if (sec.contains("g")) spec.g = parallelism_from_json(sec.at("g"), "adversary g");
    if (sec.contains("lookahead")) spec.lookahead = time_from_json(sec.at("lookahead"));
    if (sec.contains("budget")) {
        spec.budget = static_cast<int>(require_integer(sec.at("budget"), "adversary budget"));
        if (spec.budget < 0) throw ConfigError("adversary budget must be non-negative");
    }
    return spec;
}

}  // namespace

std::vector<ResultRow> run(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows;
    for (const std::string& path : cfg.instance_files) {
        rows.push_back(run_static(cfg, path, [&]() { return read_instance_file(path); }));
    }
    if (cfg.batch) {
        for (int i = 0; i < cfg.batch->count; ++i) {
            GenSpec spec = cfg.batch->base;
            spec.seed = cfg.batch->base.seed + static_cast<std::uint64_t>(i);
            std::string label =
                "gen:" + to_string(spec.job_class) + ":seed=" + std::to_string(spec.seed);
            rows.push_back(run_static(cfg, label, [&]() { return gen_random(spec); }));
        }
    }
    if (cfg.adversary) {
        rows.push_back(run_adaptive(cfg));
    }
    return rows;
}

std::string report_csv(const std::vector<ResultRow>& rows) {
    std::string out;
    for (std::size_t i = 0; i < kFieldCount; ++i) {
        if (i > 0) out += ',';
        out += kHeader[i];
    }
    out += '\n';
    for (const ResultRow& row : rows) {
        out += csv_escape(row.instance);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += csv_escape(row.g);
        out += ',';
        out += time_to_string(row.lookahead);
        out += ',';
        out += csv_escape(row.algo);
        out += ',';
        out += opt_time_field(row.alg_cost);
        out += ',';
        out += opt_time_field(row.opt_cost);
        out += ',';
        out += csv_escape(row.opt_kind);
        out += ',';
        out += opt_time_field(row.ratio);
        out += ',';
        out += std::to_string(row.ms);
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records = split_records(text);
    if (records.empty()) throw ParseError("csv is missing its header line");
    const std::vector<std::string>& head = records.front();
    bool head_ok = head.size() == kFieldCount;
    if (head_ok) {
        for (std::size_t i = 0; i < kFieldCount; ++i) {
            if (head[i] != kHeader[i]) {
                head_ok = false;
                break;
            }
        }
    }
    if (!head_ok) throw ParseError("csv header does not match the result schema");
    std::vector<ResultRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) {
        rows.push_back(row_from_fields(records[i]));
    }
    return rows;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(doc,
               {"algo", "instances", "generator", "adversary", "oracle_mode", "cap", "timing",
                "output"},
               "config");
    if (!doc.contains("algo")) throw ConfigError("config needs an algo string");
    ExperimentConfig cfg;
    cfg.algo = require_string(doc.at("algo"), "algo");
    if (doc.contains("instances")) {
        const nlohmann::json& arr = doc.at("instances");
        if (!arr.is_array()) throw ConfigError("instances must be an array of paths");
        for (const nlohmann::json& item : arr) {
            cfg.instance_files.push_back(require_string(item, "instances entry"));
        }
    }
    if (doc.contains("generator")) cfg.batch = batch_from_json(doc.at("generator"));
    if (doc.contains("adversary")) cfg.adversary = adversary_from_json(doc.at("adversary"));
    if (doc.contains("oracle_mode")) {
        std::string mode = require_string(doc.at("oracle_mode"), "oracle_mode");
        if (mode == "exact") cfg.oracle_mode = OracleMode::exact;
        else if (mode == "bounds-only") cfg.oracle_mode = OracleMode::bounds_only;
        else throw ConfigError("oracle_mode must be \"exact\" or \"bounds-only\"");
    }
    if (doc.contains("cap")) {
        long long cap = require_integer(doc.at("cap"), "cap");
        if (cap < 1) throw ConfigError("cap must be positive");
        cfg.cap = static_cast<int>(cap);
    }
    if (doc.contains("timing")) cfg.timing = require_bool(doc.at("timing"), "timing");
    if (doc.contains("output")) cfg.output_path = require_string(doc.at("output"), "output");
    return cfg;
}

}  // namespace busytime
