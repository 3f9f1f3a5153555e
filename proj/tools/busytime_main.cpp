#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "busytime/adversaries.hpp"
#include "busytime/algorithms.hpp"
#include "busytime/engine.hpp"
#include "busytime/errors.hpp"
#include "busytime/generator.hpp"
#include "busytime/harness.hpp"
#include "busytime/io.hpp"
#include "busytime/oracles.hpp"
#include "busytime/schedule.hpp"

namespace {

using namespace busytime;

int fail(const std::string& msg) {
    std::cerr << "busytime: " << msg << '\n';
    return 1;
}

Parallelism parse_g_token(const std::string& text) {
    if (text == "inf") return Parallelism::unbounded();
    std::size_t pos = 0;
    long value = 0;
    bool ok = true;
    try {
        value = std::stol(text, &pos);
    } catch (const std::exception&) {
        ok = false;
    }
    if (!ok || pos != text.size()) {
        throw ConfigError("g must be a positive integer or 'inf', got '" + text + "'");
    }
    return Parallelism::bounded(value);
}

std::optional<Time> parse_optional_time(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_time(text);
}

OracleResult price_exact(const Instance& inst, int cap) {
    if (inst.g.is_unbounded()) {
        return cap > 0 ? opt_unbounded(inst, cap) : opt_unbounded(inst);
    }
    long g = inst.g.value();
    return cap > 0 ? opt_bounded(inst, g, cap) : opt_bounded(inst, g);
}

int emit_report(const std::vector<ResultRow>& rows, const std::string& output_path) {
    std::string csv = report_csv(rows);
    if (output_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(output_path);
        if (!out) return fail("cannot open output file: " + output_path);
        out << csv;
    }
    for (const ResultRow& row : rows) {
        if (row.opt_kind == "error") return 1;
    }
    return 0;
}

int emit_trace(const ExperimentConfig& cfg, const std::string& trace_path) {
    int sources = static_cast<int>(cfg.instance_files.size());
    if (cfg.batch) sources += cfg.batch->count;
    if (cfg.adversary) sources += 1;
    if (sources != 1) return fail("--trace needs a config with exactly one instance source");
    std::ofstream out(trace_path);
    if (!out) return fail("cannot open trace file: " + trace_path);
    JsonlTraceSink sink(out);
    SimOptions opts;
    opts.trace = &sink;
    std::unique_ptr<Scheduler> sched = make_scheduler(cfg.algo);
    if (cfg.adversary) {
        const AdversaryRunSpec& a = *cfg.adversary;
        std::unique_ptr<Adversary> adv = make_adversary(a.type, a.k, a.epsilon, a.alpha);
        Parallelism g = a.g ? *a.g
                            : (a.type == "lemma5" ? Parallelism::bounded(2)
                                                  : Parallelism::unbounded());
        simulate_adaptive(*adv, *sched, a.budget, g, a.lookahead, opts);
    } else {
        Instance inst = cfg.batch ? gen_random(cfg.batch->base)
                                  : read_instance_file(cfg.instance_files.front());
        simulate(inst, *sched, opts);
    }
    return 0;
}

struct RunArgs {
    std::string config_path;
    std::string algo;
    std::vector<std::string> instances;
    int gen_count = 0;
    std::uint64_t gen_seed = 1;
    int gen_n = 4;
    std::string gen_class = "uniform";
    std::string gen_g = "inf";
    long gen_horizon = 10;
    std::string gen_lookahead;
    bool gen_lookahead_pmax = false;
    std::string oracle_mode = "exact";
    int cap = 0;
    bool timing = false;
    std::string output;
    std::string trace;
    bool inline_used = false;
};

int do_run(const RunArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        if (args.inline_used) {
            return fail("--config cannot be combined with inline experiment flags");
        }
        std::ifstream in(args.config_path);
        if (!in) return fail("cannot open config file: " + args.config_path);
        cfg = config_from_json(nlohmann::json::parse(in));
    } else {
        if (args.algo.empty()) return fail("run needs --algo (or --config)");
        cfg.algo = args.algo;
        cfg.instance_files = args.instances;
        if (args.gen_count > 0) {
            GeneratorBatchSpec batch;
            batch.base.seed = args.gen_seed;
            batch.base.n = args.gen_n;
            batch.base.job_class = job_class_from_string(args.gen_class);
            batch.base.g = parse_g_token(args.gen_g);
            batch.base.horizon = args.gen_horizon;
            if (!args.gen_lookahead.empty()) batch.base.lookahead = parse_time(args.gen_lookahead);
            batch.base.lookahead_pmax = args.gen_lookahead_pmax;
            batch.count = args.gen_count;
            cfg.batch = batch;
        }
        if (args.oracle_mode == "exact") cfg.oracle_mode = OracleMode::exact;
        else if (args.oracle_mode == "bounds-only") cfg.oracle_mode = OracleMode::bounds_only;
        else return fail("--oracle must be 'exact' or 'bounds-only'");
        if (args.cap > 0) cfg.cap = args.cap;
        cfg.timing = args.timing;
    }
    if (!args.output.empty()) cfg.output_path = args.output;
    if (!args.trace.empty()) {
        int rc = emit_trace(cfg, args.trace);
        if (rc != 0) return rc;
    }
    std::vector<ResultRow> rows = run(cfg);
    return emit_report(rows, cfg.output_path);
}

int do_oracle(const std::string& instance_path, const std::string& g_token, int cap) {
    Instance inst = read_instance_file(instance_path);
    if (!g_token.empty()) inst.g = parse_g_token(g_token);
    OracleResult res = price_exact(inst, cap);
    nlohmann::json doc;
    doc["value"] = time_to_json(res.value);
    doc["witness"] = schedule_to_json(inst, res.schedule);
    std::cout << doc.dump(2) << '\n';
    return 0;
}

struct AdversaryArgs {
    std::string type;
    int k = 3;
    std::string epsilon;
    std::string alpha;
    std::string algo;
    std::string g;
    std::string lookahead;
    int budget = 1 << 20;
    int cap = 0;
    std::string trace;
};

int do_adversary(const AdversaryArgs& args) {
    std::unique_ptr<Adversary> adv =
        make_adversary(args.type, args.k, parse_optional_time(args.epsilon),
                       parse_optional_time(args.alpha));
    Parallelism g = !args.g.empty()
                        ? parse_g_token(args.g)
                        : (args.type == "lemma5" ? Parallelism::bounded(2)
                                                 : Parallelism::unbounded());
    Time lookahead = args.lookahead.empty() ? Time(0) : parse_time(args.lookahead);
    std::unique_ptr<Scheduler> sched = make_scheduler(args.algo);
    std::ofstream trace_out;
    std::optional<JsonlTraceSink> sink;
    SimOptions opts;
    if (!args.trace.empty()) {
        trace_out.open(args.trace);
        if (!trace_out) return fail("cannot open trace file: " + args.trace);
        sink.emplace(trace_out);
        opts.trace = &*sink;
    }
    AdaptiveResult res = simulate_adaptive(*adv, *sched, args.budget, g, lookahead, opts);
    Time alg_cost = sched->reported_cost(res.instance, res.schedule);
    Time opt_cost;
    std::string opt_kind;
    try {
        OracleResult opt = price_exact(res.instance, args.cap);
        opt_cost = opt.value;
        opt_kind = "exact";
    } catch (const SizeCapError&) {
        if (!res.instance.g.is_unbounded()) throw;
        opt_cost = rearrangement_upper_bound(res.instance, res.schedule);
        opt_kind = "upper-bound";
    }
    nlohmann::json doc;
    doc["adversary"] = adv->name();
    doc["algo"] = sched->name();
    doc["instance"] = instance_to_json(res.instance);
    doc["alg_cost"] = time_to_json(alg_cost);
    doc["opt_cost"] = time_to_json(opt_cost);
    doc["opt_kind"] = opt_kind;
    if (opt_cost > 0) {
        Time ratio = alg_cost / opt_cost;
        doc["ratio"] = time_to_json(ratio);
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
}

struct GenArgs {
    std::uint64_t seed = 1;
    int n = 4;
    std::string job_class = "uniform";
    std::string g = "inf";
    long horizon = 10;
    std::string lookahead;
    bool lookahead_pmax = false;
    std::string output;
};

int do_gen(const GenArgs& args) {
    GenSpec spec;
    spec.seed = args.seed;
    spec.n = args.n;
    spec.job_class = job_class_from_string(args.job_class);
    spec.g = parse_g_token(args.g);
    spec.horizon = args.horizon;
    if (!args.lookahead.empty()) spec.lookahead = parse_time(args.lookahead);
    spec.lookahead_pmax = args.lookahead_pmax;
    Instance inst = gen_random(spec);
    nlohmann::json doc = instance_to_json(inst);
    if (args.output.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::ofstream out(args.output);
        if (!out) return fail("cannot open output file: " + args.output);
        out << doc.dump(2) << '\n';
    }
    return 0;
}

int do_validate(const std::string& instance_path, const std::string& schedule_path) {
    Instance inst = read_instance_file(instance_path);
    validate(inst);
    Classification cls = classify(inst);
    nlohmann::json doc;
    doc["instance"] = "ok";
    doc["n"] = inst.jobs.size();
    doc["g"] = inst.g.str();
    doc["classification"] = {{"uniform", cls.uniform},
                             {"agreeable", cls.agreeable},
                             {"rigid", cls.rigid}};
    int rc = 0;
    if (!schedule_path.empty()) {
        Schedule sched = read_schedule_file(schedule_path);
        std::vector<Violation> bad = check_feasible(inst, sched);
        if (bad.empty()) {
            doc["schedule"] = "ok";
            doc["busy_time"] = time_to_json(busy_time(inst, sched));
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const Violation& v : bad) {
                arr.push_back({{"kind", to_string(v.kind)},
                               {"job", v.job_id},
                               {"machine", v.machine},
                               {"at", time_to_json(v.at)},
                               {"detail", v.detail}});
            }
            doc["schedule"] = "violations";
            doc["violations"] = arr;
            rc = 1;
        }
    }
    std::cout << doc.dump(2) << '\n';
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Busy-time scheduling workbench: online algorithms, exact oracles, adversaries"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment batch and report CSV");
    run_cmd->add_option("--config", run_args.config_path, "JSON experiment config file");
    CLI::Option* o_algo = run_cmd->add_option("--algo", run_args.algo, "Scheduler selection string");
    CLI::Option* o_inst =
        run_cmd->add_option("--instance", run_args.instances, "Instance JSON file (repeatable)");
    CLI::Option* o_count = run_cmd->add_option(
        "--gen-count", run_args.gen_count, "Number of generated instances (0 disables)");
    CLI::Option* o_seed = run_cmd->add_option("--gen-seed", run_args.gen_seed, "First seed");
    CLI::Option* o_n = run_cmd->add_option("--gen-n", run_args.gen_n, "Jobs per instance");
    CLI::Option* o_class = run_cmd->add_option(
        "--gen-class", run_args.gen_class, "uniform | agreeable | arbitrary | rigid");
    CLI::Option* o_g = run_cmd->add_option("--gen-g", run_args.gen_g, "Parallelism: int or 'inf'");
    CLI::Option* o_hor = run_cmd->add_option("--gen-horizon", run_args.gen_horizon, "Time horizon");
    CLI::Option* o_la =
        run_cmd->add_option("--gen-lookahead", run_args.gen_lookahead, "Lookahead (rational)");
    CLI::Option* o_lap = run_cmd->add_flag("--gen-lookahead-pmax", run_args.gen_lookahead_pmax,
                                           "Set lookahead to the longest processing time");
    CLI::Option* o_mode =
        run_cmd->add_option("--oracle", run_args.oracle_mode, "exact | bounds-only");
    CLI::Option* o_cap = run_cmd->add_option("--cap", run_args.cap, "Oracle job cap override");
    CLI::Option* o_timing =
        run_cmd->add_flag("--timing", run_args.timing, "Fill the ms column with wall time");
    run_cmd->add_option("--out", run_args.output, "CSV output path (default stdout)");
    run_cmd->add_option("--trace", run_args.trace,
                        "Write the engine trace (JSON lines); needs a single instance source");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of one instance");
    std::string oracle_instance, oracle_g;
    int oracle_cap = 0;
    oracle_cmd->add_option("--instance", oracle_instance, "Instance JSON file")->required();
    oracle_cmd->add_option("--g", oracle_g, "Override parallelism: int or 'inf'");
    oracle_cmd->add_option("--cap", oracle_cap, "Oracle job cap override");

    AdversaryArgs adv_args;
    CLI::App* adv_cmd = app.add_subcommand("adversary", "Play an adaptive adversary against a scheduler");
    adv_cmd->add_option("--type", adv_args.type, "thm1 | lemma5")->required();
    adv_cmd->add_option("--k", adv_args.k, "Component count (thm1)");
    adv_cmd->add_option("--epsilon", adv_args.epsilon, "Release offset (thm1, rational)");
    adv_cmd->add_option("--alpha", adv_args.alpha, "Branch threshold (lemma5, rational)");
    adv_cmd->add_option("--algo", adv_args.algo, "Scheduler selection string")->required();
    adv_cmd->add_option("--g", adv_args.g, "Parallelism: int or 'inf'");
    adv_cmd->add_option("--lookahead", adv_args.lookahead, "Lookahead (rational)");
    adv_cmd->add_option("--budget", adv_args.budget, "Max adversary consultations");
    adv_cmd->add_option("--cap", adv_args.cap, "Oracle job cap override");
    adv_cmd->add_option("--trace", adv_args.trace, "Write the engine trace (JSON lines)");

    GenArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--seed", gen_args.seed, "RNG seed");
    gen_cmd->add_option("--n", gen_args.n, "Number of jobs");
    gen_cmd->add_option("--class", gen_args.job_class, "uniform | agreeable | arbitrary | rigid");
    gen_cmd->add_option("--g", gen_args.g, "Parallelism: int or 'inf'");
    gen_cmd->add_option("--horizon", gen_args.horizon, "Time horizon");
    gen_cmd->add_option("--lookahead", gen_args.lookahead, "Lookahead (rational)");
    gen_cmd->add_flag("--lookahead-pmax", gen_args.lookahead_pmax,
                      "Set lookahead to the longest processing time");
    gen_cmd->add_option("--out", gen_args.output, "Output path (default stdout)");

    CLI::App* val_cmd = app.add_subcommand("validate", "Check an instance and optional schedule");
    std::string val_instance, val_schedule;
    val_cmd->add_option("--instance", val_instance, "Instance JSON file")->required();
    val_cmd->add_option("--schedule", val_schedule, "Schedule JSON file");

    CLI11_PARSE(app, argc, argv);

    run_args.inline_used = o_algo->count() > 0 || o_inst->count() > 0 || o_count->count() > 0 ||
                           o_seed->count() > 0 || o_n->count() > 0 || o_class->count() > 0 ||
                           o_g->count() > 0 || o_hor->count() > 0 || o_la->count() > 0 ||
                           o_lap->count() > 0 || o_mode->count() > 0 || o_cap->count() > 0 ||
                           o_timing->count() > 0;

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (oracle_cmd->parsed()) return do_oracle(oracle_instance, oracle_g, oracle_cap);
        if (adv_cmd->parsed()) return do_adversary(adv_args);
        if (gen_cmd->parsed()) return do_gen(gen_args);
        if (val_cmd->parsed()) return do_validate(val_instance, val_schedule);
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return 0;
}
