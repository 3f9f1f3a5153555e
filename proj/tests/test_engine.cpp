#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "busytime/algorithms.hpp"
#include "busytime/engine.hpp"
#include "busytime/errors.hpp"
#include "busytime/generator.hpp"
#include "busytime/io.hpp"
#include "busytime/schedule.hpp"
#include "test_util.hpp"

using namespace busytime;
using namespace busytime::testutil;

namespace {

// Starts every job the moment it is revealed, at its release.
struct EagerScheduler final : Scheduler {
    std::string name() const override { return "eager"; }
    void on_reveal(SimContext& ctx, const Job& job) override {
        ctx.start_job(job.id, 0, job.release);
        CHECK(ctx.decided(job.id));
    }
};

// When `trigger` is revealed, issues one scripted start for `target`.
struct ScriptScheduler final : Scheduler {
    int trigger;
    int target;
    int machine;
    Time start;
    ScriptScheduler(int tr, int ta, int m, Time s)
        : trigger(tr), target(ta), machine(m), start(std::move(s)) {}
    std::string name() const override { return "script"; }
    void on_reveal(SimContext& ctx, const Job& job) override {
        if (job.id == trigger) ctx.start_job(target, machine, start);
    }
};

struct DoubleStartScheduler final : Scheduler {
    std::string name() const override { return "double-start"; }
    void on_reveal(SimContext& ctx, const Job& job) override {
        Time s = job.latest_start();
        ctx.start_job(job.id, 0, s);
        ctx.start_job(job.id, 0, s);
    }
};

struct StaleWakeScheduler final : Scheduler {
    std::string name() const override { return "stale-wake"; }
    void on_reveal(SimContext& ctx, const Job&) override { ctx.wake_at(ctx.now()); }
};

// Releases one fresh unit job after every committed decision.
struct DripAdversary final : Adversary {
    int next_id = 2;
    std::string name() const override { return "drip"; }
    std::vector<Job> initial_jobs() override {
        next_id = 2;
        return {Job{1, Time(0), Time(2), Time(1)}};
    }
    std::vector<Job> on_decision(const Decision& d, const Job&) override {
        Time due = d.committed_at + Time(4);
        return {Job{next_id++, d.committed_at, due, Time(1)}};
    }
    bool finished() const override { return false; }
};

// Violates the protocol by releasing a job into the past.
struct PastAdversary final : Adversary {
    bool done = false;
    std::string name() const override { return "past"; }
    std::vector<Job> initial_jobs() override {
        done = false;
        return {Job{1, Time(1), Time(3), Time(1)}};
    }
    std::vector<Job> on_decision(const Decision&, const Job&) override {
        done = true;
        return {Job{7, Time(0), Time(5), Time(1)}};
    }
    bool finished() const override { return done; }
};

// Violates the protocol by reusing an existing job id.
struct EchoAdversary final : Adversary {
    bool done = false;
    std::string name() const override { return "echo"; }
    std::vector<Job> initial_jobs() override {
        done = false;
        return {Job{1, Time(0), Time(2), Time(1)}};
    }
    std::vector<Job> on_decision(const Decision&, const Job&) override {
        done = true;
        return {Job{1, Time(1), Time(5), Time(1)}};
    }
    bool finished() const override { return done; }
};

}  // namespace

TEST_CASE("[engine] empty instances produce empty schedules") {
    Instance inst = mkinst(Parallelism::unbounded(), {});
    IdleScheduler idle;
    Schedule sched = simulate(inst, idle);
    CHECK(sched.assignments.empty());
    CHECK(busy_time(inst, sched) == Time(0));
}

TEST_CASE("[engine] scripted starts are carried out verbatim") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 5, 2)});
    StartAtScheduler plan({{1, {3, Time(3)}}});
    Schedule sched = simulate(inst, plan);
    REQUIRE(sched.assignments.size() == 1);
    CHECK(sched.assignments[0].machine == 3);
    CHECK(sched.assignments[0].start == Time(3));
    CHECK(busy_time(inst, sched) == Time(2));
}

TEST_CASE("[engine] lookahead reveals jobs early") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 5, 9, 1)}, Time(2));
    StartAtScheduler plan({{1, {0, Time(5)}}});
    VectorTraceSink sink;
    SimOptions opts;
    opts.trace = &sink;
    simulate(inst, plan, opts);
    REQUIRE(!sink.records.empty());
    CHECK(sink.records[0].kind == "reveal");
    CHECK(sink.records[0].time == Time(3));
    CHECK(sink.records[0].payload.at("id") == 1);
}

TEST_CASE("[engine] traces carry reveal, decision and wakeup records") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 4, 1)});
    StartAtScheduler plan({{1, {0, Time(0)}}});
    VectorTraceSink sink;
    SimOptions opts;
    opts.trace = &sink;
    opts.extra_wakeups = {rat("1/2")};
    simulate(inst, plan, opts);
    std::vector<std::string> kinds;
    for (const TraceRecord& rec : sink.records) kinds.push_back(rec.kind);
    CHECK(std::count(kinds.begin(), kinds.end(), "reveal") == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), "decision") == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), "wakeup") == 1);
}

TEST_CASE("[engine] jsonl sinks emit one parseable object per record") {
    std::ostringstream out;
    JsonlTraceSink sink(out);
    sink.record({rat("3/2"), "decision", {{"id", 4}}});
    nlohmann::json line = nlohmann::json::parse(out.str());
    CHECK(line.at("time") == "3/2");
    CHECK(line.at("kind") == "decision");
    CHECK(line.at("payload").at("id") == 4);
}

TEST_CASE("[engine] undecided jobs trip the deadline check at their latest start") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
    IdleScheduler idle;
    try {
        simulate(inst, idle);
        FAIL("expected a missed deadline");
    } catch (const DeadlineMissError& e) {
        CHECK(e.job_id == 1);
    }
}

TEST_CASE("[engine] infeasible decisions are rejected") {
    SUBCASE("start outside the window") {
        Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
        ScriptScheduler sched(1, 1, 0, rat("3/2"));
        CHECK_THROWS_AS(simulate(inst, sched), InfeasibleDecisionError);
    }
    SUBCASE("start before the current time") {
        Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 9, 1), mkjob(2, 2, 9, 1)});
        ScriptScheduler sched(2, 1, 0, Time(1));
        CHECK_THROWS_AS(simulate(inst, sched), InfeasibleDecisionError);
    }
    SUBCASE("job not yet revealed") {
        Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 9, 1), mkjob(2, 3, 9, 1)});
        ScriptScheduler sched(1, 2, 0, Time(3));
        CHECK_THROWS_AS(simulate(inst, sched), InfeasibleDecisionError);
    }
    SUBCASE("negative machine index") {
        Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
        ScriptScheduler sched(1, 1, -1, Time(0));
        CHECK_THROWS_AS(simulate(inst, sched), InfeasibleDecisionError);
    }
    SUBCASE("second decision for the same job") {
        Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
        DoubleStartScheduler sched;
        CHECK_THROWS_AS(simulate(inst, sched), InfeasibleDecisionError);
    }
}

TEST_CASE("[engine] wakeup requests must be strictly in the future") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
    StaleWakeScheduler sched;
    CHECK_THROWS_AS(simulate(inst, sched), ProtocolError);
}

TEST_CASE("[engine] invalid instances are rejected before simulation") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1), mkjob(1, 0, 2, 1)});
    IdleScheduler idle;
    CHECK_THROWS_AS(simulate(inst, idle), ValidationError);
}

TEST_CASE("[engine] replays are deterministic") {
    GenSpec spec;
    spec.seed = 7;
    spec.n = 6;
    spec.horizon = 8;
    Instance inst = gen_random(spec);
    auto a = make_scheduler("unbounded-uniform");
    auto b = make_scheduler("unbounded-uniform");
    CHECK(simulate(inst, *a) == simulate(inst, *b));
}

TEST_CASE("[engine] extra wakeups never change the outcome") {
    Instance inst =
        mkinst(Parallelism::unbounded(), {mkjob(1, 0, 3, 1), mkjob(2, "1/2", "5", "1")});
    auto plain = make_scheduler("unbounded-uniform");
    Schedule base = simulate(inst, *plain);
    SimOptions opts;
    opts.extra_wakeups = {rat("1/4"), rat("3/4"), rat("7/4"), rat("9/4")};
    auto shadow = make_scheduler("unbounded-uniform");
    CHECK(simulate(inst, *shadow, opts) == base);
}

TEST_CASE("[engine] a fixed adversary replays its jobs as a static instance") {
    std::vector<Job> jobs = {mkjob(1, 0, 3, 1), mkjob(2, 1, 4, 1)};
    FixedAdversary adv(jobs);
    auto online = make_scheduler("unbounded-uniform");
    AdaptiveResult res =
        simulate_adaptive(adv, *online, 4, Parallelism::unbounded(), Time(0));
    Instance inst = mkinst(Parallelism::unbounded(), jobs);
    auto replay = make_scheduler("unbounded-uniform");
    CHECK(res.schedule == simulate(inst, *replay));
    CHECK(instance_to_json(res.instance) == instance_to_json(inst));
}

TEST_CASE("[engine] the consultation budget caps adaptive releases") {
    DripAdversary adv;
    EagerScheduler eager;
    AdaptiveResult two =
        simulate_adaptive(adv, eager, 2, Parallelism::unbounded(), Time(0));
    CHECK(two.instance.jobs.size() == 3);  // one initial job plus two releases
    AdaptiveResult five =
        simulate_adaptive(adv, eager, 5, Parallelism::unbounded(), Time(0));
    CHECK(five.instance.jobs.size() == 6);
    CHECK_THROWS_AS(simulate_adaptive(adv, eager, 0, Parallelism::unbounded(), Time(0)),
                    ConfigError);
}

TEST_CASE("[engine] adversary protocol violations are detected") {
    SUBCASE("release in the past") {
        PastAdversary adv;
        StartAtScheduler plan({{1, {0, Time(1)}}});
        CHECK_THROWS_AS(simulate_adaptive(adv, plan, 4, Parallelism::unbounded(), Time(0)),
                        ProtocolError);
    }
    SUBCASE("reused job id") {
        EchoAdversary adv;
        StartAtScheduler plan({{1, {0, Time(0)}}});
        CHECK_THROWS_AS(simulate_adaptive(adv, plan, 4, Parallelism::unbounded(), Time(0)),
                        ProtocolError);
    }
}
