#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "busytime/job.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

/// One committed, irrevocable scheduling decision.
struct Decision {
    int job_id = 0;
    int machine = 0;
    Time start;
    Time committed_at;
};

struct TraceRecord {
    Time time;
    std::string kind;  // "reveal" | "decision" | "wakeup"
    nlohmann::json payload;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void record(const TraceRecord& rec) = 0;
};

/// Writes one JSON object per line: {"time": ..., "kind": ..., "payload": ...}.
class JsonlTraceSink final : public TraceSink {
public:
    explicit JsonlTraceSink(std::ostream& out) : out_(out) {}
    void record(const TraceRecord& rec) override;

private:
    std::ostream& out_;
};

class VectorTraceSink final : public TraceSink {
public:
    void record(const TraceRecord& rec) override { records.push_back(rec); }
    std::vector<TraceRecord> records;
};

/// Facts a scheduler may inspect before the clock starts. static_jobs is
/// null in adaptive runs, where jobs exist only once revealed.
struct BeginInfo {
    Parallelism g = Parallelism::unbounded();
    Time lookahead;
    const std::vector<Job>* static_jobs = nullptr;
};

class Simulation;

/// The scheduler's window into a running simulation.
class SimContext {
public:
    const Time& now() const { return now_; }
    const Parallelism& parallelism() const { return g_; }
    const Time& lookahead() const { return lookahead_; }

    /// Revealed job ids in reveal order (ties broken by ascending id).
    const std::vector<int>& revealed_ids() const { return revealed_; }
    const Job& job(int id) const;
    bool decided(int id) const { return decided_.count(id) != 0; }
    const std::vector<Decision>& decisions() const { return decisions_; }

    /// Commits job `id` to `machine` starting at `start`. Final once made.
    /// Requires a revealed, undecided job, machine >= 0, start >= now and
    /// start inside [release, deadline - processing].
    void start_job(int id, int machine, const Time& start);

    /// Requests an on_time callback at a strictly future time.
    void wake_at(const Time& t);

private:
    friend class Simulation;
    Simulation* sim_ = nullptr;
    Time now_;
    Parallelism g_ = Parallelism::unbounded();
    Time lookahead_;
    std::map<int, Job> jobs_;
    std::vector<int> revealed_;
    std::set<int> revealed_set_;
    std::set<int> decided_;
    std::vector<Decision> decisions_;
};

/// Contract for the online algorithms. Handlers run only at event times;
/// decisions are append-only and never revised.
class Scheduler {
public:
    virtual ~Scheduler() = default;
    virtual std::string name() const = 0;
    virtual void on_begin(const BeginInfo& info);
    virtual void on_reveal(SimContext& ctx, const Job& job);
    virtual void on_time(SimContext& ctx);
    /// Cost the algorithm charges for its run; defaults to the schedule's
    /// busy time. Algorithms that commit machine time beyond the executed
    /// job intervals override this.
    virtual Time reported_cost(const Instance& inst, const Schedule& sched) const;
};

/// Contract for adaptive instance constructions: observes every committed
/// decision and may answer with new releases at or after the current time.
class Adversary {
public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    /// Jobs present before the clock starts.
    virtual std::vector<Job> initial_jobs() = 0;
    /// Observes one committed decision; returns newly released jobs.
    virtual std::vector<Job> on_decision(const Decision& decision, const Job& job) = 0;
    /// True once nothing further will be released.
    virtual bool finished() const = 0;
};

/// Plays a fixed job list and never reacts.
class FixedAdversary final : public Adversary {
public:
    explicit FixedAdversary(std::vector<Job> jobs) : jobs_(std::move(jobs)) {}
    std::string name() const override { return "fixed"; }
    std::vector<Job> initial_jobs() override { return jobs_; }
    std::vector<Job> on_decision(const Decision&, const Job&) override { return {}; }
    bool finished() const override { return true; }

private:
    std::vector<Job> jobs_;
};

struct SimOptions {
    TraceSink* trace = nullptr;
    /// Extra wakeup times injected into the event queue. A correct
    /// scheduler's decisions must not depend on them; tests exploit this to
    /// confirm that all decision points already lie on event times.
    std::vector<Time> extra_wakeups;
};

/// Drives a scheduler over a fixed instance: jobs reveal at release -
/// lookahead, the queue carries reveals, latest starts, interval ends and
/// requested wakeups, and the finished schedule is validated before return.
/// Throws DeadlineMissError when a revealed job passes its latest start
/// undecided and FeasibilityError if the final schedule fails validation.
Schedule simulate(const Instance& inst, Scheduler& sched);
Schedule simulate(const Instance& inst, Scheduler& sched, const SimOptions& opts);

struct AdaptiveResult {
    Instance instance;  // the realized instance, including adversary releases
    Schedule schedule;
};

/// Alternates scheduler decisions and adversary releases: after every
/// committed decision the adversary is consulted (at most `budget` times)
/// and may release jobs with release >= current time. Returns the realized
/// instance together with the scheduler's schedule over it.
AdaptiveResult simulate_adaptive(Adversary& adv, Scheduler& sched, int budget,
                                 const Parallelism& g, const Time& lookahead);
AdaptiveResult simulate_adaptive(Adversary& adv, Scheduler& sched, int budget,
                                 const Parallelism& g, const Time& lookahead,
                                 const SimOptions& opts);

}  // namespace busytime
