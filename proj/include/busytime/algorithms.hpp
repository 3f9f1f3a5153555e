#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "busytime/engine.hpp"
#include "busytime/interval_set.hpp"

namespace busytime {

/// A job that anchored a busy interval: started exactly at its latest start,
/// keeping the machine open until open_until for others to join.
struct FlagRecord {
    int job_id = 0;
    Time flag_start;
    Time open_until;
};

/// Lazy scheduler for equal processing times on one machine of unlimited
/// parallelism. A pending job whose interval is already covered by the
/// committed set starts immediately; a pending job reaching its latest start
/// becomes a flag and commits [t, t + p*(1+alpha)). The reported cost is the
/// measure of the committed set, which can exceed the union of executed job
/// intervals by the alpha tails.
class UnboundedUniformScheduler final : public Scheduler {
public:
    explicit UnboundedUniformScheduler(const Time& alpha);
    std::string name() const override;
    void on_begin(const BeginInfo& info) override;
    void on_reveal(SimContext& ctx, const Job& job) override;
    void on_time(SimContext& ctx) override;
    Time reported_cost(const Instance& inst, const Schedule& sched) const override;

    const Time& alpha() const { return alpha_; }
    const std::vector<FlagRecord>& flags() const { return flags_; }
    const IntervalSet& committed() const { return committed_; }

private:
    void note_processing(const Time& p);
    void step(SimContext& ctx);

    Time alpha_;
    std::optional<Time> p_;
    std::vector<int> pending_;
    IntervalSet committed_;
    std::vector<FlagRecord> flags_;
};

/// Scheduler for agreeable instances on one machine of unlimited
/// parallelism: a pending job reaching its latest start while no flag
/// interval is open becomes a flag occupying [t, d); while a flag is open
/// every pending job starts immediately; covered jobs start any time.
class UnboundedAgreeableScheduler final : public Scheduler {
public:
    UnboundedAgreeableScheduler() = default;
    std::string name() const override { return "unbounded-agreeable"; }
    void on_begin(const BeginInfo& info) override;
    void on_reveal(SimContext& ctx, const Job& job) override;
    void on_time(SimContext& ctx) override;

    const std::vector<FlagRecord>& flags() const { return flags_; }
    const IntervalSet& started() const { return started_; }

private:
    void note_job(const Job& job);
    bool flag_open(const Time& now) const;
    void step(SimContext& ctx);

    std::vector<int> pending_;
    std::vector<std::pair<Time, Time>> seen_;  // (release, deadline) of revealed jobs
    IntervalSet started_;
    std::vector<FlagRecord> flags_;
};

/// One machine rental of a bounded-parallelism scheduler: a flag with its
/// joiners, window [flag_start, flag_start + 2p).
struct UniformBundle {
    int machine = 0;
    int flag_id = 0;
    Time flag_start;
    std::vector<int> member_ids;  // includes the flag job
};

/// Scheduler for equal processing times with finite parallelism g >= 2: a
/// pending job reaching its latest start opens a bundle on a fresh machine
/// with window [t, t + 2p); pending jobs join open bundles in deadline order
/// while t <= flag_start + p and fewer than g members run there.
class UniformBoundedScheduler final : public Scheduler {
public:
    UniformBoundedScheduler() = default;
    std::string name() const override { return "uniform-bounded"; }
    void on_begin(const BeginInfo& info) override;
    void on_reveal(SimContext& ctx, const Job& job) override;
    void on_time(SimContext& ctx) override;

    const std::vector<UniformBundle>& bundles() const { return bundles_; }

private:
    void note_processing(const Time& p);
    void step(SimContext& ctx);
    bool try_join(SimContext& ctx, int id);

    long g_ = 0;
    std::optional<Time> p_;
    std::vector<int> pending_;
    std::vector<UniformBundle> bundles_;
};

/// The pluggable fixing stage: chooses, at reveal time, the final execution
/// start of a job. The returned start must lie in [release, deadline -
/// processing] and is never revised.
class Fixer {
public:
    virtual ~Fixer() = default;
    virtual std::string name() const = 0;
    /// Called when a run starts; clears any per-run state.
    virtual void begin() {}
    virtual Time fix(const Job& job, const Time& now) = 0;
};

/// Lazy fixing on a virtual single-machine timeline: a job coverable inside
/// the current virtual busy set is fixed at the earliest covered start;
/// otherwise it is fixed at its latest start, adding [d - p, d) to the set.
std::unique_ptr<Fixer> make_default_fixer();

/// Fixes every job at its latest start d - p.
std::unique_ptr<Fixer> make_latest_start_fixer();

struct TrackPairView {
    int index = 0;
    int machine = 0;
    std::vector<std::pair<Time, Time>> track_a;  // placed intervals, in order
    std::vector<std::pair<Time, Time>> track_b;
    std::optional<int> reserved;
};

/// Scheduler for arbitrary instances with finite g >= 2 and lookahead at
/// least the longest processing time. Jobs are fixed to rigid intervals at
/// reveal, then packed into ordered pairs of tracks: each pair keeps one
/// reserved successor (preferring jobs overlapping the frontier with the
/// latest fixed end, else the earliest fixed start), places it when its
/// start arrives, and a due job no pair reserved opens the next pair. Whole
/// pairs are packed floor(g/2) to a machine.
class GreedyTrackingScheduler final : public Scheduler {
public:
    explicit GreedyTrackingScheduler(std::unique_ptr<Fixer> fixer = nullptr);
    std::string name() const override;
    void on_begin(const BeginInfo& info) override;
    void on_reveal(SimContext& ctx, const Job& job) override;
    void on_time(SimContext& ctx) override;

    std::vector<TrackPairView> pairs() const;
    std::optional<Time> fixed_start(int id) const;

private:
    struct FixedJob {
        int id = 0;
        Time start;
        Time end;
    };
    struct TrackPair {
        int index = 0;
        int machine = 0;
        std::vector<FixedJob> tracks[2];
        FixedJob frontier;  // most recently placed job
        std::optional<int> reserved;
    };

    void refresh_reservations();
    void place(SimContext& ctx, TrackPair& pair, const FixedJob& fj);
    void step(SimContext& ctx);
    bool eligible(const TrackPair& pair, const FixedJob& fj) const;

    std::unique_ptr<Fixer> fixer_;
    long pairs_per_bundle_ = 1;
    Time lookahead_;
    std::map<int, FixedJob> fixed_;
    std::set<int> pool_;  // fixed, unplaced, not reserved by any pair
    std::vector<TrackPair> pairs_;
};

/// Parses a scheduler selection string: "unbounded-uniform:alpha=<rat>",
/// "unbounded-agreeable", "uniform-bounded",
/// "greedy-tracking[:fixer=default|latest]".
std::unique_ptr<Scheduler> make_scheduler(const std::string& spec);

}  // namespace busytime
