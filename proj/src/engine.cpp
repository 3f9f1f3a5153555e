#include "busytime/engine.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "busytime/errors.hpp"

namespace busytime {

void Scheduler::on_begin(const BeginInfo&) {}
void Scheduler::on_reveal(SimContext&, const Job&) {}
void Scheduler::on_time(SimContext&) {}

Time Scheduler::reported_cost(const Instance& inst, const Schedule& sched) const {
    return busy_time(inst, sched);
}

void JsonlTraceSink::record(const TraceRecord& rec) {
    nlohmann::json line{{"time", time_to_string(rec.time)}, {"kind", rec.kind},
                        {"payload", rec.payload}};
    out_ << line.dump() << '\n';
}

namespace {

constexpr int kReveal = 0;
constexpr int kLatestStart = 1;
constexpr int kIntervalEnd = 2;
constexpr int kWakeup = 3;

struct Event {
    Time time;
    int kind = 0;
    int job_id = -1;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return a.kind > b.kind;
        return a.job_id > b.job_id;
    }
};

}  // namespace

class Simulation {
public:
    Simulation(Scheduler& sched, const Parallelism& g, const Time& lookahead,
               Adversary* adv, int budget, const SimOptions& opts)
        : sched_(sched), adv_(adv), budget_(budget), opts_(opts) {
        ctx_.sim_ = this;
        ctx_.g_ = g;
        ctx_.lookahead_ = lookahead;
    }

    void seed(const std::vector<Job>& jobs) {
        for (const Job& job : jobs) add_job(job);
        for (const Time& t : opts_.extra_wakeups) queue_.push({t, kWakeup, -1});
    }

    void run() {
        started_ = true;
        while (!queue_.empty()) {
            const Time t = queue_.top().time;
            ctx_.now_ = t;
            while (!queue_.empty() && queue_.top().time == t) {
                std::vector<Event> wave;
                while (!queue_.empty() && queue_.top().time == t) {
                    wave.push_back(queue_.top());
                    queue_.pop();
                }
                for (const Event& e : wave) {
                    if (e.kind == kReveal) {
                        reveal(e.job_id);
                    } else if (e.kind == kWakeup) {
                        trace({t, "wakeup", {{"at", time_to_string(t)}}});
                    }
                }
                sched_.on_time(ctx_);
            }
            for (int id : ctx_.revealed_) {
                const Job& job = ctx_.jobs_.at(id);
                if (!ctx_.decided(id) && !(t < job.latest_start())) {
                    throw DeadlineMissError(
                        id, "job " + std::to_string(id) + " passed its latest start " +
                                time_to_string(job.latest_start()) + " without a decision");
                }
            }
        }
    }

    Instance realized_instance() const {
        Instance inst;
        inst.g = ctx_.g_;
        inst.lookahead = ctx_.lookahead_;
        for (int id : order_) inst.jobs.push_back(ctx_.jobs_.at(id));
        return inst;
    }

    Schedule finish() {
        Schedule sched;
        sched.assignments.reserve(ctx_.decisions_.size());
        for (const Decision& d : ctx_.decisions_)
            sched.assignments.push_back({d.job_id, d.machine, d.start});
        std::sort(sched.assignments.begin(), sched.assignments.end(),
                  [](const Assignment& a, const Assignment& b) { return a.job_id < b.job_id; });
        const Instance inst = realized_instance();
        auto violations = check_feasible(inst, sched);
        if (!violations.empty()) {
            const Violation& v = violations.front();
            throw FeasibilityError(v.job_id, "schedule failed validation: " + v.detail);
        }
        return sched;
    }

private:
    friend class SimContext;

    void add_job(const Job& job) {
        validate(job);
        if (!known_ids_.insert(job.id).second)
            throw ProtocolError("job id " + std::to_string(job.id) + " already in use");
        if (started_ && job.release < ctx_.now_)
            throw ProtocolError("job " + std::to_string(job.id) + " released at " +
                                time_to_string(job.release) + ", before the current time " +
                                time_to_string(ctx_.now_));
        ctx_.jobs_.emplace(job.id, job);
        order_.push_back(job.id);
        Time reveal = job.release - ctx_.lookahead_;
        if (started_ && reveal < ctx_.now_) reveal = ctx_.now_;
        queue_.push({reveal, kReveal, job.id});
        queue_.push({job.latest_start(), kLatestStart, job.id});
        // With lookahead the release itself is not otherwise an event; wake the
        // scheduler there so plans can turn into starts.
        if (reveal < job.release) queue_.push({job.release, kWakeup, -1});
    }

    void reveal(int id) {
        ctx_.revealed_.push_back(id);
        ctx_.revealed_set_.insert(id);
        const Job& job = ctx_.jobs_.at(id);
        trace({ctx_.now_, "reveal",
               {{"id", job.id},
                {"r", time_to_string(job.release)},
                {"d", time_to_string(job.deadline)},
                {"p", time_to_string(job.processing)}}});
        sched_.on_reveal(ctx_, job);
    }

    void commit(int id, int machine, const Time& start) {
        if (ctx_.revealed_set_.count(id) == 0)
            throw InfeasibleDecisionError(id, "job " + std::to_string(id) + " is not revealed");
        if (ctx_.decided(id))
            throw InfeasibleDecisionError(id, "job " + std::to_string(id) + " already decided");
        if (machine < 0)
            throw InfeasibleDecisionError(id, "negative machine index");
        const Job& job = ctx_.jobs_.at(id);
        if (start < ctx_.now_)
            throw InfeasibleDecisionError(id, "start " + time_to_string(start) +
                                                  " lies before the current time " +
                                                  time_to_string(ctx_.now_));
        if (start < job.release || job.latest_start() < start)
            throw InfeasibleDecisionError(id, "start " + time_to_string(start) +
                                                  " outside the window of job " +
                                                  std::to_string(id));
        Decision d{id, machine, start, ctx_.now_};
        ctx_.decisions_.push_back(d);
        ctx_.decided_.insert(id);
        queue_.push({start + job.processing, kIntervalEnd, id});
        trace({ctx_.now_, "decision",
               {{"id", id}, {"machine", machine}, {"start", time_to_string(start)}}});
        if (adv_ != nullptr && consultations_ < budget_ && !adv_->finished()) {
            ++consultations_;
            const Job observed = job;
            for (const Job& released : adv_->on_decision(d, observed)) {
                if (released.release < ctx_.now_)
                    throw ProtocolError("adversary released job " + std::to_string(released.id) +
                                        " in the past");
                add_job(released);
            }
        }
    }

    void request_wakeup(const Time& t) {
        if (!(ctx_.now_ < t))
            throw ProtocolError("wakeup request at " + time_to_string(t) +
                                " is not in the future");
        queue_.push({t, kWakeup, -1});
    }

    void trace(TraceRecord rec) {
        if (opts_.trace != nullptr) opts_.trace->record(std::move(rec));
    }

    Scheduler& sched_;
    Adversary* adv_;
    int budget_;
    SimOptions opts_;
    SimContext ctx_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::set<int> known_ids_;
    std::vector<int> order_;
    bool started_ = false;
    int consultations_ = 0;
};

const Job& SimContext::job(int id) const {
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw Error("unknown job id " + std::to_string(id));
    return it->second;
}

void SimContext::start_job(int id, int machine, const Time& start) {
    sim_->commit(id, machine, start);
}

void SimContext::wake_at(const Time& t) { sim_->request_wakeup(t); }

Schedule simulate(const Instance& inst, Scheduler& sched) {
    return simulate(inst, sched, SimOptions{});
}

Schedule simulate(const Instance& inst, Scheduler& sched, const SimOptions& opts) {
    validate(inst);
    BeginInfo info{inst.g, inst.lookahead, &inst.jobs};
    sched.on_begin(info);
    Simulation sim(sched, inst.g, inst.lookahead, nullptr, 0, opts);
    sim.seed(inst.jobs);
    sim.run();
    return sim.finish();
}

AdaptiveResult simulate_adaptive(Adversary& adv, Scheduler& sched, int budget,
                                 const Parallelism& g, const Time& lookahead) {
    return simulate_adaptive(adv, sched, budget, g, lookahead, SimOptions{});
}

AdaptiveResult simulate_adaptive(Adversary& adv, Scheduler& sched, int budget,
                                 const Parallelism& g, const Time& lookahead,
                                 const SimOptions& opts) {
    if (budget < 1) throw ConfigError("adaptive runs need a budget of at least 1");
    if (lookahead < 0) throw ValidationError("lookahead must be non-negative");
    BeginInfo info{g, lookahead, nullptr};
    sched.on_begin(info);
    Simulation sim(sched, g, lookahead, &adv, budget, opts);
    sim.seed(adv.initial_jobs());
    sim.run();
    AdaptiveResult result;
    result.schedule = sim.finish();
    result.instance = sim.realized_instance();
    return result;
}

}  // namespace busytime
