#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "busytime/engine.hpp"
#include "busytime/job.hpp"
#include "busytime/time.hpp"

namespace busytime::testutil {

inline Time rat(const char* text) { return parse_time(text); }
inline Time rat(long v) { return Time(v); }

inline Job mkjob(int id, const char* r, const char* d, const char* p) {
    return Job{id, parse_time(r), parse_time(d), parse_time(p)};
}

inline Job mkjob(int id, long r, long d, long p) { return Job{id, Time(r), Time(d), Time(p)}; }

inline Instance mkinst(Parallelism g, std::vector<Job> jobs, Time lookahead = Time(0)) {
    return Instance{g, lookahead, std::move(jobs)};
}

/// Follows a fixed id -> (machine, start) plan, committing each job the
/// moment it is revealed (the engine accepts starts at or after now).
class StartAtScheduler final : public Scheduler {
public:
    explicit StartAtScheduler(std::map<int, std::pair<int, Time>> plan) : plan_(std::move(plan)) {}
    std::string name() const override { return "start-at"; }
    void on_reveal(SimContext& ctx, const Job& job) override {
        const auto& [machine, start] = plan_.at(job.id);
        ctx.start_job(job.id, machine, start);
    }

private:
    std::map<int, std::pair<int, Time>> plan_;
};

/// Never starts anything; used to provoke deadline-miss errors.
class IdleScheduler final : public Scheduler {
public:
    std::string name() const override { return "idle"; }
    void on_reveal(SimContext&, const Job&) override {}
};

}  // namespace busytime::testutil
