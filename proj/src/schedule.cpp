#include "busytime/schedule.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "busytime/interval_set.hpp"

namespace busytime {

const Assignment* Schedule::find(int job_id) const {
    for (const Assignment& a : assignments)
        if (a.job_id == job_id) return &a;
    return nullptr;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::unknown_job: return "unknown_job";
        case ViolationKind::duplicate_job: return "duplicate_job";
        case ViolationKind::missing_job: return "missing_job";
        case ViolationKind::window: return "window";
        case ViolationKind::concurrency: return "concurrency";
    }
    return "?";
}

std::vector<Violation> check_feasible(const Instance& inst, const Schedule& sched) {
    std::vector<Violation> out;
    std::unordered_map<int, const Job*> jobs;
    for (const Job& j : inst.jobs) jobs.emplace(j.id, &j);

    std::unordered_set<int> seen;
    // machine -> sweep events (time, delta), ends before starts on ties
    std::map<int, std::vector<std::pair<Time, int>>> events;

    for (const Assignment& a : sched.assignments) {
        auto it = jobs.find(a.job_id);
        if (it == jobs.end()) {
            out.push_back({ViolationKind::unknown_job, a.job_id, a.machine, a.start,
                           "assignment for job not in the instance"});
            continue;
        }
        if (!seen.insert(a.job_id).second) {
            out.push_back({ViolationKind::duplicate_job, a.job_id, a.machine, a.start,
                           "job assigned more than once"});
            continue;
        }
        const Job& j = *it->second;
        if (a.start < j.release || a.start > j.latest_start()) {
            out.push_back({ViolationKind::window, a.job_id, a.machine, a.start,
                           "start outside [" + time_to_string(j.release) + ", " +
                               time_to_string(j.latest_start()) + "]"});
            continue;
        }
        events[a.machine].push_back({a.start, +1});
        events[a.machine].push_back({a.start + j.processing, -1});
    }

    for (const Job& j : inst.jobs)
        if (!seen.count(j.id))
            out.push_back({ViolationKind::missing_job, j.id, -1, j.release, "job never assigned"});

    if (!inst.g.is_unbounded()) {
        const long g = inst.g.value();
        for (auto& [machine, evs] : events) {
            std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
            });
            long running = 0;
            for (const auto& [t, delta] : evs) {
                running += delta;
                if (running > g) {
                    out.push_back({ViolationKind::concurrency, -1, machine, t,
                                   std::to_string(running) + " concurrent jobs with g = " +
                                       std::to_string(g)});
                    break;
                }
            }
        }
    }
    return out;
}

Time busy_time(const Instance& inst, const Schedule& sched) {
    const auto violations = check_feasible(inst, sched);
    if (!violations.empty()) {
        const Violation& v = violations.front();
        throw FeasibilityError(v.job_id, "infeasible schedule: " + to_string(v.kind) + " (" +
                                             v.detail + ")");
    }
    std::map<int, IntervalSet> machines;
    for (const Assignment& a : sched.assignments) {
        const Job& j = *inst.find(a.job_id);
        machines[a.machine].insert(a.start, a.start + j.processing);
    }
    Time total;
    for (const auto& [machine, set] : machines) total += set.span();
    return total;
}

}  // namespace busytime
