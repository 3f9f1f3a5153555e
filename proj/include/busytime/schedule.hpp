#pragma once

#include <string>
#include <vector>

#include "busytime/job.hpp"
#include "busytime/time.hpp"

namespace busytime {

struct Assignment {
    int job_id = 0;
    int machine = 0;
    Time start;

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.job_id == b.job_id && a.machine == b.machine && a.start == b.start;
    }
};

struct Schedule {
    std::vector<Assignment> assignments;

    const Assignment* find(int job_id) const;
    friend bool operator==(const Schedule& a, const Schedule& b) {
        return a.assignments == b.assignments;
    }
};

enum class ViolationKind { unknown_job, duplicate_job, missing_job, window, concurrency };

struct Violation {
    ViolationKind kind;
    int job_id = -1;   // offending job, or -1
    int machine = -1;  // offending machine for concurrency
    Time at;           // a time witnessing the violation
    std::string detail;
};

std::string to_string(ViolationKind kind);

/// Validates a schedule against an instance: every job assigned exactly once,
/// each start inside [r, d - p], and per-machine concurrency within g.
/// Returns all violations found, empty when feasible and complete.
std::vector<Violation> check_feasible(const Instance& inst, const Schedule& sched);

/// Total busy time: the sum over machines of the measure of the union of the
/// job intervals assigned to the machine. Requires a complete feasible
/// schedule; throws FeasibilityError carrying the first violation otherwise.
Time busy_time(const Instance& inst, const Schedule& sched);

}  // namespace busytime
