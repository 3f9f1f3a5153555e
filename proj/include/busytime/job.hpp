#pragma once

#include <string>
#include <vector>

#include "busytime/errors.hpp"
#include "busytime/time.hpp"

namespace busytime {

/// Number of jobs a machine may run concurrently: a positive integer or
/// unbounded.
class Parallelism {
public:
    static Parallelism unbounded() { return Parallelism(0, true); }
    static Parallelism bounded(long g) {
        if (g < 1) throw ValidationError("machine parallelism must be at least 1");
        return Parallelism(g, false);
    }

    bool is_unbounded() const { return unbounded_; }
    long value() const {
        if (unbounded_) throw ValidationError("unbounded parallelism has no numeric value");
        return g_;
    }
    /// True when `count` concurrent jobs are allowed.
    bool allows(long count) const { return unbounded_ || count <= g_; }

    friend bool operator==(const Parallelism& a, const Parallelism& b) {
        return a.unbounded_ == b.unbounded_ && (a.unbounded_ || a.g_ == b.g_);
    }

    std::string str() const { return unbounded_ ? "inf" : std::to_string(g_); }

private:
    Parallelism(long g, bool unbounded) : g_(g), unbounded_(unbounded) {}
    long g_;
    bool unbounded_;
};

struct Job {
    int id = 0;
    Time release;     // r, earliest start
    Time deadline;    // d, completion bound
    Time processing;  // p, execution length

    Time latest_start() const { return deadline - processing; }
    bool rigid() const { return release == latest_start(); }
};

/// Throws ValidationError unless 0 < p <= d - r.
void validate(const Job& job);

struct Instance {
    Parallelism g = Parallelism::unbounded();
    Time lookahead;  // how far before its release a job becomes visible
    std::vector<Job> jobs;

    const Job* find(int id) const;
};

/// Throws ValidationError on invalid jobs, duplicate ids or negative lookahead.
void validate(const Instance& inst);

struct Classification {
    bool uniform = false;    // all processing times equal
    bool agreeable = false;  // no pair with r_i < r_j and d_i > d_j
    bool rigid = false;      // every job has p = d - r
};

Classification classify(const Instance& inst);

/// Total processing volume, sum of p over all jobs.
Time load(const Instance& inst);

}  // namespace busytime
