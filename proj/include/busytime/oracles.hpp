#pragma once

#include "busytime/job.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

/// Exact optimum value with a feasible witness schedule.
struct OracleResult {
    Time value;
    Schedule schedule;
};

/// Job-count limits for the exhaustive oracles.
struct OracleCaps {
    int unbounded = 8;
    int bounded = 7;
    int agreeable = 10;
};

/// Default caps; the BUSYTIME_ORACLE_CAP environment variable, when set to a
/// positive integer, replaces all three.
OracleCaps oracle_caps();

/// Minimum span of the union of job intervals on one machine with no
/// concurrency limit. Exhaustive over the candidate start closure: window
/// endpoints shifted by signed subsets of processing times, justified by
/// sliding any job until an interval endpoint abuts another or its window
/// boundary. Witness runs on machine 0. Throws SizeCapError beyond the cap.
OracleResult opt_unbounded(const Instance& inst);
OracleResult opt_unbounded(const Instance& inst, int cap);

/// Minimum total busy time over machine partitions with per-machine
/// concurrency at most g; set-partition dynamic program over candidate
/// starts per machine.
OracleResult opt_bounded(const Instance& inst, long g);
OracleResult opt_bounded(const Instance& inst, long g, int cap);

/// opt_unbounded restricted to schedules whose start order follows release
/// order, which loses nothing on agreeable instances and lets a higher job
/// cap run. Requires an agreeable instance and unbounded parallelism.
OracleResult opt_agreeable_ordered(const Instance& inst);
OracleResult opt_agreeable_ordered(const Instance& inst, int cap);

/// Exhaustive search over the uniform grid with step 1/(c*refine), where c
/// is the common denominator of all job times, so the grid passes through
/// every window endpoint. Uses the instance's machine model. Exists to
/// cross-validate the closure oracles.
OracleResult opt_fine_grid(const Instance& inst, long refine = 4);

struct LowerBounds {
    Time load_over_g;  // total processing volume over g; 0 when g is unbounded
    Time max_job;      // longest processing time; 0 on an empty instance
};

LowerBounds lower_bounds(const Instance& inst);

/// Busy time of a feasible rearrangement of `alg`: the schedule's busy
/// stretches act as components, independent_half picks a non-consecutive
/// subset, and each picked stretch collapses: its earliest-starting job
/// moves left to its release, the rest move right to their latest starts.
/// The result is validated and measured, giving an upper bound on the
/// optimum for instances beyond the exact oracle caps. Requires unbounded
/// parallelism; throws ConstructionError if the rearranged schedule fails
/// validation.
Time rearrangement_upper_bound(const Instance& inst, const Schedule& alg);

}  // namespace busytime
