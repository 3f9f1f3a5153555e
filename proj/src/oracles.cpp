#include "busytime/oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "busytime/errors.hpp"
#include "busytime/independent_half.hpp"
#include "busytime/interval_set.hpp"

namespace busytime {

namespace {

template <class T>
struct SJob {
    int id;
    T r, d, p;
};

template <class T>
T overlap_measure(const BasicIntervalSet<T>& set, const T& lo, const T& hi) {
    T total{};
    for (const auto& [a, b] : set.intervals()) {
        T x = std::max(a, lo);
        T y = std::min(b, hi);
        if (x < y) total += y - x;
    }
    return total;
}

template <class T>
struct Outcome {
    bool feasible = false;
    T span{};
    std::vector<std::pair<int, T>> starts;  // (job id, start)
};

/// Depth-first search over per-job candidate starts, minimizing the span of
/// the union of job intervals on one machine. Supports an optional
/// concurrency bound and an optional release-order restriction. Candidates
/// at each node are visited by ascending added span, so the subtree is cut
/// as soon as the incumbent cannot be beaten.
template <class T>
class ClusterSolver {
public:
    ClusterSolver(std::vector<SJob<T>> jobs, std::vector<std::vector<T>> cands, long g,
                  bool ordered)
        : jobs_(std::move(jobs)), cands_(std::move(cands)), g_(g), ordered_(ordered) {}

    Outcome<T> run() {
        starts_.assign(jobs_.size(), T{});
        placed_.clear();
        out_ = Outcome<T>{};
        dfs(0, BasicIntervalSet<T>{}, T{});
        return out_;
    }

private:
    void dfs(std::size_t depth, const BasicIntervalSet<T>& covered, const T& covered_span) {
        if (depth == jobs_.size()) {
            if (!out_.feasible || covered_span < out_.span) {
                out_.feasible = true;
                out_.span = covered_span;
                out_.starts.clear();
                for (std::size_t i = 0; i < jobs_.size(); ++i)
                    out_.starts.emplace_back(jobs_[i].id, starts_[i]);
            }
            return;
        }
        const SJob<T>& j = jobs_[depth];
        struct Cand {
            T added;
            T s;
        };
        std::vector<Cand> cs;
        cs.reserve(cands_[depth].size());
        for (const T& s : cands_[depth]) {
            if (ordered_ && depth > 0 && s < starts_[depth - 1]) continue;
            if (g_ > 0 && !fits_concurrency(s, j.p)) continue;
            T end = s + j.p;
            T added = j.p - overlap_measure(covered, s, end);
            cs.push_back(Cand{added, s});
        }
        std::stable_sort(cs.begin(), cs.end(), [](const Cand& a, const Cand& b) {
            if (a.added != b.added) return a.added < b.added;
            return a.s < b.s;
        });
        for (const Cand& c : cs) {
            if (out_.feasible && !(covered_span + c.added < out_.span)) break;
            BasicIntervalSet<T> next = covered;
            next.insert(c.s, c.s + j.p);
            placed_.emplace_back(c.s, c.s + j.p);
            starts_[depth] = c.s;
            dfs(depth + 1, next, covered_span + c.added);
            placed_.pop_back();
        }
    }

    /// True when running the new interval [s, s+p) keeps at most g jobs
    /// concurrent. Earlier placements were each checked the same way, so
    /// checking the newest interval bounds every point in time.
    bool fits_concurrency(const T& s, const T& p) const {
        const T e = s + p;
        std::vector<std::pair<T, int>> evs;
        for (const auto& [a, b] : placed_) {
            T lo = std::max(a, s);
            T hi = std::min(b, e);
            if (lo < hi) {
                evs.emplace_back(lo, +1);
                evs.emplace_back(hi, -1);
            }
        }
        std::sort(evs.begin(), evs.end());
        long cur = 0, peak = 0;
        for (const auto& [t, delta] : evs) {
            cur += delta;
            peak = std::max(peak, cur);
        }
        return peak + 1 <= g_;
    }

    std::vector<SJob<T>> jobs_;
    std::vector<std::vector<T>> cands_;
    long g_;
    bool ordered_;
    std::vector<T> starts_;
    std::vector<std::pair<T, T>> placed_;
    Outcome<T> out_;
};

template <class T>
std::vector<std::vector<T>> closure_candidates(const std::vector<SJob<T>>& jobs) {
    std::set<T> sums;
    sums.insert(T{});
    for (const SJob<T>& j : jobs) {
        std::set<T> next = sums;
        for (const T& s : sums) {
            next.insert(s + j.p);
            next.insert(s - j.p);
        }
        if (next.size() > 50000) throw SizeCapError("start candidate closure is too large");
        sums.swap(next);
    }
    std::set<T> points;
    for (const SJob<T>& a : jobs) {
        for (const T& s : sums) {
            points.insert(a.r + s);
            points.insert(a.d + s);
        }
        if (points.size() > 400000) throw SizeCapError("start candidate closure is too large");
    }
    std::vector<std::vector<T>> cands(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const SJob<T>& j = jobs[i];
        const T hi = j.d - j.p;
        for (const T& t : points)
            if (!(t < j.r) && !(hi < t)) cands[i].push_back(t);
    }
    return cands;
}

template <class T>
std::vector<std::vector<T>> grid_candidates(const std::vector<SJob<T>>& jobs, const T& step) {
    std::vector<std::vector<T>> cands(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const SJob<T>& j = jobs[i];
        const T hi = j.d - j.p;
        for (T t = j.r; !(hi < t); t += step) {
            cands[i].push_back(t);
            if (cands[i].size() > 200000) throw SizeCapError("fine grid is too large");
        }
    }
    return cands;
}

struct ClusterSolution {
    Time span;
    std::vector<Assignment> assignments;
    int machines_used = 0;
};

template <class T, class Back>
ClusterSolution solve_cluster(const std::vector<SJob<T>>& jobs, long g, bool ordered, bool grid,
                              const T& step, int machine_base, Back back) {
    ClusterSolution sol;
    sol.span = 0;
    if (g <= 0) {
        auto cands = grid ? grid_candidates(jobs, step) : closure_candidates(jobs);
        Outcome<T> out = ClusterSolver<T>(jobs, std::move(cands), 0, ordered).run();
        if (!out.feasible) throw ConstructionError("search found no feasible schedule");
        sol.span = back(out.span);
        for (const auto& [id, s] : out.starts)
            sol.assignments.push_back(Assignment{id, 0, back(s)});
        sol.machines_used = 1;
        return sol;
    }
    // one machine per subset: L[mask] = best span of exactly that subset
    const int m = static_cast<int>(jobs.size());
    const int full = (1 << m) - 1;
    std::vector<std::optional<Outcome<T>>> L(full + 1);
    for (int mask = 1; mask <= full; ++mask) {
        std::vector<SJob<T>> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) sub.push_back(jobs[i]);
        auto cands = grid ? grid_candidates(sub, step) : closure_candidates(sub);
        Outcome<T> out = ClusterSolver<T>(sub, std::move(cands), g, false).run();
        if (out.feasible) L[mask] = std::move(out);
    }
    // partition the cluster into machines; each block must hold the lowest
    // open job, which kills symmetric orderings of the same partition
    std::vector<std::optional<T>> F(full + 1);
    std::vector<int> pick(full + 1, 0);
    F[0] = T{};
    for (int mask = 1; mask <= full; ++mask) {
        const int low = mask & -mask;
        for (int sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            if (!L[sub] || !F[mask ^ sub]) continue;
            T v = L[sub]->span + *F[mask ^ sub];
            if (!F[mask] || v < *F[mask]) {
                F[mask] = v;
                pick[mask] = sub;
            }
        }
    }
    if (!F[full]) throw ConstructionError("search found no feasible machine partition");
    sol.span = back(*F[full]);
    int machine = machine_base;
    for (int mask = full; mask;) {
        const int sub = pick[mask];
        for (const auto& [id, s] : L[sub]->starts)
            sol.assignments.push_back(Assignment{id, machine, back(s)});
        ++machine;
        mask ^= sub;
    }
    sol.machines_used = machine - machine_base;
    return sol;
}

std::vector<std::vector<Job>> cluster_groups(const std::vector<Job>& jobs) {
    std::vector<Job> order = jobs;
    std::sort(order.begin(), order.end(), [](const Job& a, const Job& b) {
        if (a.release != b.release) return a.release < b.release;
        if (a.deadline != b.deadline) return a.deadline < b.deadline;
        return a.id < b.id;
    });
    std::vector<std::vector<Job>> groups;
    Time max_d;
    for (const Job& j : order) {
        if (groups.empty() || !(j.release < max_d)) {
            groups.emplace_back();
            max_d = j.deadline;
        } else {
            max_d = std::max(max_d, j.deadline);
        }
        groups.back().push_back(j);
    }
    return groups;
}

/// Shared driver: splits the instance into window-overlap clusters (busy
/// time and concurrency never cross a gap, so optima add up), solves each on
/// plain integers when the common denominator allows, and re-validates the
/// assembled witness.
OracleResult solve_instance(const Instance& inst, long g, bool ordered, bool grid, long refine,
                            int cap, const std::string& op) {
    validate(inst);
    if (static_cast<int>(inst.jobs.size()) > cap)
        throw SizeCapError(op + ": " + std::to_string(inst.jobs.size()) +
                           " jobs exceed the cap of " + std::to_string(cap));
    OracleResult res;
    res.value = 0;
    int machine_base = 0;
    for (const std::vector<Job>& cluster : cluster_groups(inst.jobs)) {
        std::vector<Time> vals;
        Time maxabs = 0, total_p = 0;
        for (const Job& j : cluster) {
            vals.push_back(j.release);
            vals.push_back(j.deadline);
            vals.push_back(j.processing);
            Time ar = abs(j.release);
            Time ad = abs(j.deadline);
            maxabs = std::max(maxabs, std::max(ar, ad));
            total_p += j.processing;
        }
        BigInt denom = common_denominator(vals);
        if (grid) denom *= refine;
        ClusterSolution sol;
        // headroom probe: every number the search touches stays below this
        if (scaled_int64((maxabs + total_p + Time(1)) * 8, denom)) {
            std::vector<SJob<std::int64_t>> sj;
            for (const Job& j : cluster)
                sj.push_back(SJob<std::int64_t>{j.id, *scaled_int64(j.release, denom),
                                                *scaled_int64(j.deadline, denom),
                                                *scaled_int64(j.processing, denom)});
            std::sort(sj.begin(), sj.end(), [](const SJob<std::int64_t>& a, const SJob<std::int64_t>& b) {
                return std::tie(a.r, a.d, a.id) < std::tie(b.r, b.d, b.id);
            });
            auto back = [denom](std::int64_t v) -> Time { return Time(BigInt(v)) / Time(denom); };
            sol = solve_cluster<std::int64_t>(sj, g, ordered, grid, 1, machine_base, back);
        } else {
            std::vector<SJob<Time>> sj;
            for (const Job& j : cluster)
                sj.push_back(SJob<Time>{j.id, j.release, j.deadline, j.processing});
            std::sort(sj.begin(), sj.end(), [](const SJob<Time>& a, const SJob<Time>& b) {
                return std::tie(a.r, a.d, a.id) < std::tie(b.r, b.d, b.id);
            });
            const Time step = Time(1) / Time(denom);
            auto back = [](const Time& v) { return v; };
            sol = solve_cluster<Time>(sj, g, ordered, grid, step, machine_base, back);
        }
        res.value += sol.span;
        res.schedule.assignments.insert(res.schedule.assignments.end(), sol.assignments.begin(),
                                        sol.assignments.end());
        if (g > 0) machine_base += sol.machines_used;
    }
    std::sort(res.schedule.assignments.begin(), res.schedule.assignments.end(),
              [](const Assignment& a, const Assignment& b) { return a.job_id < b.job_id; });
    Instance probe = inst;
    probe.g = g > 0 ? Parallelism::bounded(g) : Parallelism::unbounded();
    auto violations = check_feasible(probe, res.schedule);
    if (!violations.empty())
        throw ConstructionError(op + ": witness failed validation: " + violations.front().detail);
    return res;
}

}  // namespace

OracleCaps oracle_caps() {
    OracleCaps caps;
    if (const char* env = std::getenv("BUSYTIME_ORACLE_CAP")) {
        const std::string text(env);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(text, &used);
        } catch (const std::exception&) {
            throw ConfigError("BUSYTIME_ORACLE_CAP must be a positive integer");
        }
        if (used != text.size() || v < 1)
            throw ConfigError("BUSYTIME_ORACLE_CAP must be a positive integer");
        caps.unbounded = caps.bounded = caps.agreeable = v;
    }
    return caps;
}

OracleResult opt_unbounded(const Instance& inst) {
    return opt_unbounded(inst, oracle_caps().unbounded);
}

OracleResult opt_unbounded(const Instance& inst, int cap) {
    return solve_instance(inst, 0, false, false, 1, cap, "opt_unbounded");
}

OracleResult opt_bounded(const Instance& inst, long g) {
    return opt_bounded(inst, g, oracle_caps().bounded);
}

OracleResult opt_bounded(const Instance& inst, long g, int cap) {
    if (g < 1) throw PreconditionError("opt_bounded requires g >= 1");
    return solve_instance(inst, g, false, false, 1, cap, "opt_bounded");
}

OracleResult opt_agreeable_ordered(const Instance& inst) {
    return opt_agreeable_ordered(inst, oracle_caps().agreeable);
}

OracleResult opt_agreeable_ordered(const Instance& inst, int cap) {
    if (!inst.g.is_unbounded())
        throw PreconditionError("opt_agreeable_ordered requires unbounded parallelism");
    if (!classify(inst).agreeable)
        throw PreconditionError("opt_agreeable_ordered requires an agreeable instance");
    return solve_instance(inst, 0, true, false, 1, cap, "opt_agreeable_ordered");
}

OracleResult opt_fine_grid(const Instance& inst, long refine) {
    if (refine < 1) throw ConfigError("grid refinement must be at least 1");
    const long g = inst.g.is_unbounded() ? 0 : inst.g.value();
    const int cap = g > 0 ? oracle_caps().bounded : oracle_caps().unbounded;
    return solve_instance(inst, g, false, true, refine, cap, "opt_fine_grid");
}

LowerBounds lower_bounds(const Instance& inst) {
    validate(inst);
    LowerBounds lb;
    lb.load_over_g = 0;
    if (!inst.g.is_unbounded()) lb.load_over_g = load(inst) / Time(inst.g.value());
    lb.max_job = 0;
    for (const Job& j : inst.jobs) lb.max_job = std::max(lb.max_job, j.processing);
    return lb;
}

Time rearrangement_upper_bound(const Instance& inst, const Schedule& alg) {
    if (!inst.g.is_unbounded())
        throw PreconditionError("the rearrangement bound applies to unbounded parallelism only");
    if (!check_feasible(inst, alg).empty())
        throw ConstructionError("rearrangement needs a feasible input schedule");
    if (alg.assignments.empty()) return Time(0);
    IntervalSet busy;
    for (const Assignment& a : alg.assignments) {
        const Job* j = inst.find(a.job_id);
        busy.insert(a.start, a.start + j->processing);
    }
    const auto& stretches = busy.intervals();
    std::vector<std::vector<const Assignment*>> members(stretches.size());
    for (const Assignment& a : alg.assignments) {
        // the stretch whose [lo, hi) contains the start
        auto it = std::upper_bound(stretches.begin(), stretches.end(), a.start,
                                   [](const Time& v, const std::pair<Time, Time>& iv) {
                                       return v < iv.first;
                                   });
        members[static_cast<std::size_t>(it - stretches.begin()) - 1].push_back(&a);
    }
    std::vector<Time> spans;
    spans.reserve(stretches.size());
    for (const auto& [lo, hi] : stretches) spans.push_back(hi - lo);
    std::vector<std::size_t> chosen = independent_half(spans);
    std::set<std::size_t> collapse(chosen.begin(), chosen.end());
    Schedule rearranged;
    for (std::size_t si = 0; si < stretches.size(); ++si) {
        // earliest start wins the right to move left; everyone else moves right
        int anchor_id = -1;
        Time anchor_start;
        for (const Assignment* a : members[si]) {
            if (anchor_id < 0 || a->start < anchor_start ||
                (a->start == anchor_start && a->job_id < anchor_id)) {
                anchor_id = a->job_id;
                anchor_start = a->start;
            }
        }
        for (const Assignment* a : members[si]) {
            const Job* j = inst.find(a->job_id);
            Time s = a->start;
            if (collapse.count(si)) s = a->job_id == anchor_id ? j->release : j->latest_start();
            rearranged.assignments.push_back(Assignment{a->job_id, 0, s});
        }
    }
    std::sort(rearranged.assignments.begin(), rearranged.assignments.end(),
              [](const Assignment& a, const Assignment& b) { return a.job_id < b.job_id; });
    auto violations = check_feasible(inst, rearranged);
    if (!violations.empty())
        throw ConstructionError("rearranged schedule failed validation: " +
                                violations.front().detail);
    return busy_time(inst, rearranged);
}

}  // namespace busytime
