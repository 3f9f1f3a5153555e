#include <doctest.h>

#include <vector>

#include "busytime/algorithms.hpp"
#include "busytime/engine.hpp"
#include "busytime/errors.hpp"
#include "busytime/generator.hpp"
#include "busytime/schedule.hpp"
#include "test_util.hpp"

using namespace busytime;
using namespace busytime::testutil;

namespace {

const Time* start_of(const Schedule& sched, int id) {
    for (const Assignment& a : sched.assignments)
        if (a.job_id == id) return &a.start;
    return nullptr;
}

}  // namespace

TEST_CASE("[unbounded-uniform] a covered job rides an open stretch") {
    Instance inst =
        mkinst(Parallelism::unbounded(), {mkjob(1, "0", "3", "1"), mkjob(2, "1/2", "5", "1")});
    UnboundedUniformScheduler sched(rat("1/2"));
    Schedule out = simulate(inst, sched);
    REQUIRE(start_of(out, 1) != nullptr);
    REQUIRE(start_of(out, 2) != nullptr);
    CHECK(*start_of(out, 1) == Time(2));
    CHECK(*start_of(out, 2) == Time(2));
    CHECK(busy_time(inst, out) == Time(1));
    CHECK(sched.reported_cost(inst, out) == rat("3/2"));
    REQUIRE(sched.flags().size() == 1);
    CHECK(sched.flags()[0].job_id == 1);
    CHECK(sched.flags()[0].flag_start == Time(2));
    CHECK(sched.flags()[0].open_until == rat("7/2"));
}

TEST_CASE("[unbounded-uniform] a lone job waits for its latest start") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 5, 1)});
    UnboundedUniformScheduler sched(Time(0));
    Schedule out = simulate(inst, sched);
    CHECK(*start_of(out, 1) == Time(4));
    CHECK(sched.reported_cost(inst, out) == Time(1));
    REQUIRE(sched.flags().size() == 1);
    CHECK(sched.flags()[0].open_until == Time(5));
}

TEST_CASE("[unbounded-uniform] empty instances cost nothing") {
    Instance inst = mkinst(Parallelism::unbounded(), {});
    UnboundedUniformScheduler sched(Time(0));
    Schedule out = simulate(inst, sched);
    CHECK(sched.reported_cost(inst, out) == Time(0));
}

TEST_CASE("[unbounded-uniform] longer processing times stretch the tail") {
    Instance inst =
        mkinst(Parallelism::unbounded(), {mkjob(1, 0, 6, 2), mkjob(2, "9/2", "10", "2")});
    UnboundedUniformScheduler sched(rat("1/2"));
    Schedule out = simulate(inst, sched);
    CHECK(*start_of(out, 1) == Time(4));
    CHECK(*start_of(out, 2) == rat("9/2"));
    CHECK(sched.reported_cost(inst, out) == Time(3));
    REQUIRE(sched.flags().size() == 1);
    CHECK(sched.flags()[0].open_until == Time(7));
}

TEST_CASE("[unbounded-uniform] the tail fraction must lie in the unit interval") {
    CHECK_THROWS_AS(UnboundedUniformScheduler(rat("-1/10")), ConfigError);
    CHECK_THROWS_AS(UnboundedUniformScheduler(Time(1)), ConfigError);
    CHECK_THROWS_AS(make_scheduler("unbounded-uniform:alpha=1"), ConfigError);
    CHECK(make_scheduler("unbounded-uniform:alpha=99/100")->name() ==
          "unbounded-uniform:alpha=99/100");
    CHECK(make_scheduler("unbounded-uniform")->name() == "unbounded-uniform:alpha=0");
}

TEST_CASE("[unbounded-uniform] mixed processing times and bounded machines are refused") {
    UnboundedUniformScheduler sched(Time(0));
    Instance mixed = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1), mkjob(2, 0, 4, 2)});
    CHECK_THROWS_AS(simulate(mixed, sched), PreconditionError);
    UnboundedUniformScheduler sched2(Time(0));
    Instance bounded = mkinst(Parallelism::bounded(2), {mkjob(1, 0, 2, 1)});
    CHECK_THROWS_AS(simulate(bounded, sched2), PreconditionError);
}

TEST_CASE("[unbounded-uniform] committed cost bounds and flag separation hold") {
    std::vector<Time> alphas = {Time(0), rat("1/2")};
    for (unsigned seed : {11u, 12u, 13u, 14u}) {
        for (const Time& alpha : alphas) {
            GenSpec spec;
            spec.seed = seed;
            spec.n = 7;
            spec.horizon = 9;
            Instance inst = gen_random(spec);
            UnboundedUniformScheduler sched(alpha);
            Schedule out = simulate(inst, sched);
            Time busy = busy_time(inst, out);  // throws if infeasible
            Time reported = sched.reported_cost(inst, out);
            CHECK(busy <= reported);
            Time stretch = Time(1) + alpha;  // uniform p is 1
            Time cap = Time(static_cast<long>(sched.flags().size())) * stretch;
            CHECK(reported <= cap);
            const std::vector<FlagRecord>& flags = sched.flags();
            for (std::size_t i = 0; i + 1 < flags.size(); ++i) {
                const Job* next = inst.find(flags[i + 1].job_id);
                REQUIRE(next != nullptr);
                Time fence = flags[i].flag_start + alpha;
                CHECK(fence < next->release);
            }
        }
    }
}

TEST_CASE("[unbounded-uniform] behaviour is invariant under time scaling") {
    Instance inst =
        mkinst(Parallelism::unbounded(), {mkjob(1, "0", "3", "1"), mkjob(2, "1/2", "5", "1")});
    Instance scaled = inst;
    for (Job& j : scaled.jobs) {
        Time r = j.release * rat("3/2");
        Time d = j.deadline * rat("3/2");
        Time p = j.processing * rat("3/2");
        j.release = r;
        j.deadline = d;
        j.processing = p;
    }
    UnboundedUniformScheduler a(rat("1/2"));
    UnboundedUniformScheduler b(rat("1/2"));
    Schedule base = simulate(inst, a);
    Schedule big = simulate(scaled, b);
    for (const Assignment& asg : base.assignments) {
        const Time* s = start_of(big, asg.job_id);
        REQUIRE(s != nullptr);
        Time expect = asg.start * rat("3/2");
        CHECK(*s == expect);
    }
    Time expect_cost = a.reported_cost(inst, base) * rat("3/2");
    CHECK(b.reported_cost(scaled, big) == expect_cost);
}
