#include <doctest.h>

#include <algorithm>
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

Time start_of(const Schedule& sched, int id) {
    const Assignment* a = sched.find(id);
    REQUIRE(a != nullptr);
    return a->start;
}

std::vector<std::size_t> bundle_sizes(const UniformBoundedScheduler& sched) {
    std::vector<std::size_t> sizes;
    for (const UniformBundle& b : sched.bundles()) sizes.push_back(b.member_ids.size());
    return sizes;
}

}  // namespace

TEST_CASE("[uniform-bounded] rigid jobs beyond capacity spill to a fresh machine") {
    Instance inst = mkinst(Parallelism::bounded(2),
                           {mkjob(1, 0, 1, 1), mkjob(2, 0, 1, 1), mkjob(3, 0, 1, 1)});
    UniformBoundedScheduler sched;
    Schedule out = simulate(inst, sched);
    CHECK(busy_time(inst, out) == Time(2));
    CHECK(bundle_sizes(sched) == std::vector<std::size_t>{2, 1});
    CHECK(sched.bundles()[0].machine == 0);
    CHECK(sched.bundles()[1].machine == 1);
}

TEST_CASE("[uniform-bounded] a flexible job joins the bundle a rigid one opens") {
    Instance inst = mkinst(Parallelism::bounded(2), {mkjob(1, 0, 1, 1), mkjob(2, 0, 10, 1)});
    UniformBoundedScheduler sched;
    Schedule out = simulate(inst, sched);
    CHECK(busy_time(inst, out) == Time(1));
    CHECK(start_of(out, 2) == Time(0));
    REQUIRE(sched.bundles().size() == 1);
    CHECK(sched.bundles()[0].member_ids == std::vector<int>{1, 2});
}

TEST_CASE("[uniform-bounded] a lone job waits for its latest start") {
    Instance inst = mkinst(Parallelism::bounded(2), {mkjob(1, 0, 5, 1)});
    UniformBoundedScheduler sched;
    Schedule out = simulate(inst, sched);
    CHECK(start_of(out, 1) == Time(4));
    CHECK(busy_time(inst, out) == Time(1));
}

TEST_CASE("[uniform-bounded] the join window closes one processing time after the flag") {
    SUBCASE("a job revealed inside the window joins") {
        Instance inst =
            mkinst(Parallelism::bounded(2), {mkjob(1, 0, 1, 1), mkjob(2, "1/2", "9", "1")});
        UniformBoundedScheduler sched;
        Schedule out = simulate(inst, sched);
        CHECK(start_of(out, 2) == rat("1/2"));
        CHECK(sched.bundles().size() == 1);
        CHECK(busy_time(inst, out) == rat("3/2"));
    }
    SUBCASE("a job revealed after the window waits for its own bundle") {
        Instance inst =
            mkinst(Parallelism::bounded(2), {mkjob(1, 0, 1, 1), mkjob(2, "3/2", "9", "1")});
        UniformBoundedScheduler sched;
        Schedule out = simulate(inst, sched);
        CHECK(start_of(out, 2) == Time(8));
        CHECK(sched.bundles().size() == 2);
        CHECK(busy_time(inst, out) == Time(2));
    }
}

TEST_CASE("[uniform-bounded] five rigid jobs pack two machines and spill once more") {
    std::vector<Job> jobs;
    for (int i = 1; i <= 5; ++i) jobs.push_back(mkjob(i, 0, 1, 1));
    Instance inst = mkinst(Parallelism::bounded(2), jobs);
    UniformBoundedScheduler sched;
    Schedule out = simulate(inst, sched);
    CHECK(busy_time(inst, out) == Time(3));
    CHECK(bundle_sizes(sched) == std::vector<std::size_t>{2, 2, 1});
}

TEST_CASE("[uniform-bounded] preconditions cover processing times and parallelism") {
    UniformBoundedScheduler a;
    Instance mixed = mkinst(Parallelism::bounded(2), {mkjob(1, 0, 2, 1), mkjob(2, 0, 4, 2)});
    CHECK_THROWS_AS(simulate(mixed, a), PreconditionError);

    UniformBoundedScheduler b;
    Instance unbounded = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1)});
    CHECK_THROWS_AS(simulate(unbounded, b), PreconditionError);

    UniformBoundedScheduler c;
    Instance serial = mkinst(Parallelism::bounded(1), {mkjob(1, 0, 2, 1)});
    CHECK_THROWS_AS(simulate(serial, c), PreconditionError);
}

TEST_CASE("[uniform-bounded] bundles respect capacity and the join window when generated") {
    for (unsigned seed : {31u, 32u, 33u, 34u}) {
        for (long g : {2L, 3L}) {
            GenSpec spec;
            spec.seed = seed;
            spec.n = 7;
            spec.horizon = 9;
            spec.g = Parallelism::bounded(g);
            Instance inst = gen_random(spec);
            UniformBoundedScheduler sched;
            Schedule out = simulate(inst, sched);
            Time busy = busy_time(inst, out);  // throws if infeasible
            const Time p(1);                   // uniform class processing time
            std::size_t placed = 0;
            for (const UniformBundle& b : sched.bundles()) {
                CHECK(b.member_ids.size() <= static_cast<std::size_t>(g));
                CHECK(start_of(out, b.flag_id) == b.flag_start);
                Time close = b.flag_start + p;
                for (int id : b.member_ids) {
                    Time s = start_of(out, id);
                    CHECK(b.flag_start <= s);
                    CHECK(s <= close);
                    const Assignment* asg = out.find(id);
                    CHECK(asg->machine == b.machine);
                }
                placed += b.member_ids.size();
            }
            CHECK(placed == inst.jobs.size());
            Time cap = Time(static_cast<long>(sched.bundles().size())) * Time(2) * p;
            CHECK(busy <= cap);
        }
    }
}
