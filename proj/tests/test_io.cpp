#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "busytime/errors.hpp"
#include "busytime/io.hpp"
#include "test_util.hpp"

using namespace busytime;
using namespace busytime::testutil;
using nlohmann::json;

TEST_CASE("[io] times accept integers and exact strings only") {
    CHECK(time_from_json(json(3)) == Time(3));
    CHECK(time_from_json(json("-7/2")) == parse_time("-7/2"));
    CHECK(time_from_json(json("0.25")) == parse_time("1/4"));
    CHECK_THROWS_AS(time_from_json(json(0.25)), ParseError);  // inexact double
    CHECK_THROWS_AS(time_from_json(json(nullptr)), ParseError);
    CHECK_THROWS_AS(time_from_json(json("x")), ParseError);
    CHECK(time_to_json(parse_time("3/2")) == json("3/2"));
    CHECK(time_to_json(Time(4)) == json("4"));
}

TEST_CASE("[io] instance documents round-trip") {
    json doc = {
        {"g", 2},
        {"lookahead", "1/2"},
        {"jobs", json::array({json{{"id", 1}, {"r", 0}, {"d", "7/2"}, {"p", "0.5"}},
                              json{{"id", 2}, {"r", "1"}, {"d", 3}, {"p", 1}}})},
    };
    Instance inst = instance_from_json(doc);
    CHECK(inst.g == Parallelism::bounded(2));
    CHECK(inst.lookahead == parse_time("1/2"));
    REQUIRE(inst.jobs.size() == 2);
    CHECK(inst.jobs[0].deadline == parse_time("7/2"));
    CHECK(inst.jobs[0].processing == parse_time("1/2"));

    Instance again = instance_from_json(instance_to_json(inst));
    CHECK(instance_to_json(again) == instance_to_json(inst));
}

TEST_CASE("[io] instance parallelism accepts inf or a positive integer") {
    json doc = {{"g", "inf"}, {"lookahead", 0}, {"jobs", json::array()}};
    CHECK(instance_from_json(doc).g.is_unbounded());
    doc["g"] = 0;
    CHECK_THROWS_AS(instance_from_json(doc), ParseError);
    doc["g"] = "many";
    CHECK_THROWS_AS(instance_from_json(doc), ParseError);
}

TEST_CASE("[io] instances missing defaults or structure are rejected") {
    // g and lookahead default to inf and 0
    json bare = {{"jobs", json::array({json{{"id", 1}, {"r", 0}, {"d", 2}, {"p", 1}}})}};
    Instance inst = instance_from_json(bare);
    CHECK(inst.g.is_unbounded());
    CHECK(inst.lookahead == Time(0));

    CHECK_THROWS_AS(instance_from_json(json::array()), ParseError);
    CHECK_THROWS_AS(instance_from_json(json{{"g", 1}}), ParseError);

    // invalid jobs are caught by validation
    json dup = {{"jobs", json::array({json{{"id", 1}, {"r", 0}, {"d", 2}, {"p", 1}},
                                      json{{"id", 1}, {"r", 0}, {"d", 2}, {"p", 1}}})}};
    CHECK_THROWS_AS(instance_from_json(dup), ValidationError);
    json tight = {{"jobs", json::array({json{{"id", 1}, {"r", 0}, {"d", 1}, {"p", 2}}})}};
    CHECK_THROWS_AS(instance_from_json(tight), ValidationError);
}

TEST_CASE("[io] read_instance wraps stream and parse failures") {
    std::istringstream good(R"({"g": "inf", "lookahead": 0,
        "jobs": [{"id": 1, "r": 0, "d": 2, "p": 1}]})");
    Instance inst = read_instance(good);
    CHECK(inst.jobs.size() == 1);

    std::istringstream bad("{not json");
    CHECK_THROWS_AS(read_instance(bad), ParseError);
    CHECK_THROWS_AS(read_instance_file("/nonexistent/busytime.json"), ParseError);
}

TEST_CASE("[io] schedule documents carry assignments and busy time") {
    Instance inst = mkinst(Parallelism::unbounded(), {mkjob(1, 0, 2, 1), mkjob(2, 1, 3, 1)});
    Schedule sched{{{1, 0, Time(1)}, {2, 0, Time(1)}}};
    json doc = schedule_to_json(inst, sched);
    CHECK(doc.at("busy_time") == json("1"));
    REQUIRE(doc.at("assignments").size() == 2);
    CHECK(doc.at("assignments")[0].at("s") == json("1"));

    Schedule back = schedule_from_json(doc);
    CHECK(back == sched);

    CHECK_THROWS_AS(schedule_from_json(json{{"assignments", 5}}), ParseError);
    CHECK_THROWS_AS(schedule_from_json(json::object()), ParseError);

    Schedule infeasible{{{1, 0, Time(2)}, {2, 0, Time(1)}}};
    CHECK_THROWS_AS(schedule_to_json(inst, infeasible), FeasibilityError);
}
