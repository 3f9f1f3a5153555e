#include "busytime/io.hpp"

#include <fstream>
#include <sstream>

#include "busytime/errors.hpp"

namespace busytime {

using nlohmann::json;

Time time_from_json(const json& v) {
    if (v.is_number_integer()) return Time(BigInt(v.get<std::int64_t>()));
    if (v.is_number())
        throw ParseError("non-integral JSON numbers are inexact, write the time as a string");
    if (v.is_string()) return parse_time(v.get<std::string>());
    throw ParseError("time must be an integer or a string, got " + v.dump());
}

json time_to_json(const Time& t) { return time_to_string(t); }

namespace {

Parallelism parallelism_from_json(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return Parallelism::unbounded();
        throw ParseError("g must be a positive integer or \"inf\"");
    }
    if (v.is_number_integer()) {
        const auto g = v.get<std::int64_t>();
        if (g < 1) throw ParseError("g must be a positive integer or \"inf\"");
        return Parallelism::bounded(static_cast<long>(g));
    }
    throw ParseError("g must be a positive integer or \"inf\"");
}

}  // namespace

Instance instance_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    Instance inst;
    inst.g = doc.contains("g") ? parallelism_from_json(doc.at("g")) : Parallelism::unbounded();
    inst.lookahead = doc.contains("lookahead") ? time_from_json(doc.at("lookahead")) : Time(0);
    if (!doc.contains("jobs") || !doc.at("jobs").is_array())
        throw ParseError("instance document needs a \"jobs\" array");
    for (const json& jj : doc.at("jobs")) {
        Job j;
        j.id = jj.at("id").get<int>();
        j.release = time_from_json(jj.at("r"));
        j.deadline = time_from_json(jj.at("d"));
        j.processing = time_from_json(jj.at("p"));
        inst.jobs.push_back(std::move(j));
    }
    validate(inst);
    return inst;
}

json instance_to_json(const Instance& inst) {
    json doc;
    doc["g"] = inst.g.is_unbounded() ? json("inf") : json(inst.g.value());
    doc["lookahead"] = time_to_json(inst.lookahead);
    json jobs = json::array();
    for (const Job& j : inst.jobs)
        jobs.push_back({{"id", j.id},
                        {"r", time_to_json(j.release)},
                        {"d", time_to_json(j.deadline)},
                        {"p", time_to_json(j.processing)}});
    doc["jobs"] = std::move(jobs);
    return doc;
}

Instance read_instance(std::istream& in) {
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_instance(in);
}

Schedule schedule_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("assignments") || !doc.at("assignments").is_array())
        throw ParseError("schedule document needs an \"assignments\" array");
    Schedule s;
    for (const json& aj : doc.at("assignments")) {
        Assignment a;
        a.job_id = aj.at("id").get<int>();
        a.machine = aj.at("machine").get<int>();
        a.start = time_from_json(aj.at("s"));
        s.assignments.push_back(std::move(a));
    }
    return s;
}

json schedule_to_json(const Instance& inst, const Schedule& sched) {
    json doc;
    json arr = json::array();
    for (const Assignment& a : sched.assignments)
        arr.push_back({{"id", a.job_id}, {"machine", a.machine}, {"s", time_to_json(a.start)}});
    doc["assignments"] = std::move(arr);
    doc["busy_time"] = time_to_string(busy_time(inst, sched));
    return doc;
}

Schedule read_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return schedule_from_json(doc);
}

}  // namespace busytime
