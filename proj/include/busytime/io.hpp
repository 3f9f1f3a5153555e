#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "busytime/job.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

/// Accepts an integer literal, a decimal string or a fraction string.
/// Non-integral JSON numbers are rejected; exact values must be quoted.
Time time_from_json(const nlohmann::json& v);

/// Canonical form: plain string, "3" or "-7/2".
nlohmann::json time_to_json(const Time& t);

/// Instance document: {"g": <positive int>|"inf", "lookahead": <time>,
/// "jobs": [{"id": <int>, "r": <time>, "d": <time>, "p": <time>}, ...]}.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);

/// Schedule document: {"assignments": [{"id": <int>, "machine": <int>,
/// "s": <time>}, ...], "busy_time": <fraction string>}.
Schedule schedule_from_json(const nlohmann::json& doc);
nlohmann::json schedule_to_json(const Instance& inst, const Schedule& sched);
Schedule read_schedule_file(const std::string& path);

}  // namespace busytime
