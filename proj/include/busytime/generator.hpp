#pragma once

#include <cstdint>
#include <string>

#include "busytime/job.hpp"

namespace busytime {

enum class JobClass { uniform, agreeable, arbitrary, rigid };

/// "uniform" | "agreeable" | "arbitrary" | "rigid"; ConfigError otherwise.
JobClass job_class_from_string(const std::string& text);
std::string to_string(JobClass c);

/// Parameters for deterministic random instances. Times land on the
/// half-integer grid inside [0, horizon]. The uniform class pins p = 1,
/// agreeable sorts releases and lifts deadlines to keep their order, rigid
/// pins d = r + p, arbitrary draws p from {1/2, 1, 3/2, 2}.
struct GenSpec {
    std::uint64_t seed = 1;
    int n = 1;
    JobClass job_class = JobClass::uniform;
    Parallelism g = Parallelism::unbounded();
    long horizon = 10;
    Time lookahead = 0;
    bool lookahead_pmax = false;  // replaces lookahead with the longest p drawn
};

/// Deterministic: identical specs produce identical instances on every
/// platform (raw engine words are sampled directly, never through library
/// distributions). Job ids run 1..n in release order for the agreeable
/// class and in draw order otherwise. Throws ConfigError on impossible
/// parameters.
Instance gen_random(const GenSpec& spec);

}  // namespace busytime
