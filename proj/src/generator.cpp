#include "busytime/generator.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "busytime/errors.hpp"

namespace busytime {

namespace {

/// Deterministic integer sampler over a standard engine. Library
/// distributions are implementation-defined, so bounded draws come straight
/// from engine words.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}
    long next(long bound) {  // value in [0, bound)
        return static_cast<long>((eng_() >> 11) % static_cast<std::uint64_t>(bound));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace

JobClass job_class_from_string(const std::string& text) {
    if (text == "uniform") return JobClass::uniform;
    if (text == "agreeable") return JobClass::agreeable;
    if (text == "arbitrary") return JobClass::arbitrary;
    if (text == "rigid") return JobClass::rigid;
    throw ConfigError("unknown job class: " + text);
}

std::string to_string(JobClass c) {
    switch (c) {
        case JobClass::uniform: return "uniform";
        case JobClass::agreeable: return "agreeable";
        case JobClass::arbitrary: return "arbitrary";
        case JobClass::rigid: return "rigid";
    }
    throw ConfigError("unknown job class value");
}

Instance gen_random(const GenSpec& spec) {
    if (spec.n < 1) throw ConfigError("generator needs n >= 1");
    if (spec.horizon < 1) throw ConfigError("generator needs horizon >= 1");
    Sampler rng(spec.seed);
    const long grid = 2 * spec.horizon;  // all draws count half-units
    auto half = [](long halves) -> Time { return Time(halves) / Time(2); };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        long p2 = 0, r2 = 0, d2 = 0;
        switch (spec.job_class) {
            case JobClass::uniform:
                p2 = 2;
                r2 = rng.next(grid - 1);                    // [0, grid - 2]
                d2 = r2 + 2 + rng.next(grid - r2 - 1);      // [r2 + 2, grid]
                break;
            case JobClass::arbitrary:
            case JobClass::agreeable:
                p2 = 1 + rng.next(std::min<long>(4, grid));
                r2 = rng.next(grid - p2 + 1);
                d2 = r2 + p2 + rng.next(grid - r2 - p2 + 1);
                break;
            case JobClass::rigid:
                p2 = 1 + rng.next(std::min<long>(4, grid));
                r2 = rng.next(grid - p2 + 1);
                d2 = r2 + p2;
                break;
        }
        jobs.push_back(Job{0, half(r2), half(d2), half(p2)});
    }
    if (spec.job_class == JobClass::agreeable) {
        std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
            if (a.release != b.release) return a.release < b.release;
            return a.deadline < b.deadline;
        });
        for (std::size_t i = 1; i < jobs.size(); ++i)
            jobs[i].deadline = std::max(jobs[i].deadline, jobs[i - 1].deadline);
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].id = static_cast<int>(i) + 1;
    Instance inst;
    inst.g = spec.g;
    inst.lookahead = spec.lookahead;
    if (spec.lookahead_pmax) {
        Time pmax = 0;
        for (const Job& j : jobs) pmax = std::max(pmax, j.processing);
        inst.lookahead = pmax;
    }
    inst.jobs = std::move(jobs);
    validate(inst);
    return inst;
}

}  // namespace busytime
