#include "busytime/job.hpp"

#include <unordered_set>

namespace busytime {

void validate(const Job& job) {
    if (!(job.processing > 0))
        throw ValidationError("job " + std::to_string(job.id) + ": processing time must be positive");
    if (job.release + job.processing > job.deadline)
        throw ValidationError("job " + std::to_string(job.id) + ": window shorter than processing time");
}

const Job* Instance::find(int id) const {
    for (const Job& j : jobs)
        if (j.id == id) return &j;
    return nullptr;
}

void validate(const Instance& inst) {
    if (inst.lookahead < 0) throw ValidationError("lookahead must be non-negative");
    std::unordered_set<int> ids;
    for (const Job& j : inst.jobs) {
        validate(j);
        if (!ids.insert(j.id).second)
            throw ValidationError("duplicate job id " + std::to_string(j.id));
    }
}

Classification classify(const Instance& inst) {
    Classification c{true, true, true};
    const auto& jobs = inst.jobs;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].processing != jobs[0].processing) c.uniform = false;
        if (!jobs[i].rigid()) c.rigid = false;
        for (std::size_t k = 0; k < jobs.size(); ++k)
            if (jobs[i].release < jobs[k].release && jobs[i].deadline > jobs[k].deadline)
                c.agreeable = false;
    }
    return c;
}

Time load(const Instance& inst) {
    Time total;
    for (const Job& j : inst.jobs) total += j.processing;
    return total;
}

}  // namespace busytime
