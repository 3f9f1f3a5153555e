#include "busytime/adversaries.hpp"

#include "busytime/errors.hpp"

namespace busytime {

ComponentChainAdversary::ComponentChainAdversary(int k, const Time& epsilon)
    : k_(k), epsilon_(epsilon) {
    if (k_ < 2) throw ConfigError("component chain needs k >= 2");
    if (!(Time(0) < epsilon_) || !(epsilon_ * Time(k_) < Time(1)))
        throw ConfigError("component chain needs 0 < epsilon < 1/k");
}

ComponentChainAdversary::ComponentChainAdversary(int k)
    : ComponentChainAdversary(k, k >= 2 ? Time(1) / Time(static_cast<long long>(k) * k)
                                        : Time(1)) {}

std::string ComponentChainAdversary::name() const {
    return "thm1:k=" + std::to_string(k_) + ",epsilon=" + time_to_string(epsilon_);
}

std::vector<Job> ComponentChainAdversary::initial_jobs() {
    component_ = 1;
    flag_deadline_ = 1;
    next_id_ = 2;
    return {Job{1, Time(0), Time(1), Time(1)}};
}

std::vector<Job> ComponentChainAdversary::on_decision(const Decision& decision, const Job& job) {
    if (finished()) return {};
    const Time& s = decision.start;
    if (!(s < flag_deadline_)) {
        // the delayed job anchors the next component
        flag_deadline_ = job.deadline;
        component_ += 1;
        if (finished()) return {};
    }
    Job next{next_id_++, s + epsilon_, Time(3 * component_), Time(1)};
    return {next};
}

bool ComponentChainAdversary::finished() const { return component_ > k_; }

BranchProbeAdversary::BranchProbeAdversary(const Time& alpha) : alpha_(alpha) {
    if (alpha_ < 0 || Time(1) < alpha_) throw ConfigError("branch probe needs alpha in [0, 1]");
}

std::string BranchProbeAdversary::name() const {
    return "lemma5:alpha=" + time_to_string(alpha_);
}

std::vector<Job> BranchProbeAdversary::initial_jobs() {
    done_ = false;
    s2_.reset();
    return {Job{1, Time(0), Time(1), Time(1)}, Job{2, Time(0), Time(3), Time(1)}};
}

std::vector<Job> BranchProbeAdversary::on_decision(const Decision& decision, const Job&) {
    if (done_ || decision.job_id != 2) return {};
    done_ = true;
    s2_ = decision.start;
    if (!(alpha_ < *s2_)) {
        return {Job{3, *s2_, *s2_ + Time(1), Time(1)}, Job{4, Time(2), Time(3), Time(1)}};
    }
    return {};
}

bool BranchProbeAdversary::finished() const { return done_; }

Time default_branch_alpha() { return Time(414214) / Time(1000000); }

std::unique_ptr<Adversary> make_adversary(const std::string& type, int k,
                                          const std::optional<Time>& epsilon,
                                          const std::optional<Time>& alpha) {
    if (type == "thm1") {
        if (epsilon) return std::make_unique<ComponentChainAdversary>(k, *epsilon);
        return std::make_unique<ComponentChainAdversary>(k);
    }
    if (type == "lemma5") {
        return std::make_unique<BranchProbeAdversary>(alpha ? *alpha : default_branch_alpha());
    }
    throw ConfigError("unknown adversary type: " + type);
}

}  // namespace busytime
