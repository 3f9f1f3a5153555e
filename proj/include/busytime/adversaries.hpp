#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "busytime/engine.hpp"

namespace busytime {

/// Adaptive construction that strings unit jobs into components. It opens
/// with one job due at time 1. On every committed decision with start s: if
/// s is before the current component's flag deadline, a fresh job appears at
/// s + epsilon with the component's deadline (a multiple of 3); otherwise
/// the decided job is promoted to the next component's flag, the flag
/// deadline becomes its deadline, and the released job's deadline advances
/// to the next multiple of 3. Goes silent after k components.
class ComponentChainAdversary final : public Adversary {
public:
    ComponentChainAdversary(int k, const Time& epsilon);
    explicit ComponentChainAdversary(int k);  // epsilon = 1 / k^2
    std::string name() const override;
    std::vector<Job> initial_jobs() override;
    std::vector<Job> on_decision(const Decision& decision, const Job& job) override;
    bool finished() const override;

    int rounds() const { return k_; }
    const Time& epsilon() const { return epsilon_; }
    int component() const { return component_; }

private:
    int k_;
    Time epsilon_;
    int component_ = 1;
    Time flag_deadline_ = 1;
    int next_id_ = 2;
};

/// Two-branch probe for parallelism 2: releases a tight unit job [0,1] and a
/// loose one [0,3] at time 0. If the loose job starts at s2 <= alpha, it
/// answers with a rigid unit job at s2 plus a rigid job filling [2,3];
/// otherwise it stays silent. Either branch forces cost well above the
/// optimum when alpha is close to its best value.
class BranchProbeAdversary final : public Adversary {
public:
    explicit BranchProbeAdversary(const Time& alpha);
    std::string name() const override;
    std::vector<Job> initial_jobs() override;
    std::vector<Job> on_decision(const Decision& decision, const Job& job) override;
    bool finished() const override;

    const Time& alpha() const { return alpha_; }
    /// Start of the loose job, once observed.
    const std::optional<Time>& observed_start() const { return s2_; }

private:
    Time alpha_;
    bool done_ = false;
    std::optional<Time> s2_;
};

/// Rational stand-in for sqrt(2) - 1, accurate to a millionth: 414214/1000000.
Time default_branch_alpha();

/// Builds an adversary from its CLI token: "thm1" (ComponentChainAdversary,
/// epsilon defaults to 1/k^2) or "lemma5" (BranchProbeAdversary, alpha
/// defaults to default_branch_alpha()). Unknown tokens raise ConfigError.
std::unique_ptr<Adversary> make_adversary(const std::string& type, int k,
                                          const std::optional<Time>& epsilon,
                                          const std::optional<Time>& alpha);

}  // namespace busytime
