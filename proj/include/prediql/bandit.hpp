#pragma once

#include "prediql/execution.hpp"
#include "prediql/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prediql {

enum class ArgMode { Known, Real, Nulls };

const char* arg_mode_name(ArgMode mode); // "known" | "real" | "nulls"
ArgMode arg_mode_from(const std::string& name);

// One prompting strategy: schema inclusion, argument synthesis mode,
// selection depth cap, and retrieval top-k.
struct Arm {
    std::string id;
    bool include_schema = true;
    ArgMode arg_mode = ArgMode::Real;
    int depth = 1;  // 1..3
    int top_k = 3;  // 0, 3, or 5

    bool operator==(const Arm&) const = default;
};

// The eight default arms.
std::vector<Arm> default_arm_set();

struct ArmPosterior {
    double s = 0.0; // discounted success mass
    double f = 0.0; // discounted failure mass
    bool operator==(const ArmPosterior&) const = default;
};

struct ArmStat {
    std::string arm_id;
    double s = 0.0;
    double f = 0.0;
    double posterior_mean = 0.5; // (1+s)/(2+s+f)
};

// Thompson sampling over Beta(1+s, 1+f) posteriors with exponentially
// discounted reward mass. Mutated by a single owner (the campaign loop).
class BanditState {
public:
    // Throws ConfigError on an empty arm list or gamma outside (0, 1].
    BanditState(std::vector<Arm> arms, double gamma, std::uint64_t seed);

    // Draws one Beta sample per arm from the seeded generator and returns the
    // argmax; ties break toward the lowest arm index.
    const std::string& select_arm();

    // reward must be 0 or 1. Default schedule touches only the chosen arm:
    // s <- γ·s + r, f <- γ·f + (1-r). With decay_idle_arms every posterior
    // decays by γ each update before the chosen arm accrues the reward.
    void update(const std::string& arm_id, int reward);

    // Sorted by posterior mean descending; ties break by arm id.
    std::vector<ArmStat> stats() const;

    const std::vector<Arm>& arms() const { return arms_; }
    const Arm& arm(const std::string& id) const;
    const ArmPosterior& posterior(const std::string& id) const;
    double gamma() const { return gamma_; }

    bool decay_idle_arms = false;

private:
    std::size_t index_of(const std::string& id) const;

    std::vector<Arm> arms_;
    std::vector<ArmPosterior> posteriors_;
    double gamma_;
    SplitMix64 rng_;
};

// 1 iff the query came back HTTP 200 with no GraphQL errors AND it expanded
// coverage; everything else earns 0.
int reward_signal(const Outcome& outcome, bool coverage_delta);

} // namespace prediql
