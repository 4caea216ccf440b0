#include "prediql/bandit.hpp"

#include "prediql/errors.hpp"

#include <algorithm>

namespace prediql {

const char* arg_mode_name(ArgMode mode) {
    switch (mode) {
    case ArgMode::Known: return "known";
    case ArgMode::Real: return "real";
    case ArgMode::Nulls: return "nulls";
    }
    return "real";
}

ArgMode arg_mode_from(const std::string& name) {
    if (name == "known") {
        return ArgMode::Known;
    }
    if (name == "real") {
        return ArgMode::Real;
    }
    if (name == "nulls") {
        return ArgMode::Nulls;
    }
    throw ConfigError("unknown arg mode: " + name);
}

std::vector<Arm> default_arm_set() {
    return {
        {"schema_min_known", true, ArgMode::Known, 1, 3},
        {"schema_min_real", true, ArgMode::Real, 1, 3},
        {"schema_mod_known", true, ArgMode::Known, 2, 5},
        {"noschema_min_known", false, ArgMode::Known, 1, 3},
        {"noschema_min_real", false, ArgMode::Real, 1, 0},
        {"schema_min_nulls", true, ArgMode::Nulls, 1, 3},
        {"schema_deep_known", true, ArgMode::Known, 3, 5},
        {"schema_deep_real", true, ArgMode::Real, 3, 5},
    };
}

BanditState::BanditState(std::vector<Arm> arms, double gamma, std::uint64_t seed)
    : arms_(std::move(arms)), gamma_(gamma), rng_(seed) {
    if (arms_.empty()) {
        throw ConfigError("bandit needs at least one arm");
    }
    if (!(gamma_ > 0.0) || gamma_ > 1.0) {
        throw ConfigError("discount gamma must lie in (0, 1], got " + std::to_string(gamma_));
    }
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        for (std::size_t j = i + 1; j < arms_.size(); ++j) {
            if (arms_[i].id == arms_[j].id) {
                throw ConfigError("duplicate arm id: " + arms_[i].id);
            }
        }
    }
    posteriors_.assign(arms_.size(), ArmPosterior{});
}

std::size_t BanditState::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        if (arms_[i].id == id) {
            return i;
        }
    }
    throw ConfigError("unknown arm id: " + id);
}

const Arm& BanditState::arm(const std::string& id) const {
    return arms_[index_of(id)];
}

const ArmPosterior& BanditState::posterior(const std::string& id) const {
    return posteriors_[index_of(id)];
}

const std::string& BanditState::select_arm() {
    std::size_t best = 0;
    double best_theta = -1.0;
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        const auto& p = posteriors_[i];
        const double theta = rng_.next_beta(1.0 + p.s, 1.0 + p.f);
        if (theta > best_theta) {
            best_theta = theta;
            best = i;
        }
    }
    return arms_[best].id;
}

void BanditState::update(const std::string& arm_id, int reward) {
    const std::size_t idx = index_of(arm_id);
    const double r = reward != 0 ? 1.0 : 0.0;
    if (decay_idle_arms) {
        for (auto& p : posteriors_) {
            p.s *= gamma_;
            p.f *= gamma_;
        }
        posteriors_[idx].s += r;
        posteriors_[idx].f += 1.0 - r;
    } else {
        auto& p = posteriors_[idx];
        p.s = gamma_ * p.s + r;
        p.f = gamma_ * p.f + (1.0 - r);
    }
}

std::vector<ArmStat> BanditState::stats() const {
    std::vector<ArmStat> out;
    out.reserve(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        const auto& p = posteriors_[i];
        out.push_back({arms_[i].id, p.s, p.f, (1.0 + p.s) / (2.0 + p.s + p.f)});
    }
    std::sort(out.begin(), out.end(), [](const ArmStat& a, const ArmStat& b) {
        if (a.posterior_mean != b.posterior_mean) {
            return a.posterior_mean > b.posterior_mean;
        }
        return a.arm_id < b.arm_id;
    });
    return out;
}

int reward_signal(const Outcome& outcome, bool coverage_delta) {
    return outcome.http_status == 200 && outcome.graphql_errors.empty() && coverage_delta ? 1 : 0;
}

} // namespace prediql
