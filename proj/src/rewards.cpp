/*
   Copyright 2026 The treeq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "treeq/rewards.hpp"

#include <cmath>

#include "treeq/errors.hpp"

namespace treeq {

void RewardConfig::validate() const {
    for (double w : {alpha, beta, gamma}) {
        if (!std::isfinite(w) || w < 0.0) throw ValidationError("reward weights must be finite and non-negative");
    }
}

double binary_reward(const EpisodeOutcome& outcome, const RewardConfig& config) {
    double sum = 0.0;
    for (const auto& stat : outcome.round_stats) sum += round_binary_score(stat);
    if (config.rb_aggregation == RbAggregation::kMean && !outcome.round_stats.empty())
        sum /= static_cast<double>(outcome.round_stats.size());
    return sum;
}

double candidate_min_reward(const EpisodeOutcome& outcome, const RewardConfig& config) {
    if (outcome.n_objects < 2) throw ValidationError("candidate_min_reward needs at least two objects");
    if (!outcome.guess_correct) return 0.0;
    const double narrowed = 1.0 - static_cast<double>(outcome.k_end - 1) / static_cast<double>(outcome.n_objects - 1);
    return config.success_bonus() + config.beta * narrowed;
}

double success_reward(const EpisodeOutcome& outcome) { return outcome.guess_correct ? 1.0 : 0.0; }

double combined_reward(const EpisodeOutcome& outcome, const RewardConfig& config) {
    return compute_rewards(outcome, config).total;
}

RewardBreakdown compute_rewards(const EpisodeOutcome& outcome, const RewardConfig& config) {
    RewardBreakdown r;
    r.r_b = binary_reward(outcome, config);
    r.r_c = candidate_min_reward(outcome, config);
    r.r_s = success_reward(outcome);
    r.total = config.gamma * r.r_b + r.r_c + (config.use_rs ? r.r_s : 0.0);
    return r;
}

}  // namespace treeq
