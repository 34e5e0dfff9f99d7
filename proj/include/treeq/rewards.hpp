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

#ifndef TREEQ_REWARDS_HPP_
#define TREEQ_REWARDS_HPP_

#include <cstddef>
#include <vector>

#include "treeq/ade.hpp"

namespace treeq {

enum class RbAggregation { kSum, kMean };

struct RewardConfig {
    double alpha = 4.0;
    double beta = 0.7;
    double gamma = 0.8;
    // Adds the 0-1 success reward to the return.
    bool use_rs = false;
    // Keep the alpha success bonus inside r_c when r_s is also paid.
    bool include_alpha_with_rs = false;
    RbAggregation rb_aggregation = RbAggregation::kSum;

    void validate() const;

    // Success bonus actually applied inside r_c.
    double success_bonus() const { return use_rs && !include_alpha_with_rs ? 0.0 : alpha; }
};

struct EpisodeOutcome {
    std::vector<RoundStat> round_stats;
    std::size_t k_end = 1;  // candidates left after the final update
    std::size_t n_objects = 2;
    bool guess_correct = false;
};

double binary_reward(const EpisodeOutcome& outcome, const RewardConfig& config);
double candidate_min_reward(const EpisodeOutcome& outcome, const RewardConfig& config);
double success_reward(const EpisodeOutcome& outcome);
double combined_reward(const EpisodeOutcome& outcome, const RewardConfig& config);

struct RewardBreakdown {
    double r_b = 0.0;
    double r_c = 0.0;
    double r_s = 0.0;
    double total = 0.0;
};

RewardBreakdown compute_rewards(const EpisodeOutcome& outcome, const RewardConfig& config);

}  // namespace treeq

#endif  // TREEQ_REWARDS_HPP_
