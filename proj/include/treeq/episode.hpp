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

#ifndef TREEQ_EPISODE_HPP_
#define TREEQ_EPISODE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treeq/ade.hpp"
#include "treeq/guesser.hpp"
#include "treeq/oracle.hpp"
#include "treeq/policy.hpp"
#include "treeq/rewards.hpp"
#include "treeq/world.hpp"

namespace treeq {

struct RolloutConfig {
    std::size_t j_max = 5;
    RewardConfig reward;
    OracleConfig oracle;
    GuesserConfig guesser;

    void validate() const;
};

// One played game. round_stats, candidates_after and history align with the
// non-STOP entries of actions.
struct EpisodeRecord {
    std::uint64_t game_seed = 0;
    ObjectId target_id = 0;
    std::size_t n_objects = 0;
    std::vector<ActionChoice> actions;
    std::vector<Exchange> history;
    std::vector<RoundStat> round_stats;
    std::vector<std::size_t> candidates_after;
    std::size_t k_end = 0;
    // Set when a noisy oracle evicted every candidate; k_end then reports N.
    bool candidates_exhausted = false;
    ObjectId guess = 0;
    bool guess_correct = false;
    double r_b = 0.0;
    double r_c = 0.0;
    double r_s = 0.0;
    double total_return = 0.0;
    std::size_t j_end = 0;

    bool operator==(const EpisodeRecord&) const = default;
};

// Plays one game. The candidate tracker only feeds round statistics and
// k_end; the policy sees the public DialogueState alone.
EpisodeRecord rollout(const PolicyParams& params, const GameInstance& game, const RolloutConfig& config,
                      SelectionMode mode, Rng& rng);

}  // namespace treeq

#endif  // TREEQ_EPISODE_HPP_
