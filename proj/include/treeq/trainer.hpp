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

#ifndef TREEQ_TRAINER_HPP_
#define TREEQ_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treeq/episode.hpp"
#include "treeq/metrics.hpp"

namespace treeq {

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t batch_size = 64;
    std::size_t epochs = 150;
    // Each epoch runs games_per_epoch / batch_size updates.
    std::size_t games_per_epoch = 6400;
    double baseline_decay = 0.99;
    std::uint64_t master_seed = 0;
    // Credit each action with the reward-to-go instead of the whole return.
    bool per_round_shaping = false;
    // Reuse one world (fresh target each game) instead of a fresh world per game.
    bool fixed_world = false;
    double temperature = 1.0;
    bool stop_enabled = true;
    unsigned workers = 1;
    RolloutConfig rollout;
    WorldSpec world;

    void validate() const;
};

// Exponential moving average of episode returns.
struct BaselineState {
    double decay = 0.99;
    bool initialized = false;
    double value = 0.0;

    bool operator==(const BaselineState&) const = default;
};

struct ReturnShaping {
    bool per_round = false;
    RewardConfig reward;
};

struct UpdateResult {
    PolicyParams params;
    BaselineState baseline;
};

// theta += lr / |batch| * sum_episodes sum_t (G_t - b) * score_gradient_t, with
// b the baseline before this batch (the batch mean on the first call).
// Throws NumericError on a non-finite step.
UpdateResult reinforce_update(const PolicyParams& params, std::span<const EpisodeRecord> batch,
                              const BaselineState& baseline, double learning_rate, const ReturnShaping& shaping = {});

struct EpochLog {
    std::size_t epoch = 0;  // 1-based
    EvalReport report;      // over the epoch's training rollouts
};

struct TrainResult {
    PolicyParams params;
    BaselineState baseline;
    std::vector<EpochLog> log;
};

using EpochCallback = std::function<void(const EpochLog&, const PolicyParams&)>;

TrainResult train(const TrainConfig& config, const EpochCallback& on_epoch = {});

// Game seeds used by train() for a given global game index.
std::uint64_t training_world_seed(const TrainConfig& config, std::uint64_t game_index);

struct NamedTrainConfig {
    std::string name;
    TrainConfig config;
};

// full, wo_rb (gamma = 0), wo_rc (alpha = beta = 0), rs_only (only r_s).
// Only the reward settings differ.
std::vector<NamedTrainConfig> ablation_suite(const TrainConfig& base);

}  // namespace treeq

#endif  // TREEQ_TRAINER_HPP_
