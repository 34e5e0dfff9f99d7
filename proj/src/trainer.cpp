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

#include "treeq/trainer.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "parallel.hpp"
#include "treeq/errors.hpp"

namespace treeq {

void TrainConfig::validate() const {
    if (!std::isfinite(learning_rate) || learning_rate <= 0.0) throw ValidationError("learning_rate must be > 0");
    if (batch_size == 0) throw ValidationError("batch_size must be positive");
    if (games_per_epoch < batch_size) throw ValidationError("games_per_epoch must be at least batch_size");
    if (!std::isfinite(baseline_decay) || baseline_decay < 0.0 || baseline_decay >= 1.0)
        throw ValidationError("baseline_decay must be in [0, 1)");
    if (!std::isfinite(temperature) || temperature <= 0.0) throw ValidationError("temperature must be > 0");
    if (world.kind == WorldSpec::Kind::kBitworld && (world.n_bits < 1 || world.n_bits > 20))
        throw ValidationError("world n_bits must be in [1, 20]");
    if (world.kind == WorldSpec::Kind::kRandom && (world.n_objects < 2 || !world.schema || world.schema->size() == 0))
        throw ValidationError("random worlds need n_objects >= 2 and a non-empty schema");
    rollout.validate();
}

UpdateResult reinforce_update(const PolicyParams& params, std::span<const EpisodeRecord> batch,
                              const BaselineState& baseline, double learning_rate, const ReturnShaping& shaping) {
    if (batch.empty()) throw ValidationError("reinforce_update needs a non-empty batch");

    double batch_mean = 0.0;
    for (const auto& ep : batch) batch_mean += ep.total_return;
    batch_mean /= static_cast<double>(batch.size());
    const double b = baseline.initialized ? baseline.value : batch_mean;

    std::vector<double> grad(params.theta.size(), 0.0);
    for (const auto& ep : batch) {
        double to_go = ep.total_return;
        for (std::size_t t = 0; t < ep.actions.size(); ++t) {
            const auto& choice = ep.actions[t];
            const double advantage = to_go - b;
            for (std::size_t f = 0; f < grad.size(); ++f) grad[f] += advantage * choice.score_gradient[f];
            if (shaping.per_round && t < ep.round_stats.size()) {
                double share = round_binary_score(ep.round_stats[t]);
                if (shaping.reward.rb_aggregation == RbAggregation::kMean) share /= static_cast<double>(ep.j_end);
                to_go -= shaping.reward.gamma * share;
            }
        }
    }

    UpdateResult out{params, baseline};
    const double scale = learning_rate / static_cast<double>(batch.size());
    for (std::size_t f = 0; f < grad.size(); ++f) {
        out.params.theta[f] += scale * grad[f];
        if (!std::isfinite(out.params.theta[f]))
            throw NumericError("non-finite policy update on feature '" + params.feature_names.at(f) + "'");
    }
    out.baseline.value = baseline.decay * b + (1.0 - baseline.decay) * batch_mean;
    out.baseline.initialized = true;
    return out;
}

std::uint64_t training_world_seed(const TrainConfig& config, std::uint64_t game_index) {
    return derive_seed(config.master_seed, Stream::kTrainWorld, config.fixed_world ? 0 : game_index);
}

TrainResult train(const TrainConfig& config, const EpochCallback& on_epoch) {
    config.validate();

    TrainResult result;
    result.params.temperature = config.temperature;
    result.params.stop_enabled = config.stop_enabled;
    result.baseline.decay = config.baseline_decay;

    const std::size_t steps = config.games_per_epoch / config.batch_size;
    const ReturnShaping shaping{config.per_round_shaping, config.rollout.reward};

    std::optional<GameInstance> fixed;
    if (config.fixed_world) fixed = config.world.instantiate(training_world_seed(config, 0));

    std::vector<EpisodeRecord> epoch_records(steps * config.batch_size);
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t step = 0; step < steps; ++step) {
            const std::size_t offset = step * config.batch_size;
            const PolicyParams& params = result.params;
            detail::parallel_for(config.batch_size, config.workers, [&](std::size_t i) {
                const std::uint64_t game_index = (epoch - 1) * epoch_records.size() + offset + i;
                GameInstance game;
                if (fixed) {
                    game = *fixed;
                    Rng target_rng(derive_seed(config.master_seed, Stream::kWorldTarget, game_index));
                    game.target_id = target_rng.index(game.size());
                } else {
                    game = config.world.instantiate(training_world_seed(config, game_index));
                }
                Rng rng(derive_seed(config.master_seed, Stream::kTrainRollout, game_index));
                epoch_records[offset + i] = rollout(params, game, config.rollout, SelectionMode::kSample, rng);
            });
            const std::span<const EpisodeRecord> batch(epoch_records.data() + offset, config.batch_size);
            auto updated = reinforce_update(result.params, batch, result.baseline, config.learning_rate, shaping);
            result.params = std::move(updated.params);
            result.baseline = updated.baseline;
        }
        EpochLog row{epoch, summarize(epoch_records, SelectionMode::kSample, config.master_seed)};
        if (on_epoch) on_epoch(row, result.params);
        result.log.push_back(std::move(row));
    }
    return result;
}

std::vector<NamedTrainConfig> ablation_suite(const TrainConfig& base) {
    std::vector<NamedTrainConfig> out;
    out.push_back({"full", base});

    NamedTrainConfig wo_rb{"wo_rb", base};
    wo_rb.config.rollout.reward.gamma = 0.0;
    out.push_back(wo_rb);

    NamedTrainConfig wo_rc{"wo_rc", base};
    wo_rc.config.rollout.reward.alpha = 0.0;
    wo_rc.config.rollout.reward.beta = 0.0;
    out.push_back(wo_rc);

    NamedTrainConfig rs_only{"rs_only", base};
    auto& r = rs_only.config.rollout.reward;
    r.gamma = 0.0;
    r.alpha = 0.0;
    r.beta = 0.0;
    r.use_rs = true;
    out.push_back(rs_only);
    return out;
}

}  // namespace treeq
