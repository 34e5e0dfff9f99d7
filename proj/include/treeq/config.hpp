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

#ifndef TREEQ_CONFIG_HPP_
#define TREEQ_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "treeq/trainer.hpp"

namespace treeq {

// Everything one experiment needs. Populated from a flat key=value file (or
// JSON), then --set overrides. Unknown keys are rejected.
struct ExperimentConfig {
    std::uint64_t seed = 0;

    double learning_rate = 0.001;
    std::size_t batch_size = 64;
    std::size_t epochs = 150;
    std::size_t games_per_epoch = 6400;
    double baseline_decay = 0.99;
    bool per_round_shaping = false;
    bool fixed_world = false;
    unsigned workers = 1;

    double temperature = 1.0;
    bool stop_enabled = true;

    RolloutConfig rollout;

    WorldSpec::Kind world_kind = WorldSpec::Kind::kRandom;
    std::size_t n_objects = 16;
    int n_bits = 3;
    // "default", "grid" (n_attributes x n_values) or "name:v1,v2;name2?:a,b"
    // where a trailing '?' marks an optional attribute.
    std::string schema = "default";
    std::size_t n_attributes = 4;
    std::size_t n_values = 4;

    std::size_t eval_games = 1000;
    std::vector<SelectionMode> eval_modes = {SelectionMode::kGreedy, SelectionMode::kSample};
    std::uint64_t eval_seed = 1000003;

    // 0 writes only the final checkpoint.
    std::size_t checkpoint_every = 0;
    std::vector<std::uint64_t> ablate_seeds = {0, 1, 2, 3, 4};

    void validate() const;

    WorldSpec world_spec() const;
    TrainConfig train_config() const;

    // Sorted key -> rendered value for every known key.
    std::map<std::string, std::string> to_map() const;
    // "key=value\n" lines in key order; the input to digest().
    std::string canonical_text() const;
    // FNV-1a 64 of canonical_text(), 16 hex digits.
    std::string digest() const;
};

// Documented keys with their one-line descriptions.
const std::map<std::string, std::string>& config_key_docs();

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);
// "key=value"
void apply_override(ExperimentConfig& config, std::string_view assignment);

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_json(std::string_view text);
// JSON when the extension is .json or the first non-blank character is '{'.
ExperimentConfig load_config(const std::filesystem::path& path);

SchemaPtr parse_schema(std::string_view text);

}  // namespace treeq

#endif  // TREEQ_CONFIG_HPP_
