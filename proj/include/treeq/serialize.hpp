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

#ifndef TREEQ_SERIALIZE_HPP_
#define TREEQ_SERIALIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeq/episode.hpp"
#include "treeq/world.hpp"

namespace treeq {

using Json = nlohmann::json;

inline constexpr int kCheckpointFormatVersion = 1;
inline constexpr int kGameFormatVersion = 1;
inline constexpr int kReplayFormatVersion = 1;

struct Checkpoint {
    PolicyParams params;
    std::string training_config_digest;
    std::uint64_t rng_seed = 0;
    std::size_t epoch = 0;

    bool operator==(const Checkpoint&) const = default;
};

Json to_json(const Checkpoint& checkpoint);
// Throws ValidationError on an unsupported format_version or feature layout.
Checkpoint checkpoint_from_json(const Json& doc);

Json to_json(const AttributeSchema& schema);
SchemaPtr schema_from_json(const Json& doc);

Json to_json(const GameInstance& game);
GameInstance game_from_json(const Json& doc);

Json to_json(const RolloutConfig& config);
RolloutConfig rollout_config_from_json(const Json& doc);

Json to_json(const EpisodeRecord& record);
EpisodeRecord episode_from_json(const Json& doc);

// One replayable game: the instance, the rollout seed, and what happened.
struct ReplayEntry {
    GameInstance game;
    std::uint64_t rollout_seed = 0;
    EpisodeRecord record;
};

struct ReplayDocument {
    std::string config_digest;
    std::uint64_t master_seed = 0;
    SelectionMode mode = SelectionMode::kGreedy;
    PolicyParams params;
    RolloutConfig rollout;
    std::vector<ReplayEntry> episodes;
};

Json to_json(const ReplayDocument& replay);
ReplayDocument replay_from_json(const Json& doc);

// Re-plays every entry and returns the indices whose regenerated record differs.
std::vector<std::size_t> verify_replay(const ReplayDocument& replay);

Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace treeq

#endif  // TREEQ_SERIALIZE_HPP_
