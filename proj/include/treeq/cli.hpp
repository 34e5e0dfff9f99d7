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

#ifndef TREEQ_CLI_HPP_
#define TREEQ_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treeq/config.hpp"

namespace treeq {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr const char* kVersion = "treeq 1.0.0";

struct ConfigSource {
    std::optional<std::filesystem::path> config_path;
    std::vector<std::string> overrides;
};

// Loads the file (if any), applies overrides in order, validates.
ExperimentConfig resolve_config(const ConfigSource& source);

// manifest.json, log.csv, checkpoint_final.json (+ periodic checkpoints).
int cmd_train(const ConfigSource& source, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

struct EvalOptions {
    std::filesystem::path checkpoint;
    std::optional<std::string> mode;  // greedy | sample | both
    std::optional<std::size_t> games;
    std::optional<std::uint64_t> seed;
    bool write_replay = false;
};

// report.csv, manifest_eval.json, and replay_<mode>.json when requested.
int cmd_eval(const ConfigSource& source, const EvalOptions& options, const std::filesystem::path& out_dir,
             std::ostream& out, std::ostream& err);

// Trains full / wo_rb / wo_rc / rs_only over the shared seed list and writes
// runs.csv plus one ablation_<mode>.csv comparison per evaluation mode.
int cmd_ablate(const ConfigSource& source, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);

// The human plays the oracle. Without a checkpoint the hand-set bisection
// policy asks the questions.
int cmd_play(const ConfigSource& source, const std::optional<std::filesystem::path>& checkpoint, std::uint64_t seed,
             std::istream& in, std::ostream& out, std::ostream& err);

// Re-plays a replay file; exit 0 when every episode is reproduced exactly.
int cmd_replay(const std::filesystem::path& replay_file, std::ostream& out, std::ostream& err);

// Full command line (argv[0] excluded).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treeq

#endif  // TREEQ_CLI_HPP_
