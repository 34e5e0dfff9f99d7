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

#ifndef TREEQ_METRICS_HPP_
#define TREEQ_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeq/episode.hpp"

namespace treeq {

struct EvalReport {
    std::size_t n_games = 0;
    SelectionMode mode = SelectionMode::kGreedy;
    double success_rate = 0.0;
    double repetition_rate = 0.0;
    // Mean rounds until one candidate is left, over the games that get there.
    std::optional<double> T;
    // Fraction of games that get down to one candidate.
    double R = 0.0;
    std::optional<double> T_over_R;
    double mean_rb = 0.0;
    double mean_rc = 0.0;
    double mean_return = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const EvalReport&) const = default;
};

// 1-based round after which exactly one candidate remained, if any.
std::optional<std::size_t> rounds_to_singleton(const EpisodeRecord& record);

// Questions that exactly repeat an earlier question of the same game.
std::size_t repeated_questions(const EpisodeRecord& record);

EvalReport summarize(std::span<const EpisodeRecord> records, SelectionMode mode, std::uint64_t seed);

// Plays n_games on fresh worlds. Game i uses world and rollout seeds derived
// from (master_seed, i), so the result does not depend on `workers`.
EvalReport evaluate(const PolicyParams& params, const WorldSpec& world, const RolloutConfig& config,
                    std::size_t n_games, SelectionMode mode, std::uint64_t master_seed,
                    std::vector<EpisodeRecord>* records = nullptr, unsigned workers = 1);

// Per-field median (T and T_over_R over the reports that have them).
EvalReport median_report(std::span<const EvalReport> reports);

// CSV: epoch,mode,n_games,success_rate,repetition_rate,T,R,T_over_R,mean_rb,mean_rc,mean_return,seed
std::string csv_header();
std::string csv_row(std::size_t epoch, const EvalReport& report);
// Six significant digits; empty for an absent value.
std::string format_real(std::optional<double> value);

struct NamedReport {
    std::string name;
    EvalReport report;
};

struct ComparisonTable {
    std::string baseline;
    std::vector<NamedReport> rows;

    std::string to_csv() const;
};

// Requires at least two uniquely named reports, one of them named `baseline`.
ComparisonTable compare(std::span<const NamedReport> reports, std::string_view baseline);

}  // namespace treeq

#endif  // TREEQ_METRICS_HPP_
