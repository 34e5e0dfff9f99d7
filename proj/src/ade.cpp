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

#include "treeq/ade.hpp"

#include <algorithm>
#include <cmath>

#include "treeq/errors.hpp"

namespace treeq {

CandidateTracker new_tracker(const GameInstance& game) {
    CandidateTracker tracker;
    tracker.candidates.resize(game.size());
    for (std::size_t i = 0; i < game.size(); ++i) tracker.candidates[i] = i;
    return tracker;
}

AnswerDistribution answer_distribution(const CandidateTracker& tracker, const Question& question,
                                       const GameInstance& game, const OracleConfig& oracle, Rng& rng) {
    if (tracker.candidates.empty()) throw ConsistencyError("answer_distribution on an empty candidate set");
    AnswerDistribution out;
    out.reserve(tracker.candidates.size());
    for (ObjectId id : tracker.candidates) out.emplace_back(id, answer(question, game.objects.at(id), oracle, rng));
    return out;
}

RoundStat round_stat(const AnswerDistribution& distribution) {
    RoundStat stat;
    stat.k = distribution.size();
    for (const auto& [id, a] : distribution) {
        switch (a) {
            case Answer::kYes: ++stat.yes_count; break;
            case Answer::kNo: ++stat.no_count; break;
            case Answer::kNA: ++stat.na_count; break;
        }
    }
    stat.l = std::max(stat.yes_count, stat.no_count);
    return stat;
}

std::pair<CandidateTracker, RoundStat> update(CandidateTracker tracker, const Question& question,
                                              const AnswerDistribution& distribution, Answer target_answer,
                                              const OracleConfig& oracle) {
    const bool covers = distribution.size() == tracker.candidates.size() &&
                        std::equal(distribution.begin(), distribution.end(), tracker.candidates.begin(),
                                   [](const auto& entry, ObjectId id) { return entry.first == id; });
    if (!covers) throw ConsistencyError("answer distribution does not cover the current candidates");

    const RoundStat stat = round_stat(distribution);
    std::vector<ObjectId> kept;
    kept.reserve(distribution.size());
    for (const auto& [id, a] : distribution) {
        if (a == target_answer) kept.push_back(id);
    }
    if (kept.empty() && oracle.noise_rate <= 0.0)
        throw ConsistencyError("truthful oracle eliminated every candidate, including the target");

    tracker.candidates = std::move(kept);
    tracker.rounds.push_back(stat);
    tracker.history.push_back({question, target_answer});
    return {std::move(tracker), stat};
}

double round_binary_score(const RoundStat& stat) {
    if (stat.k <= 1) return 0.0;
    const double half = static_cast<double>(stat.k) / 2.0;
    return 1.0 - std::abs(static_cast<double>(stat.l) - half) / half;
}

}  // namespace treeq
