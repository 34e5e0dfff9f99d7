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

#ifndef TREEQ_ADE_HPP_
#define TREEQ_ADE_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "treeq/oracle.hpp"
#include "treeq/world.hpp"

namespace treeq {

// Answer split of one round, measured on the candidate set before the update.
struct RoundStat {
    std::size_t k = 0;  // candidates before the update
    std::size_t l = 0;  // max(yes_count, no_count); NA never counts toward l
    std::size_t yes_count = 0;
    std::size_t no_count = 0;
    std::size_t na_count = 0;

    bool operator==(const RoundStat&) const = default;
};

// Training-time bookkeeping of which objects could still be the target.
// Never handed to the policy.
struct CandidateTracker {
    std::vector<ObjectId> candidates;  // ascending
    std::vector<RoundStat> rounds;
    std::vector<Exchange> history;

    bool operator==(const CandidateTracker&) const = default;
};

// Candidate id paired with the answer it would give; same order as the tracker.
using AnswerDistribution = std::vector<std::pair<ObjectId, Answer>>;

CandidateTracker new_tracker(const GameInstance& game);

AnswerDistribution answer_distribution(const CandidateTracker& tracker, const Question& question,
                                       const GameInstance& game, const OracleConfig& oracle, Rng& rng);

// Keeps the candidates whose answer equals target_answer (NA == NA included).
// An empty result is a ConsistencyError unless the oracle is noisy.
std::pair<CandidateTracker, RoundStat> update(CandidateTracker tracker, const Question& question,
                                              const AnswerDistribution& distribution, Answer target_answer,
                                              const OracleConfig& oracle);

RoundStat round_stat(const AnswerDistribution& distribution);

// 1 - |l - k/2| / (k/2); 0 when k == 1.
double round_binary_score(const RoundStat& stat);

}  // namespace treeq

#endif  // TREEQ_ADE_HPP_
