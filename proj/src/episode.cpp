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

#include "treeq/episode.hpp"

#include "treeq/errors.hpp"

namespace treeq {

void RolloutConfig::validate() const {
    if (j_max < 1) throw ValidationError("j_max must be at least 1");
    reward.validate();
    oracle.validate();
    guesser.validate();
}

EpisodeRecord rollout(const PolicyParams& params, const GameInstance& game, const RolloutConfig& config,
                      SelectionMode mode, Rng& rng) {
    const std::uint64_t episode_key = rng.next();
    Rng oracle_rng(derive_seed(episode_key, Stream::kOracle, config.oracle.seed));
    Rng guesser_rng(derive_seed(episode_key, Stream::kGuesser, 0));

    EpisodeRecord rec;
    rec.game_seed = game.seed;
    rec.target_id = game.target_id;
    rec.n_objects = game.size();

    DialogueState state(game);
    CandidateTracker tracker = new_tracker(game);

    while (state.round_index() < config.j_max) {
        ActionChoice choice = select_action(params, state, mode, rng);
        const Action action = choice.action;
        rec.actions.push_back(std::move(choice));
        if (action.is_stop()) break;

        const Question& q = action.question();
        const Answer target_answer = answer_for_target(q, game, config.oracle, oracle_rng);
        RoundStat stat;
        if (!tracker.candidates.empty()) {
            const auto distribution = answer_distribution(tracker, q, game, config.oracle, oracle_rng);
            auto [next, s] = update(std::move(tracker), q, distribution, target_answer, config.oracle);
            tracker = std::move(next);
            stat = s;
        } else {
            // Already exhausted by noise: nothing left to split.
            tracker.rounds.push_back(stat);
            tracker.history.push_back({q, target_answer});
        }
        state.record({q, target_answer});
        rec.round_stats.push_back(stat);
        rec.candidates_after.push_back(tracker.candidates.size());
    }

    rec.history = state.history();
    rec.j_end = rec.round_stats.size();
    rec.candidates_exhausted = tracker.candidates.empty();
    rec.k_end = rec.candidates_exhausted ? game.size() : tracker.candidates.size();
    rec.guess = guess(game, rec.history, config.guesser, guesser_rng);
    rec.guess_correct = rec.guess == game.target_id;

    const EpisodeOutcome outcome{rec.round_stats, rec.k_end, game.size(), rec.guess_correct};
    const RewardBreakdown r = compute_rewards(outcome, config.reward);
    rec.r_b = r.r_b;
    rec.r_c = r.r_c;
    rec.r_s = r.r_s;
    rec.total_return = r.total;
    return rec;
}

}  // namespace treeq
