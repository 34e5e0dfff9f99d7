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

#ifndef TREEQ_POLICY_HPP_
#define TREEQ_POLICY_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeq/rng.hpp"
#include "treeq/world.hpp"

namespace treeq {

// Feature layout. Checkpoints store the names; new features must be appended.
enum Feature : std::size_t {
    kBalance = 0,     // 1 - |2p - 1|, p = YES fraction over the consistent set
    kRepeat,          // question already asked in this game
    kYesFrac,         // p
    kBiasQuestion,    // 1 for every question
    kStopBias,        // 1 for STOP
    kSingleton,       // STOP while exactly one object is consistent
    kFeatureCount,
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "balance", "repeat", "yes_frac", "bias_q", "stop_bias", "singleton",
};

using FeatureVector = std::array<double, kFeatureCount>;

std::vector<std::string> default_feature_names();

// Weights of the linear-softmax question policy.
struct PolicyParams {
    std::vector<double> theta = std::vector<double>(kFeatureCount, 0.0);
    double temperature = 1.0;
    bool stop_enabled = true;
    std::vector<std::string> feature_names = default_feature_names();

    void validate() const;

    bool operator==(const PolicyParams&) const = default;

    // theta = 0.
    static PolicyParams uniform();
    // Hand-set greedy bisection: +50 on balance, -50 on repeat.
    static PolicyParams bisection_reference();
};

class Action {
  public:
    static Action ask(Question q) { return Action(false, q); }
    static Action stop() { return Action(true, Question{}); }

    bool is_stop() const { return stop_; }
    const Question& question() const { return question_; }

    bool operator==(const Action&) const = default;

  private:
    Action(bool stop, Question q) : stop_(stop), question_(q) {}

    bool stop_ = false;
    Question question_;
};

std::string to_string(const AttributeSchema& schema, const Action& action);

// What the questioner may see: the object list and the dialogue so far.
// Holds neither the target nor any candidate tracker.
class DialogueState {
  public:
    // Takes the public part of the game only; the game must outlive the state.
    explicit DialogueState(const GameInstance& game);
    DialogueState(SchemaPtr schema, std::span<const ObjectSpec> objects, std::vector<Exchange> history = {});

    const AttributeSchema& schema() const { return *schema_; }
    const SchemaPtr& schema_ptr() const { return schema_; }
    std::span<const ObjectSpec> objects() const { return objects_; }
    const std::vector<Exchange>& history() const { return history_; }
    std::size_t round_index() const { return history_.size(); }

    void record(const Exchange& exchange) { history_.push_back(exchange); }

  private:
    SchemaPtr schema_;
    std::span<const ObjectSpec> objects_;
    std::vector<Exchange> history_;
};

// Objects whose truthful answers reproduce every recorded answer. May be
// empty when answers were noisy.
std::vector<ObjectId> consistent_set(std::span<const ObjectSpec> objects, std::span<const Exchange> history);
std::vector<ObjectId> consistent_set(const DialogueState& state);

// Questions in schema order, then STOP when enabled and at least one round was played.
std::vector<Action> action_space(const PolicyParams& params, const DialogueState& state);

FeatureVector features(const DialogueState& state, const Action& action);

struct ActionProbability {
    Action action;
    double probability = 0.0;
};

std::vector<ActionProbability> action_distribution(const PolicyParams& params, const DialogueState& state);

double log_probability(const PolicyParams& params, const DialogueState& state, const Action& action);

enum class SelectionMode { kGreedy, kSample };

std::string_view to_string(SelectionMode mode);

struct ActionChoice {
    Action action = Action::stop();
    double log_prob = 0.0;
    // grad_theta log pi(action | state)
    std::vector<double> score_gradient;

    bool operator==(const ActionChoice&) const = default;
};

// Greedy breaks ties by action-space order.
ActionChoice select_action(const PolicyParams& params, const DialogueState& state, SelectionMode mode, Rng& rng);

}  // namespace treeq

#endif  // TREEQ_POLICY_HPP_
