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

#include "treeq/policy.hpp"

#include <algorithm>
#include <cmath>

#include "treeq/errors.hpp"
#include "treeq/oracle.hpp"

namespace treeq {

namespace {

struct Evaluation {
    std::vector<Action> actions;
    std::vector<FeatureVector> phi;
    std::vector<double> logits;
    std::vector<double> probs;
    double log_norm = 0.0;
};

struct StateSummary {
    std::vector<ObjectId> consistent;  // never empty; falls back to all objects
};

StateSummary summarize(const DialogueState& state) {
    StateSummary s{consistent_set(state)};
    if (s.consistent.empty()) {
        s.consistent.resize(state.objects().size());
        for (std::size_t i = 0; i < s.consistent.size(); ++i) s.consistent[i] = i;
    }
    return s;
}

FeatureVector features_with(const DialogueState& state, const StateSummary& summary, const Action& action) {
    FeatureVector f{};
    const auto m = static_cast<double>(summary.consistent.size());
    if (action.is_stop()) {
        f[kStopBias] = 1.0;
        f[kSingleton] = summary.consistent.size() == 1 ? 1.0 : 0.0;
        return f;
    }
    const Question& q = action.question();
    std::size_t yes = 0;
    for (ObjectId id : summary.consistent) {
        if (truthful_answer(q, state.objects()[id]) == Answer::kYes) ++yes;
    }
    const double p = static_cast<double>(yes) / m;
    const auto& history = state.history();
    f[kBalance] = 1.0 - std::abs(2.0 * p - 1.0);
    f[kRepeat] = std::any_of(history.begin(), history.end(), [&](const Exchange& e) { return e.question == q; })
                     ? 1.0
                     : 0.0;
    f[kYesFrac] = p;
    f[kBiasQuestion] = 1.0;
    return f;
}

double dot(const std::vector<double>& theta, const FeatureVector& phi) {
    double s = 0.0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) s += theta[i] * phi[i];
    return s;
}

Evaluation evaluate(const PolicyParams& params, const DialogueState& state) {
    Evaluation ev;
    ev.actions = action_space(params, state);
    if (ev.actions.empty()) throw ValidationError("empty action space");
    const StateSummary summary = summarize(state);
    ev.phi.reserve(ev.actions.size());
    ev.logits.reserve(ev.actions.size());
    for (const auto& a : ev.actions) {
        ev.phi.push_back(features_with(state, summary, a));
        ev.logits.push_back(dot(params.theta, ev.phi.back()) / params.temperature);
    }
    const double max_logit = *std::max_element(ev.logits.begin(), ev.logits.end());
    double z = 0.0;
    ev.probs.resize(ev.logits.size());
    for (std::size_t i = 0; i < ev.logits.size(); ++i) {
        ev.probs[i] = std::exp(ev.logits[i] - max_logit);
        z += ev.probs[i];
    }
    for (double& p : ev.probs) p /= z;
    ev.log_norm = max_logit + std::log(z);
    return ev;
}

}  // namespace

std::vector<std::string> default_feature_names() { return {kFeatureNames.begin(), kFeatureNames.end()}; }

void PolicyParams::validate() const {
    if (feature_names != default_feature_names())
        throw ValidationError("unsupported feature layout in policy parameters");
    if (theta.size() != feature_names.size()) throw ValidationError("theta length must match feature_names");
    for (double w : theta) {
        if (!std::isfinite(w)) throw NumericError("non-finite policy weight");
    }
    if (!std::isfinite(temperature) || temperature <= 0.0) throw ValidationError("temperature must be positive");
}

PolicyParams PolicyParams::uniform() { return PolicyParams{}; }

PolicyParams PolicyParams::bisection_reference() {
    PolicyParams p;
    p.theta[kBalance] = 50.0;
    p.theta[kRepeat] = -50.0;
    return p;
}

std::string to_string(const AttributeSchema& schema, const Action& action) {
    return action.is_stop() ? std::string("STOP") : to_string(schema, action.question());
}

DialogueState::DialogueState(const GameInstance& game) : DialogueState(game.schema, game.objects) {}

DialogueState::DialogueState(SchemaPtr schema, std::span<const ObjectSpec> objects, std::vector<Exchange> history)
    : schema_(std::move(schema)), objects_(objects), history_(std::move(history)) {
    if (!schema_) throw ValidationError("dialogue state needs a schema");
}

std::vector<ObjectId> consistent_set(std::span<const ObjectSpec> objects, std::span<const Exchange> history) {
    std::vector<ObjectId> out;
    out.reserve(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const bool ok = std::all_of(history.begin(), history.end(), [&](const Exchange& e) {
            return truthful_answer(e.question, objects[i]) == e.answer;
        });
        if (ok) out.push_back(i);
    }
    return out;
}

std::vector<ObjectId> consistent_set(const DialogueState& state) {
    return consistent_set(state.objects(), state.history());
}

std::vector<Action> action_space(const PolicyParams& params, const DialogueState& state) {
    std::vector<Action> out;
    const auto questions = enumerate_questions(state.schema());
    out.reserve(questions.size() + 1);
    for (const auto& q : questions) out.push_back(Action::ask(q));
    if (params.stop_enabled && state.round_index() >= 1) out.push_back(Action::stop());
    return out;
}

FeatureVector features(const DialogueState& state, const Action& action) {
    return features_with(state, summarize(state), action);
}

std::vector<ActionProbability> action_distribution(const PolicyParams& params, const DialogueState& state) {
    const Evaluation ev = evaluate(params, state);
    std::vector<ActionProbability> out;
    out.reserve(ev.actions.size());
    for (std::size_t i = 0; i < ev.actions.size(); ++i) out.push_back({ev.actions[i], ev.probs[i]});
    return out;
}

double log_probability(const PolicyParams& params, const DialogueState& state, const Action& action) {
    const Evaluation ev = evaluate(params, state);
    for (std::size_t i = 0; i < ev.actions.size(); ++i) {
        if (ev.actions[i] == action) return ev.logits[i] - ev.log_norm;
    }
    throw ValidationError("action is not available in this state");
}

std::string_view to_string(SelectionMode mode) { return mode == SelectionMode::kGreedy ? "greedy" : "sample"; }

ActionChoice select_action(const PolicyParams& params, const DialogueState& state, SelectionMode mode, Rng& rng) {
    const Evaluation ev = evaluate(params, state);
    std::size_t pick = 0;
    if (mode == SelectionMode::kGreedy) {
        for (std::size_t i = 1; i < ev.logits.size(); ++i) {
            if (ev.logits[i] > ev.logits[pick]) pick = i;
        }
    } else {
        const double u = rng.uniform();
        double cumulative = 0.0;
        pick = ev.probs.size() - 1;
        for (std::size_t i = 0; i < ev.probs.size(); ++i) {
            cumulative += ev.probs[i];
            if (u < cumulative) {
                pick = i;
                break;
            }
        }
    }

    ActionChoice choice;
    choice.action = ev.actions[pick];
    choice.log_prob = ev.logits[pick] - ev.log_norm;
    choice.score_gradient.assign(kFeatureCount, 0.0);
    for (std::size_t i = 0; i < ev.actions.size(); ++i) {
        for (std::size_t f = 0; f < kFeatureCount; ++f) choice.score_gradient[f] -= ev.probs[i] * ev.phi[i][f];
    }
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        choice.score_gradient[f] = (choice.score_gradient[f] + ev.phi[pick][f]) / params.temperature;
    }
    return choice;
}

}  // namespace treeq
