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

#include "treeq/guesser.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "treeq/errors.hpp"
#include "treeq/oracle.hpp"
#include "treeq/policy.hpp"

namespace treeq {

std::string_view to_string(GuesserMode mode) {
    return mode == GuesserMode::kConsistentUniform ? "consistent_uniform" : "soft_consistency";
}

void GuesserConfig::validate() const {
    if (!std::isfinite(softness) || softness < 0.0) throw ValidationError("guesser softness must be finite and >= 0");
}

ObjectId guess(const GameInstance& game, std::span<const Exchange> history, const GuesserConfig& config, Rng& rng) {
    const std::span<const ObjectSpec> objects = game.objects;
    if (objects.empty()) throw ValidationError("guess over an empty object list");

    if (config.mode == GuesserMode::kConsistentUniform) {
        const auto consistent = consistent_set(objects, history);
        if (consistent.empty()) return rng.index(objects.size());
        return consistent[rng.index(consistent.size())];
    }

    std::vector<double> scores(objects.size(), 0.0);
    for (std::size_t i = 0; i < objects.size(); ++i) {
        for (const auto& e : history) {
            if (truthful_answer(e.question, objects[i]) == e.answer) scores[i] += 1.0;
        }
        scores[i] *= config.softness;
    }
    const double top = *std::max_element(scores.begin(), scores.end());
    double z = 0.0;
    for (double& s : scores) {
        s = std::exp(s - top);
        z += s;
    }
    const double u = rng.uniform() * z;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        cumulative += scores[i];
        if (u < cumulative) return i;
    }
    return objects.size() - 1;
}

}  // namespace treeq
