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

#include "treeq/oracle.hpp"

#include <cmath>
#include <string>

#include "treeq/errors.hpp"

namespace treeq {

void OracleConfig::validate() const {
    if (!std::isfinite(noise_rate) || noise_rate < 0.0 || noise_rate > 1.0)
        throw ValidationError("oracle noise_rate must be in [0, 1]");
}

Answer truthful_answer(const Question& question, const ObjectSpec& object) {
    if (question.attribute >= object.values.size())
        throw SchemaMismatchError("object " + std::to_string(object.id) + " has no attribute #" +
                                  std::to_string(question.attribute));
    const int v = object.values[question.attribute];
    if (v == kUndefinedValue) return Answer::kNA;
    return v == question.value ? Answer::kYes : Answer::kNo;
}

Answer answer(const Question& question, const ObjectSpec& object, const OracleConfig& config, Rng& rng) {
    const Answer truth = truthful_answer(question, object);
    if (truth == Answer::kNA || config.noise_rate <= 0.0) return truth;
    if (config.noise_rate >= 1.0 || rng.bernoulli(config.noise_rate))
        return truth == Answer::kYes ? Answer::kNo : Answer::kYes;
    return truth;
}

Answer answer_for_target(const Question& question, const GameInstance& game, const OracleConfig& config, Rng& rng) {
    return answer(question, game.target(), config, rng);
}

}  // namespace treeq
