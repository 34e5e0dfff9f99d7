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

#ifndef TREEQ_ORACLE_HPP_
#define TREEQ_ORACLE_HPP_

#include <cstdint>

#include "treeq/rng.hpp"
#include "treeq/world.hpp"

namespace treeq {

struct OracleConfig {
    // Probability of flipping YES <-> NO. NA never flips.
    double noise_rate = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Noise-free answer. Throws SchemaMismatchError if the object has no such attribute.
Answer truthful_answer(const Question& question, const ObjectSpec& object);

// With noise_rate == 0 the rng is not touched, so the answer is a pure function.
Answer answer(const Question& question, const ObjectSpec& object, const OracleConfig& config, Rng& rng);

Answer answer_for_target(const Question& question, const GameInstance& game, const OracleConfig& config, Rng& rng);

}  // namespace treeq

#endif  // TREEQ_ORACLE_HPP_
