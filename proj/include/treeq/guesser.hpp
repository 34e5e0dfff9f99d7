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

#ifndef TREEQ_GUESSER_HPP_
#define TREEQ_GUESSER_HPP_

#include <span>
#include <string_view>

#include "treeq/rng.hpp"
#include "treeq/world.hpp"

namespace treeq {

enum class GuesserMode { kConsistentUniform, kSoftConsistency };

std::string_view to_string(GuesserMode mode);

struct GuesserConfig {
    GuesserMode mode = GuesserMode::kConsistentUniform;
    // Inverse temperature on the match count (SOFT_CONSISTENCY only).
    double softness = 1.0;

    void validate() const;
};

// Picks an object from ALL objects given the dialogue. Reads only the object
// list and the history; the target id is never consulted.
ObjectId guess(const GameInstance& game, std::span<const Exchange> history, const GuesserConfig& config, Rng& rng);

}  // namespace treeq

#endif  // TREEQ_GUESSER_HPP_
