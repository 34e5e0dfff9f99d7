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

#include <cmath>

#include "doctest.h"
#include "treeq/guesser.hpp"

using namespace treeq;

TEST_CASE("a pinned object is always guessed") {
    const auto b3 = make_bitworld(3, 4);
    std::vector<Exchange> h;
    for (int b = 0; b < 3; ++b) {
        const auto q = make_question(*b3.schema, "bit_" + std::to_string(b), "1");
        h.push_back({q, b3.target().values[b] == 1 ? Answer::kYes : Answer::kNo});
    }
    Rng rng(0);
    for (int i = 0; i < 100; ++i) CHECK(guess(b3, h, GuesserConfig{}, rng) == b3.target_id);
}

TEST_CASE("empty history guesses uniformly") {
    const auto game = generate_world(3, 8, default_schema());
    Rng rng(1);
    std::vector<int> counts(8, 0);
    const int n = 40000;
    for (int i = 0; i < n; ++i) ++counts[guess(game, {}, GuesserConfig{}, rng)];
    for (int c : counts) CHECK(std::fabs(c / double(n) - 0.125) < 4.0 * std::sqrt(0.125 * 0.875 / n));
}

TEST_CASE("two consistent objects give a coin flip") {
    const auto b2 = make_bitworld(2, 9);
    const std::vector<Exchange> h{{make_question(*b2.schema, "bit_0", "1"), b2.target().values[0] == 1 ? Answer::kYes : Answer::kNo}};
    Rng rng(2);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) hits += guess(b2, h, GuesserConfig{}, rng) == b2.target_id;
    CHECK(std::fabs(hits / 1e4 - 0.5) <= 0.02);
}

TEST_CASE("contradictory history falls back to all objects") {
    const auto b2 = make_bitworld(2);
    const std::vector<Exchange> h{{make_question(*b2.schema, "bit_0", "1"), Answer::kYes},
                                  {make_question(*b2.schema, "bit_0", "0"), Answer::kYes}};
    Rng rng(3);
    std::vector<int> seen(4, 0);
    for (int i = 0; i < 400; ++i) ++seen[guess(b2, h, GuesserConfig{}, rng)];
    for (int c : seen) CHECK(c > 0);
}

TEST_CASE("soft consistency") {
    const auto b2 = make_bitworld(2);
    const std::vector<Exchange> h{{make_question(*b2.schema, "bit_0", "1"), Answer::kYes}};
    GuesserConfig soft{GuesserMode::kSoftConsistency, 0.0};
    Rng rng(4);
    int odd = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) odd += guess(b2, h, soft, rng) % 2;
    CHECK(std::fabs(odd / double(n) - 0.5) < 0.02);

    // exp(1) : 1 in favor of the two matching objects.
    soft.softness = 1.0;
    odd = 0;
    for (int i = 0; i < n; ++i) odd += guess(b2, h, soft, rng) % 2;
    const double expected = std::exp(1.0) / (std::exp(1.0) + 1.0);
    CHECK(std::fabs(odd / double(n) - expected) < 0.02);

    soft.softness = -1.0;
    CHECK_THROWS(soft.validate());
}
