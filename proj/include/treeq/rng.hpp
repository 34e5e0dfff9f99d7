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

#ifndef TREEQ_RNG_HPP_
#define TREEQ_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace treeq {

// Named sub-streams for seed derivation. Values are part of the replay format.
enum class Stream : std::uint64_t {
    kTrainWorld = 1,
    kTrainRollout = 2,
    kEvalWorld = 3,
    kEvalRollout = 4,
    kOracle = 5,
    kGuesser = 6,
    kWorldTarget = 7,
};

std::uint64_t splitmix64(std::uint64_t& state);

// Counter-based derivation: a pure function of (master, stream, index).
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index);

// mt19937_64 with distribution helpers that do not depend on the standard
// library's (implementation-defined) distribution algorithms, so streams
// reproduce bit-exactly across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n); n must be positive.
    std::size_t index(std::size_t n);

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace treeq

#endif  // TREEQ_RNG_HPP_
