// Copyright 2026 The credsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// All randomness in a run flows from one 64-bit seed through std::mt19937_64,
// whose output stream is pinned by the C++ standard and therefore identical
// on every platform. std::uniform_real_distribution is *not* pinned, so the
// [0,1) mapping is done by hand: take the top 53 bits of one output word.
// Golden outputs depend on this exact stream.

#ifndef CREDSIM_RNG_HPP_
#define CREDSIM_RNG_HPP_

#include <cstdint>
#include <random>

namespace credsim {

using Rng = std::mt19937_64;

// Uniform draw in [0, 1) with 53-bit resolution; consumes one engine word.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Bernoulli trial; always consumes one engine word, even for prob 0 or 1, so
// the draw pattern does not depend on parameter values.
inline bool bernoulli(Rng& rng, double prob) { return uniform01(rng) < prob; }

}  // namespace credsim

#endif  // CREDSIM_RNG_HPP_
