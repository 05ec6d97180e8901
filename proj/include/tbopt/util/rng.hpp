/*
 Copyright 2026 The tbopt authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef TBOPT_UTIL_RNG_HPP
#define TBOPT_UTIL_RNG_HPP

#include <cstdint>

namespace tbopt {

/// splitmix64 finalizer. Used to derive independent per-(iteration, knot)
/// RNG streams from one user seed so parallel sampling is order-independent.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Stream seed for a (seed, iteration, knot) triple.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t iteration,
                                   std::uint64_t knot) {
  return mix64(seed ^ mix64(iteration ^ mix64(knot)));
}

}  // namespace tbopt

#endif  // TBOPT_UTIL_RNG_HPP
