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

#ifndef TBOPT_SAMPLING_HPP
#define TBOPT_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tbopt/problem.hpp"

namespace tbopt {

enum class SampleScheme { kCoordinate, kGaussian, kUniform };

/// How per-knot samples are drawn around the iterate.
///  - coordinate: deterministic +/- perturbation of each stacked coordinate,
///    m = 2n+1 (m_override ignored);
///  - gaussian: sigma = delta/2 per coordinate, clipped to the trust-region
///    box so every sample stays inside it;
///  - uniform: uniform on the box.
/// Randomized schemes append the iterate itself as the final sample and
/// draw from a stream derived from (rng_seed, iteration, knot).
struct SamplerConfig {
  SampleScheme scheme = SampleScheme::kCoordinate;
  std::optional<int> m_override;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Where in the solve a sample set is drawn; keys the derived RNG stream.
struct SampleContext {
  std::uint64_t iteration = 0;
  std::uint64_t knot = 0;
  bool pinned_state = false;  ///< knot-1 flag: perturb controls only
};

struct KnotSamples {
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> u;
};

/// Samples m (state, control) pairs around the iterate inside the
/// trust-region box. With ctx.pinned_state the state block is copied
/// unperturbed into every sample. Throws on non-positive trust-region
/// entries or dimension mismatches.
KnotSamples sample_knot(const Eigen::VectorXd& iterate_x, const Eigen::VectorXd& iterate_u,
                        const TrustRegion& tr, const SamplerConfig& cfg,
                        const SampleContext& ctx = {});

/// State-only sampling for the terminal knot.
std::vector<Eigen::VectorXd> sample_terminal_knot(const Eigen::VectorXd& iterate_x,
                                                  const TrustRegion& tr, const SamplerConfig& cfg,
                                                  const SampleContext& ctx = {});

}  // namespace tbopt

#endif  // TBOPT_SAMPLING_HPP
