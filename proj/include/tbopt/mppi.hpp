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

#ifndef TBOPT_MPPI_HPP
#define TBOPT_MPPI_HPP

#include <cstdint>
#include <vector>

#include "tbopt/problem.hpp"
#include "tbopt/types.hpp"

namespace tbopt {

struct ControlPolicy {
  std::vector<Eigen::VectorXd> controls;

  int horizon() const { return static_cast<int>(controls.size()); }
  static ControlPolicy zeros(int horizon, int n_u);
};

enum class ShiftFill { kRepeatLast, kZero };

struct MppiConfig {
  double lambda = 1.0;
  int m_samples = 64;
  Eigen::VectorXd noise_sigma;  ///< per-channel control noise scale
  int horizon = 0;
  std::uint64_t rng_seed = 0;
  ShiftFill shift_fill = ShiftFill::kRepeatLast;
  int workers = 1;

  void validate() const;
};

struct RolloutResult {
  Trajectory trajectory;
  double cost = 0.0;
  bool finite = true;  ///< false when dynamics produced non-finite values
};

/// Single-shooting rollout: states follow x_next = f(x, u) from x0 under the
/// policy; cost is the problem's own objective (squared stage residuals plus
/// the squared terminal residual). Non-finite dynamics output does not throw:
/// the result carries cost +inf and finite=false so softmax weighting
/// discards the sample.
RolloutResult rollout(const ControlPolicy& policy, const Eigen::VectorXd& x0,
                      const ProblemDefinition& problem);

struct MppiDiagnostics {
  Eigen::VectorXd costs;
  Eigen::VectorXd weights;
  int best_index = 0;
  double best_cost = 0.0;
  double effective_samples = 0.0;  ///< 1 / sum_i weight_i^2
};

/// One update: draws m-1 noisy policies around the nominal (the nominal
/// itself is the final sample), rolls all of them out, weights by the
/// entropy-regularized closed form, and returns the weighted average. A
/// weight vector that is exactly one-hot returns that sample verbatim, so
/// the lambda = 0 mode reproduces the best rollout's policy bit for bit.
ControlPolicy mppi_update(const ControlPolicy& nominal, const Eigen::VectorXd& x0,
                          const ProblemDefinition& problem, const MppiConfig& cfg,
                          MppiDiagnostics* diag = nullptr, std::uint64_t step_index = 0);

struct MpcResult {
  Trajectory executed;
  std::vector<MppiDiagnostics> diagnostics;
};

/// Receding-horizon loop: per step one mppi_update, apply the first control
/// through the dynamics, then shift the nominal left filling the tail per
/// shift_fill.
MpcResult mpc_run(const ProblemDefinition& problem, const Eigen::VectorXd& x0,
                  const MppiConfig& cfg, int steps);

}  // namespace tbopt

#endif  // TBOPT_MPPI_HPP
