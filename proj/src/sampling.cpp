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

#include "tbopt/sampling.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "tbopt/util/rng.hpp"

namespace tbopt {

namespace {

// Samples around a stacked point z with half-widths dz. The iterate itself is
// always the final sample so an interpolation weight of e_m reproduces it.
std::vector<Eigen::VectorXd> sample_stacked(const Eigen::VectorXd& z, const Eigen::VectorXd& dz,
                                            const SamplerConfig& cfg, const SampleContext& ctx) {
  const auto n = static_cast<int>(z.size());
  std::vector<Eigen::VectorXd> samples;

  if (cfg.scheme == SampleScheme::kCoordinate) {
    samples.reserve(2 * n + 1);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd zi = z;
      zi(i) += dz(i);
      samples.push_back(std::move(zi));
    }
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd zi = z;
      zi(i) -= dz(i);
      samples.push_back(std::move(zi));
    }
    samples.push_back(z);
    return samples;
  }

  const int m = cfg.m_override.value_or(2 * n + 1);
  std::mt19937_64 gen(derive_stream(cfg.rng_seed, ctx.iteration, ctx.knot));
  samples.reserve(m);

  if (cfg.scheme == SampleScheme::kGaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int j = 0; j + 1 < m; ++j) {
      Eigen::VectorXd zj(n);
      for (int i = 0; i < n; ++i) {
        const double step = 0.5 * dz(i) * normal(gen);
        zj(i) = z(i) + std::clamp(step, -dz(i), dz(i));
      }
      samples.push_back(std::move(zj));
    }
  } else {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int j = 0; j + 1 < m; ++j) {
      Eigen::VectorXd zj(n);
      for (int i = 0; i < n; ++i) {
        zj(i) = z(i) + dz(i) * unit(gen);
      }
      samples.push_back(std::move(zj));
    }
  }
  samples.push_back(z);
  return samples;
}

void check_sizes(const Eigen::VectorXd& v, const Eigen::VectorXd& half_width, const char* what) {
  if (v.size() != half_width.size()) {
    throw std::invalid_argument(std::string("sample_knot: ") + what + " has size " +
                                std::to_string(v.size()) + " but trust region has size " +
                                std::to_string(half_width.size()));
  }
}

}  // namespace

void SamplerConfig::validate() const {
  if (m_override && *m_override < 2) {
    throw std::invalid_argument("SamplerConfig: m_override must be at least 2, got " +
                                std::to_string(*m_override));
  }
}

KnotSamples sample_knot(const Eigen::VectorXd& iterate_x, const Eigen::VectorXd& iterate_u,
                        const TrustRegion& tr, const SamplerConfig& cfg,
                        const SampleContext& ctx) {
  cfg.validate();
  tr.validate();
  check_sizes(iterate_x, tr.delta_x, "state");
  check_sizes(iterate_u, tr.delta_u, "control");

  const auto n_x = static_cast<int>(iterate_x.size());
  const auto n_u = static_cast<int>(iterate_u.size());

  KnotSamples out;
  if (ctx.pinned_state) {
    auto stacked = sample_stacked(iterate_u, tr.delta_u, cfg, ctx);
    out.x.assign(stacked.size(), iterate_x);
    out.u = std::move(stacked);
    return out;
  }

  Eigen::VectorXd z(n_x + n_u);
  z << iterate_x, iterate_u;
  Eigen::VectorXd dz(n_x + n_u);
  dz << tr.delta_x, tr.delta_u;

  auto stacked = sample_stacked(z, dz, cfg, ctx);
  out.x.reserve(stacked.size());
  out.u.reserve(stacked.size());
  for (const auto& zj : stacked) {
    out.x.push_back(zj.head(n_x));
    out.u.push_back(zj.tail(n_u));
  }
  return out;
}

std::vector<Eigen::VectorXd> sample_terminal_knot(const Eigen::VectorXd& iterate_x,
                                                  const TrustRegion& tr, const SamplerConfig& cfg,
                                                  const SampleContext& ctx) {
  cfg.validate();
  tr.validate();
  check_sizes(iterate_x, tr.delta_x, "state");
  return sample_stacked(iterate_x, tr.delta_x, cfg, ctx);
}

}  // namespace tbopt
