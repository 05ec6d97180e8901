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

#include <doctest.h>

#include "tbopt/sampling.hpp"

using namespace tbopt;

namespace {

TrustRegion box(std::initializer_list<double> dx, std::initializer_list<double> du) {
  TrustRegion tr;
  tr.delta_x.resize(static_cast<Eigen::Index>(dx.size()));
  Eigen::Index i = 0;
  for (double v : dx) tr.delta_x[i++] = v;
  tr.delta_u.resize(static_cast<Eigen::Index>(du.size()));
  i = 0;
  for (double v : du) tr.delta_u[i++] = v;
  return tr;
}

bool inside_box(const Eigen::VectorXd& v, const Eigen::VectorXd& center,
                const Eigen::VectorXd& half) {
  return ((v - center).cwiseAbs().array() <= half.array() + 1e-15).all();
}

}  // namespace

TEST_CASE("coordinate scheme perturbs each coordinate both ways then keeps the iterate") {
  const Eigen::Vector2d x(1.0, 2.0);
  const TrustRegion tr = box({0.1, 0.2}, {1.0});
  const auto samples = sample_terminal_knot(x, tr, SamplerConfig{});
  REQUIRE(samples.size() == 5);
  CHECK(samples[0].isApprox(Eigen::Vector2d(1.1, 2.0)));
  CHECK(samples[1].isApprox(Eigen::Vector2d(1.0, 2.2)));
  CHECK(samples[2].isApprox(Eigen::Vector2d(0.9, 2.0)));
  CHECK(samples[3].isApprox(Eigen::Vector2d(1.0, 1.8)));
  CHECK(samples[4].isApprox(x));
}

TEST_CASE("stage sampling stacks state and control coordinates") {
  const Eigen::Vector2d x(0.0, 0.0);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(1, 0.5);
  const TrustRegion tr = box({1.0, 1.0}, {0.25});
  const KnotSamples s = sample_knot(x, u, tr, SamplerConfig{});
  REQUIRE(s.x.size() == 7);
  REQUIRE(s.u.size() == 7);
  CHECK((s.x[0] - Eigen::Vector2d(1.0, 0.0)).norm() == 0.0);
  CHECK(s.u[0][0] == 0.5);
  CHECK(s.u[2][0] == 0.75);
  CHECK((s.x[4] - Eigen::Vector2d(0.0, -1.0)).norm() == 0.0);
  CHECK(s.u[4][0] == 0.5);
  CHECK(s.u[5][0] == 0.25);
  CHECK((s.x[6] - x).norm() == 0.0);
  CHECK(s.u[6][0] == 0.5);
}

TEST_CASE("pinned-state sampling perturbs controls only") {
  const Eigen::Vector2d x(3.0, -1.0);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(2);
  const TrustRegion tr = box({1.0, 1.0}, {0.5, 0.5});
  SampleContext ctx;
  ctx.pinned_state = true;
  const KnotSamples s = sample_knot(x, u, tr, SamplerConfig{}, ctx);
  REQUIRE(s.x.size() == 5);
  for (const auto& xs : s.x) {
    CHECK((xs - x).lpNorm<Eigen::Infinity>() == 0.0);
  }
  CHECK(s.u[0].isApprox(Eigen::Vector2d(0.5, 0.0)));
  CHECK(s.u[3].isApprox(Eigen::Vector2d(0.0, -0.5)));
}

TEST_CASE("randomized schemes stay in the box and end with the iterate") {
  const Eigen::Vector3d x(1.0, -2.0, 0.5);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(2);
  const TrustRegion tr = box({0.3, 0.2, 0.1}, {1.0, 2.0});
  for (SampleScheme scheme : {SampleScheme::kGaussian, SampleScheme::kUniform}) {
    SamplerConfig cfg;
    cfg.scheme = scheme;
    cfg.m_override = 16;
    cfg.rng_seed = 42;
    const KnotSamples s = sample_knot(x, u, tr, cfg);
    REQUIRE(s.x.size() == 16);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      CHECK(inside_box(s.x[j], x, tr.delta_x));
      CHECK(inside_box(s.u[j], u, tr.delta_u));
    }
    CHECK(s.x.back().isApprox(x));
    CHECK(s.u.back().isApprox(u));
  }
}

TEST_CASE("randomized sampling is a pure function of seed, iteration, and knot") {
  const Eigen::Vector2d x(0.0, 0.0);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(1);
  const TrustRegion tr = box({1.0, 1.0}, {1.0});
  SamplerConfig cfg;
  cfg.scheme = SampleScheme::kUniform;
  cfg.rng_seed = 9;

  SampleContext ctx;
  ctx.iteration = 4;
  ctx.knot = 2;
  const KnotSamples a = sample_knot(x, u, tr, cfg, ctx);
  const KnotSamples b = sample_knot(x, u, tr, cfg, ctx);
  REQUIRE(a.x.size() == b.x.size());
  for (std::size_t j = 0; j < a.x.size(); ++j) {
    CHECK((a.x[j] - b.x[j]).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((a.u[j] - b.u[j]).lpNorm<Eigen::Infinity>() == 0.0);
  }

  SampleContext other = ctx;
  other.knot = 3;
  const KnotSamples c = sample_knot(x, u, tr, cfg, other);
  bool any_diff = false;
  for (std::size_t j = 0; j + 1 < a.x.size(); ++j) {
    any_diff = any_diff || (a.x[j] - c.x[j]).lpNorm<Eigen::Infinity>() > 0.0;
  }
  CHECK(any_diff);
}

TEST_CASE("coordinate scheme ignores the sample-count override") {
  const Eigen::Vector2d x(0.0, 0.0);
  const TrustRegion tr = box({1.0, 1.0}, {1.0});
  SamplerConfig cfg;
  cfg.m_override = 11;
  CHECK(sample_terminal_knot(x, tr, cfg).size() == 5);
}

TEST_CASE("sampler rejects undersized overrides and bad trust regions") {
  SamplerConfig cfg;
  cfg.m_override = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  const Eigen::Vector2d x(0.0, 0.0);
  TrustRegion tr = box({1.0, 0.0}, {1.0});
  CHECK_THROWS_AS(sample_terminal_knot(x, tr, SamplerConfig{}), std::invalid_argument);

  TrustRegion wrong = box({1.0}, {1.0});
  CHECK_THROWS_AS(sample_terminal_knot(x, wrong, SamplerConfig{}), std::invalid_argument);
}
