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

#ifndef TBOPT_MLP_HPP
#define TBOPT_MLP_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tbopt {

/// Fully connected ReLU network. Hidden layers apply relu; the output layer
/// is linear. Optional per-input affine normalization is applied before the
/// first layer: (input - input_offset) .* input_scale.
struct MlpWeights {
  struct Layer {
    Eigen::MatrixXd weight;
    Eigen::VectorXd bias;
  };
  std::vector<Layer> layers;
  std::string activation = "relu";
  int n_in = 0;
  int n_out = 0;
  Eigen::VectorXd input_offset;  ///< empty: no normalization
  Eigen::VectorXd input_scale;

  void validate() const;
};

/// Reads the JSON weights format:
///   {"activation":"relu","n_in":...,"n_out":...,
///    "layers":[{"weight":[[row],[row],...],"bias":[...]}, ...],
///    "input_offset":[...],"input_scale":[...]}   (last two optional)
/// Rejects shape mismatches and non-finite entries with the layer index.
MlpWeights load_mlp_weights(const std::string& path);

void save_mlp_weights(const MlpWeights& w, const std::string& path);

Eigen::VectorXd mlp_forward(const MlpWeights& w, const Eigen::VectorXd& input);

/// Builds a network that reproduces the first n_out input coordinates
/// exactly via relu(x) - relu(-x); handy for exercising loaded-weights code
/// paths without a trained model.
MlpWeights identity_mlp(int n_in, int n_out);

}  // namespace tbopt

#endif  // TBOPT_MLP_HPP
