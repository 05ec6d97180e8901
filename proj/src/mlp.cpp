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

#include "tbopt/mlp.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tbopt {

namespace {

Eigen::VectorXd to_vector(const nlohmann::json& arr, const std::string& what) {
  if (!arr.is_array()) {
    throw std::runtime_error("mlp weights: " + what + " is not an array");
  }
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw std::runtime_error("mlp weights: " + what + " has a non-numeric entry");
    }
    v(static_cast<int>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

void MlpWeights::validate() const {
  if (activation != "relu") {
    throw std::runtime_error("mlp weights: unsupported activation '" + activation + "'");
  }
  if (layers.empty()) {
    throw std::runtime_error("mlp weights: no layers");
  }
  int expect = n_in;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const std::string tag = "layer " + std::to_string(i + 1);
    if (l.weight.cols() != expect) {
      throw std::runtime_error("mlp weights: " + tag + " expects input " +
                               std::to_string(l.weight.cols()) + " but previous layer yields " +
                               std::to_string(expect));
    }
    if (l.bias.size() != l.weight.rows()) {
      throw std::runtime_error("mlp weights: " + tag + " bias length " +
                               std::to_string(l.bias.size()) + " does not match rows " +
                               std::to_string(l.weight.rows()));
    }
    if (!l.weight.allFinite() || !l.bias.allFinite()) {
      throw std::runtime_error("mlp weights: " + tag + " contains non-finite values");
    }
    expect = static_cast<int>(l.weight.rows());
  }
  if (expect != n_out) {
    throw std::runtime_error("mlp weights: final layer yields " + std::to_string(expect) +
                             " but n_out is " + std::to_string(n_out));
  }
  if (input_offset.size() != input_scale.size()) {
    throw std::runtime_error("mlp weights: input_offset/input_scale length mismatch");
  }
  if (input_offset.size() > 0 && input_offset.size() != n_in) {
    throw std::runtime_error("mlp weights: normalization length differs from n_in");
  }
  if (input_offset.size() > 0 && (!input_offset.allFinite() || !input_scale.allFinite())) {
    throw std::runtime_error("mlp weights: normalization contains non-finite values");
  }
}

MlpWeights load_mlp_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("mlp weights: cannot open " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("mlp weights: " + path + " is not valid JSON: " + e.what());
  }

  MlpWeights w;
  w.activation = doc.value("activation", "relu");
  if (!doc.contains("n_in") || !doc.contains("n_out") || !doc.contains("layers")) {
    throw std::runtime_error("mlp weights: missing one of n_in/n_out/layers in " + path);
  }
  w.n_in = doc["n_in"].get<int>();
  w.n_out = doc["n_out"].get<int>();

  for (std::size_t li = 0; li < doc["layers"].size(); ++li) {
    const auto& jl = doc["layers"][li];
    const std::string tag = "layer " + std::to_string(li + 1);
    if (!jl.contains("weight") || !jl.contains("bias")) {
      throw std::runtime_error("mlp weights: " + tag + " missing weight or bias");
    }
    const auto& jw = jl["weight"];
    if (!jw.is_array() || jw.empty()) {
      throw std::runtime_error("mlp weights: " + tag + " weight is not a 2-D array");
    }
    const auto rows = jw.size();
    const auto cols = jw[0].size();
    MlpWeights::Layer layer;
    layer.weight.resize(static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      if (!jw[r].is_array() || jw[r].size() != cols) {
        throw std::runtime_error("mlp weights: " + tag + " row " + std::to_string(r + 1) +
                                 " has inconsistent length");
      }
      for (std::size_t c = 0; c < cols; ++c) {
        layer.weight(static_cast<int>(r), static_cast<int>(c)) = jw[r][c].get<double>();
      }
    }
    layer.bias = to_vector(jl["bias"], tag + " bias");
    w.layers.push_back(std::move(layer));
  }

  if (doc.contains("input_offset")) {
    w.input_offset = to_vector(doc["input_offset"], "input_offset");
  }
  if (doc.contains("input_scale")) {
    w.input_scale = to_vector(doc["input_scale"], "input_scale");
  }
  w.validate();
  return w;
}

void save_mlp_weights(const MlpWeights& w, const std::string& path) {
  w.validate();
  nlohmann::json doc;
  doc["activation"] = w.activation;
  doc["n_in"] = w.n_in;
  doc["n_out"] = w.n_out;
  doc["layers"] = nlohmann::json::array();
  for (const auto& l : w.layers) {
    nlohmann::json jw = nlohmann::json::array();
    for (int r = 0; r < l.weight.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < l.weight.cols(); ++c) {
        row.push_back(l.weight(r, c));
      }
      jw.push_back(std::move(row));
    }
    doc["layers"].push_back(
        {{"weight", std::move(jw)},
         {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  if (w.input_offset.size() > 0) {
    doc["input_offset"] =
        std::vector<double>(w.input_offset.data(), w.input_offset.data() + w.input_offset.size());
    doc["input_scale"] =
        std::vector<double>(w.input_scale.data(), w.input_scale.data() + w.input_scale.size());
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("mlp weights: cannot write " + path);
  }
  out << doc.dump(2) << '\n';
}

Eigen::VectorXd mlp_forward(const MlpWeights& w, const Eigen::VectorXd& input) {
  if (input.size() != w.n_in) {
    throw std::invalid_argument("mlp_forward: input length " + std::to_string(input.size()) +
                                ", network expects " + std::to_string(w.n_in));
  }
  Eigen::VectorXd h = input;
  if (w.input_offset.size() > 0) {
    h = (h - w.input_offset).cwiseProduct(w.input_scale);
  }
  for (std::size_t i = 0; i < w.layers.size(); ++i) {
    h = w.layers[i].weight * h + w.layers[i].bias;
    if (i + 1 < w.layers.size()) {
      h = h.cwiseMax(0.0);
    }
  }
  return h;
}

MlpWeights identity_mlp(int n_in, int n_out) {
  if (n_out > n_in || n_in < 1 || n_out < 1) {
    throw std::invalid_argument("identity_mlp: need 1 <= n_out <= n_in");
  }
  MlpWeights w;
  w.n_in = n_in;
  w.n_out = n_out;
  MlpWeights::Layer hidden;
  hidden.weight.resize(2 * n_in, n_in);
  hidden.weight << Eigen::MatrixXd::Identity(n_in, n_in),
      -Eigen::MatrixXd::Identity(n_in, n_in);
  hidden.bias = Eigen::VectorXd::Zero(2 * n_in);
  MlpWeights::Layer out;
  Eigen::MatrixXd select = Eigen::MatrixXd::Zero(n_out, n_in);
  select.leftCols(n_out) = Eigen::MatrixXd::Identity(n_out, n_out);
  out.weight.resize(n_out, 2 * n_in);
  out.weight << select, -select;
  out.bias = Eigen::VectorXd::Zero(n_out);
  w.layers.push_back(std::move(hidden));
  w.layers.push_back(std::move(out));
  w.validate();
  return w;
}

}  // namespace tbopt
