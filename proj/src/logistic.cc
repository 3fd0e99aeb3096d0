// Copyright 2026 The DA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "da/logistic.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace da {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1 / (1 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1 + e);
}

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

struct WeightedExample {
  std::vector<size_t> active;  // weight indices of the one-hot features
  double label = 0;
  double weight = 0;
};

double Score(const std::vector<double>& weights,
             const std::vector<size_t>& active) {
  double z = weights.back();
  for (size_t j : active) z += weights[j];
  return z;
}

}  // namespace

double ClassifierModel::PositiveProbability(
    std::span<const ValueIndex> row) const {
  double z = weights.back();
  for (size_t f = 0; f < feature_attributes.size(); ++f) {
    z += weights[offsets[f] + row[feature_attributes[f]]];
  }
  return Sigmoid(z);
}

absl::StatusOr<ClassifierModel> TrainLogistic(
    const Dataset& dataset, const std::string& label_attribute,
    const std::vector<std::string>& feature_attributes,
    const LogisticHyperparams& hyperparams) {
  const Schema& schema = dataset.schema();
  if (hyperparams.learning_rate <= 0 || hyperparams.iterations < 0 ||
      hyperparams.l2_penalty < 0) {
    return absl::InvalidArgumentError("invalid logistic hyperparameters");
  }
  ClassifierModel model;
  model.hyperparams = hyperparams;
  const std::optional<size_t> label = schema.AttributeIndex(label_attribute);
  if (!label.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown label attribute '", label_attribute, "'"));
  }
  if (schema.attribute(*label).domain.size() != 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "label attribute '", label_attribute, "' is not binary"));
  }
  model.label_attribute = *label;
  size_t width = 0;
  for (const std::string& name : feature_attributes) {
    const std::optional<size_t> index = schema.AttributeIndex(name);
    if (!index.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown feature attribute '", name, "'"));
    }
    if (*index == *label) {
      return absl::InvalidArgumentError("the label cannot be a feature");
    }
    model.feature_attributes.push_back(*index);
    model.offsets.push_back(width);
    width += schema.attribute(*index).domain.size();
  }
  model.weights.assign(width + 1, 0);

  // Identical rows collapse into one weighted example.
  std::map<std::vector<size_t>, std::pair<double, double>> unique;
  double total = 0, positives = 0;
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    std::vector<size_t> active;
    active.reserve(model.feature_attributes.size());
    for (size_t f = 0; f < model.feature_attributes.size(); ++f) {
      active.push_back(model.offsets[f] +
                       dataset.value(r, model.feature_attributes[f]));
    }
    auto& [count, positive] = unique[std::move(active)];
    const bool y = dataset.value(r, *label) == 1;
    count += 1;
    positive += y;
    total += 1;
    positives += y;
  }

  if (positives == 0 || positives == total) {
    model.warning = absl::StrCat(
        "training labels are single-class (", positives, " of ", total,
        " positive); fitted an intercept-only model");
    // Smoothed log-odds keeps the intercept finite.
    model.weights.back() = std::log((positives + 0.5) / (total - positives + 0.5));
    return model;
  }

  std::vector<WeightedExample> examples;
  examples.reserve(2 * unique.size());
  for (const auto& [active, counts] : unique) {
    const auto [count, positive] = counts;
    if (positive > 0) examples.push_back({active, 1.0, positive / total});
    if (count > positive) {
      examples.push_back({active, 0.0, (count - positive) / total});
    }
  }

  std::vector<double>& w = model.weights;
  std::vector<double> gradient(w.size());
  auto loss_and_gradient = [&]() {
    std::fill(gradient.begin(), gradient.end(), 0);
    double loss = 0;
    for (const WeightedExample& e : examples) {
      const double z = Score(w, e.active);
      loss += e.weight * (Softplus(z) - e.label * z);
      const double residual = e.weight * (Sigmoid(z) - e.label);
      for (size_t j : e.active) gradient[j] += residual;
      gradient.back() += residual;
    }
    // The intercept is not penalized.
    for (size_t j = 0; j + 1 < w.size(); ++j) {
      loss += 0.5 * hyperparams.l2_penalty * w[j] * w[j];
      gradient[j] += hyperparams.l2_penalty * w[j];
    }
    return loss;
  };

  for (int it = 0; it < hyperparams.iterations; ++it) {
    const double loss = loss_and_gradient();
    model.loss_history.push_back(loss);
    double norm = 0;
    for (double g : gradient) norm += g * g;
    if (std::sqrt(norm) < hyperparams.gradient_tolerance) break;
    for (size_t j = 0; j < w.size(); ++j) {
      w[j] -= hyperparams.learning_rate * gradient[j];
    }
    model.iterations_run = it + 1;
  }
  model.loss_history.push_back(loss_and_gradient());
  return model;
}

absl::StatusOr<double> Accuracy(const ClassifierModel& model,
                                const Dataset& dataset) {
  if (dataset.num_rows() == 0) {
    return absl::InvalidArgumentError("accuracy on an empty dataset");
  }
  const Schema& schema = dataset.schema();
  if (model.label_attribute >= schema.num_attributes()) {
    return absl::InvalidArgumentError("model does not match the dataset");
  }
  for (size_t f = 0; f < model.feature_attributes.size(); ++f) {
    const size_t a = model.feature_attributes[f];
    const size_t next = f + 1 < model.offsets.size() ? model.offsets[f + 1]
                                                     : model.weights.size() - 1;
    if (a >= schema.num_attributes() ||
        schema.attribute(a).domain.size() != next - model.offsets[f]) {
      return absl::InvalidArgumentError("model does not match the dataset");
    }
  }
  size_t correct = 0;
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    const auto row = dataset.row(r);
    correct += model.Predict(row) == row[model.label_attribute];
  }
  return static_cast<double>(correct) / dataset.num_rows();
}

}  // namespace da
