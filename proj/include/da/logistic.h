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

#ifndef DA_LOGISTIC_H_
#define DA_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "da/dataset.h"

namespace da {

struct LogisticHyperparams {
  double learning_rate = 0.1;
  int iterations = 2000;
  double l2_penalty = 1e-4;
  double gradient_tolerance = 1e-6;
};

// Logistic regression over one-hot encoded categorical features. The label
// attribute must have exactly two values; value index 1 is the positive class.
struct ClassifierModel {
  size_t label_attribute = 0;
  std::vector<size_t> feature_attributes;
  std::vector<size_t> offsets;  // first weight of each feature's one-hot block
  // Sum of feature domain sizes, then the intercept.
  std::vector<double> weights;
  LogisticHyperparams hyperparams;
  int iterations_run = 0;
  std::vector<double> loss_history;
  // Set when the training labels were single-class.
  std::string warning;

  double PositiveProbability(std::span<const ValueIndex> row) const;
  ValueIndex Predict(std::span<const ValueIndex> row) const {
    return PositiveProbability(row) >= 0.5 ? 1 : 0;
  }
};

absl::StatusOr<ClassifierModel> TrainLogistic(
    const Dataset& dataset, const std::string& label_attribute,
    const std::vector<std::string>& feature_attributes,
    const LogisticHyperparams& hyperparams = {});

// Fraction of rows whose label is predicted correctly.
absl::StatusOr<double> Accuracy(const ClassifierModel& model,
                                const Dataset& dataset);

}  // namespace da

#endif  // DA_LOGISTIC_H_
