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

#ifndef DA_EXPERIMENT_H_
#define DA_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "da/accounting.h"
#include "da/dataset.h"
#include "da/histogram.h"
#include "da/logistic.h"
#include "da/mechanisms.h"
#include "da/metrics.h"
#include "da/rng.h"
#include "da/synthetic.h"
#include "json.hpp"

namespace da {

// Differentially private mechanisms.
inline constexpr char kLaplace[] = "laplace";
inline constexpr char kDiscreteGaussian[] = "discrete_gaussian";
inline constexpr char kDpCellSuppression[] = "dp_cell_suppression";
inline constexpr char kDpSwapping[] = "dp_swapping";
inline constexpr char kDpKAnonymity[] = "dp_k_anonymity";
// Traditional counterparts and a no-op reference.
inline constexpr char kCellSuppression[] = "cell_suppression";
inline constexpr char kSwapping[] = "swapping";
inline constexpr char kKAnonymity[] = "k_anonymity";
inline constexpr char kIdentity[] = "identity";

bool IsKnownMechanism(const std::string& name);
// True when the mechanism takes an epsilon.
bool IsPrivateMechanism(const std::string& name);

struct ExperimentConfig {
  // Empty dataset path: rows come from the bundled generator.
  std::string dataset_path;
  std::string schema_path;
  bool acs_binning = true;
  SyntheticOptions synthetic;

  std::vector<double> epsilons = {0.5, 1, 2, 4};
  // The first entry drives the data-release and classification runs.
  std::vector<int64_t> ks = {6};
  std::vector<double> swap_fractions = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
  int64_t repetitions = 200;
  uint64_t seed = 1;
  std::vector<std::string> mechanisms = {kLaplace, kDiscreteGaussian,
                                         kDpCellSuppression, kDpSwapping,
                                         kDpKAnonymity};
  CellSuppressionVariant cs_variant = CellSuppressionVariant::kPerCellNoise;
  std::optional<double> beta_override;
  std::vector<std::string> kanon_quasi_identifiers = {"RACE", "SEX",
                                                      "OWNERSHP", "AGE"};
  std::string label = "INCTOT";
  std::vector<std::string> features = {"RACE", "SEX", "OWNERSHP", "AGE"};
  LogisticHyperparams logistic;
  std::string output_dir = "out";

  absl::Status Validate() const;

  // Unknown keys are rejected.
  static absl::StatusOr<ExperimentConfig> FromJson(const nlohmann::json& json);
  static absl::StatusOr<ExperimentConfig> Load(const std::string& path);
  nlohmann::json ToJson() const;
};

struct ReleaseRow {
  double epsilon = 0;
  std::string mechanism;
  std::optional<double> delta;  // empty where no closed form applies
  double bias_l1 = 0;
  double alpha = 0;
  double mean_l1_error = 0;
  double l1_error_se = 0;
};

struct ReleaseReport {
  int64_t k = 0;
  int64_t bound = 0;  // largest cell count
  uint64_t n_q = 0;
  std::vector<ReleaseRow> rows;
  std::vector<DeltaReport> accounting;
};

enum class SweepAxis {
  kCsThreshold,
  kSwapFraction,
  kKanonK,
};

std::string SweepAxisName(SweepAxis axis);
absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name);

struct SweepRow {
  double axis_value = 0;
  std::string mechanism;
  std::optional<double> epsilon;  // empty for traditional mechanisms
  double mean_l1_error = 0;
  double l1_error_se = 0;
  double alpha = 0;
};

struct ClassificationRow {
  std::string mechanism;
  std::optional<double> epsilon;
  double mean_accuracy = 0;
  double accuracy_se = 0;
};

struct ClassificationReport {
  double baseline_accuracy = 0;
  std::vector<ClassificationRow> rows;
};

// One randomized run of a mechanism on the experiment's data.
struct Privatizer {
  // Released histogram over the experiment schema.
  std::function<absl::StatusOr<RealHistogram>(Rng&)> histogram;
  // Released microdata over the experiment schema.
  std::function<absl::StatusOr<Dataset>(Rng&)> dataset;
  // Negative or fractional counts are projected before measuring.
  bool project = false;
};

struct MechanismParams {
  double epsilon = 1;
  int64_t k = 6;
  double swap_fraction = 1;
};

class Experiment {
 public:
  static absl::StatusOr<Experiment> Create(ExperimentConfig config);

  const ExperimentConfig& config() const { return config_; }
  const Dataset& dataset() const { return *dataset_; }
  const Histogram& histogram() const { return *histogram_; }

  absl::StatusOr<Privatizer> MakePrivatizer(const std::string& name,
                                            const MechanismParams& params) const;

  absl::StatusOr<ReleaseReport> RunDataRelease() const;
  absl::StatusOr<std::vector<SweepRow>> RunSweep(SweepAxis axis) const;
  absl::StatusOr<ClassificationReport> RunClassification() const;

  // Mean l1 error, its SE and the mean-bias alpha over the configured
  // repetitions.
  absl::StatusOr<SweepRow> Measure(const std::string& name,
                                   const MechanismParams& params) const;

 private:
  struct Study {
    EmpiricalStudy empirical;
    FairnessReport fairness;
  };

  absl::StatusOr<Study> RunStudy(const std::string& name,
                                 const MechanismParams& params) const;

  Experiment(ExperimentConfig config, std::shared_ptr<const Dataset> dataset,
             std::shared_ptr<const Schema> kanon_schema);

  ExperimentConfig config_;
  std::shared_ptr<const Dataset> dataset_;
  std::shared_ptr<const Histogram> histogram_;
  std::shared_ptr<const Schema> kanon_schema_;
};

void WriteReleaseCsv(const ReleaseReport& report, std::ostream& out);
nlohmann::json ReleaseToJson(const ReleaseReport& report);
void WriteSweepCsv(SweepAxis axis, const std::vector<SweepRow>& rows,
                   std::ostream& out);
void WriteClassificationCsv(const ClassificationReport& report,
                            std::ostream& out);

// Writes `contents` to dir/name, creating dir.
absl::Status WriteOutputFile(const std::string& dir, const std::string& name,
                             const std::string& contents);

}  // namespace da

#endif  // DA_EXPERIMENT_H_
