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

#include "da/experiment.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "da/anonymity.h"
#include "da/metrics.h"
#include "da/parallel.h"
#include "da/status_macros.h"

namespace da {
namespace {

const std::set<std::string>& PrivateMechanisms() {
  static const auto* names = new std::set<std::string>{
      kLaplace, kDiscreteGaussian, kDpCellSuppression, kDpSwapping,
      kDpKAnonymity};
  return *names;
}

const std::set<std::string>& OtherMechanisms() {
  static const auto* names = new std::set<std::string>{
      kCellSuppression, kSwapping, kKAnonymity, kIdentity};
  return *names;
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string FormatOptional(const std::optional<double>& value) {
  return value.has_value() ? FormatDouble(*value) : "";
}

template <typename T>
absl::Status ReadKey(const nlohmann::json& json, const char* key, T& out) {
  if (!json.contains(key)) return absl::OkStatus();
  try {
    out = json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config key '", key, "': ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double MeanSe(const std::vector<double>& values, double* mean) {
  const double n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  *mean = sum / n;
  if (values.size() < 2) return 0;
  double squares = 0;
  for (double v : values) squares += (v - *mean) * (v - *mean);
  return std::sqrt(squares / (n - 1) / n);
}

}  // namespace

bool IsKnownMechanism(const std::string& name) {
  return PrivateMechanisms().contains(name) || OtherMechanisms().contains(name);
}

bool IsPrivateMechanism(const std::string& name) {
  return PrivateMechanisms().contains(name);
}

absl::Status ExperimentConfig::Validate() const {
  if (repetitions < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("repetitions must be >= 1, got ", repetitions));
  }
  for (double epsilon : epsilons) DA_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (ks.empty()) return absl::InvalidArgumentError("k list is empty");
  for (int64_t k : ks) {
    if (k < 1) {
      return absl::InvalidArgumentError(absl::StrCat("k must be >= 1, got ", k));
    }
  }
  for (double f : swap_fractions) {
    if (!(f >= 0 && f <= 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("swap fraction must lie in [0, 1], got ", f));
    }
  }
  for (const std::string& name : mechanisms) {
    if (!IsKnownMechanism(name)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown mechanism '", name, "'"));
    }
  }
  if (beta_override.has_value() &&
      !(*beta_override > 0 && *beta_override < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta_override must lie in (0, 1), got ", *beta_override));
  }
  if (synthetic.rows == 0 && dataset_path.empty()) {
    return absl::InvalidArgumentError("synthetic row count must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::FromJson(
    const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  static const auto* known = new std::set<std::string>{
      "dataset",   "schema",     "acs_binning", "synthetic",
      "epsilons",  "k",          "swap_fractions", "repetitions",
      "seed",      "mechanisms", "cs_variant",  "beta_override",
      "kanon_quasi_identifiers", "label",       "features",
      "logistic",  "output_dir"};
  for (const auto& [key, value] : json.items()) {
    if (!known->contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", key, "'"));
    }
  }
  ExperimentConfig config;
  DA_RETURN_IF_ERROR(ReadKey(json, "dataset", config.dataset_path));
  DA_RETURN_IF_ERROR(ReadKey(json, "schema", config.schema_path));
  DA_RETURN_IF_ERROR(ReadKey(json, "acs_binning", config.acs_binning));
  if (json.contains("synthetic")) {
    const nlohmann::json& synthetic = json["synthetic"];
    DA_RETURN_IF_ERROR(ReadKey(synthetic, "rows", config.synthetic.rows));
    DA_RETURN_IF_ERROR(ReadKey(synthetic, "seed", config.synthetic.seed));
  }
  DA_RETURN_IF_ERROR(ReadKey(json, "epsilons", config.epsilons));
  DA_RETURN_IF_ERROR(ReadKey(json, "k", config.ks));
  DA_RETURN_IF_ERROR(ReadKey(json, "swap_fractions", config.swap_fractions));
  DA_RETURN_IF_ERROR(ReadKey(json, "repetitions", config.repetitions));
  DA_RETURN_IF_ERROR(ReadKey(json, "seed", config.seed));
  DA_RETURN_IF_ERROR(ReadKey(json, "mechanisms", config.mechanisms));
  std::string variant = "per_cell_noise";
  DA_RETURN_IF_ERROR(ReadKey(json, "cs_variant", variant));
  if (variant == "per_cell_noise") {
    config.cs_variant = CellSuppressionVariant::kPerCellNoise;
  } else if (variant == "noisy_threshold") {
    config.cs_variant = CellSuppressionVariant::kNoisyThreshold;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown cs_variant '", variant, "'"));
  }
  if (json.contains("beta_override") && !json["beta_override"].is_null()) {
    double beta = 0;
    DA_RETURN_IF_ERROR(ReadKey(json, "beta_override", beta));
    config.beta_override = beta;
  }
  DA_RETURN_IF_ERROR(ReadKey(json, "kanon_quasi_identifiers",
                             config.kanon_quasi_identifiers));
  DA_RETURN_IF_ERROR(ReadKey(json, "label", config.label));
  DA_RETURN_IF_ERROR(ReadKey(json, "features", config.features));
  if (json.contains("logistic")) {
    const nlohmann::json& logistic = json["logistic"];
    DA_RETURN_IF_ERROR(
        ReadKey(logistic, "learning_rate", config.logistic.learning_rate));
    DA_RETURN_IF_ERROR(
        ReadKey(logistic, "iterations", config.logistic.iterations));
    DA_RETURN_IF_ERROR(
        ReadKey(logistic, "l2_penalty", config.logistic.l2_penalty));
  }
  DA_RETURN_IF_ERROR(ReadKey(json, "output_dir", config.output_dir));
  DA_RETURN_IF_ERROR(config.Validate());
  return config;
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::Load(
    const std::string& path) {
  DA_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": config is not valid JSON"));
  }
  return FromJson(json);
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json json = {
      {"dataset", dataset_path},
      {"schema", schema_path},
      {"acs_binning", acs_binning},
      {"synthetic", {{"rows", synthetic.rows}, {"seed", synthetic.seed}}},
      {"epsilons", epsilons},
      {"k", ks},
      {"swap_fractions", swap_fractions},
      {"repetitions", repetitions},
      {"seed", seed},
      {"mechanisms", mechanisms},
      {"cs_variant", cs_variant == CellSuppressionVariant::kPerCellNoise
                         ? "per_cell_noise"
                         : "noisy_threshold"},
      {"kanon_quasi_identifiers", kanon_quasi_identifiers},
      {"label", label},
      {"features", features},
      {"logistic",
       {{"learning_rate", logistic.learning_rate},
        {"iterations", logistic.iterations},
        {"l2_penalty", logistic.l2_penalty}}},
      {"output_dir", output_dir}};
  json["beta_override"] =
      beta_override.has_value() ? nlohmann::json(*beta_override) : nullptr;
  return json;
}

std::string SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kCsThreshold:
      return "cs_threshold";
    case SweepAxis::kSwapFraction:
      return "swap_fraction";
    case SweepAxis::kKanonK:
      return "kanon_k";
  }
  return "";
}

absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name) {
  for (SweepAxis axis : {SweepAxis::kCsThreshold, SweepAxis::kSwapFraction,
                         SweepAxis::kKanonK}) {
    if (SweepAxisName(axis) == name) return axis;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown sweep axis '", name, "'"));
}

Experiment::Experiment(ExperimentConfig config,
                       std::shared_ptr<const Dataset> dataset,
                       std::shared_ptr<const Schema> kanon_schema)
    : config_(std::move(config)),
      dataset_(std::move(dataset)),
      histogram_(std::make_shared<const Histogram>(BuildHistogram(*dataset_))),
      kanon_schema_(std::move(kanon_schema)) {}

absl::StatusOr<Experiment> Experiment::Create(ExperimentConfig config) {
  DA_RETURN_IF_ERROR(config.Validate());
  std::shared_ptr<const Schema> schema = AcsLikeSchema();
  if (!config.schema_path.empty()) {
    DA_ASSIGN_OR_RETURN(std::string text, ReadFile(config.schema_path));
    nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
    if (json.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat(config.schema_path, ": schema is not valid JSON"));
    }
    DA_ASSIGN_OR_RETURN(Schema parsed, Schema::FromJson(json));
    schema = std::make_shared<const Schema>(std::move(parsed));
  }
  std::shared_ptr<const Dataset> dataset;
  if (config.dataset_path.empty()) {
    if (!config.schema_path.empty()) {
      return absl::InvalidArgumentError(
          "a schema file requires a dataset path");
    }
    DA_ASSIGN_OR_RETURN(Dataset generated, GenerateSynthetic(config.synthetic));
    dataset = std::make_shared<const Dataset>(std::move(generated));
  } else {
    const Binning binning = Binning::AcsDefault();
    DA_ASSIGN_OR_RETURN(
        Dataset loaded,
        LoadCsv(config.dataset_path, schema,
                config.acs_binning ? &binning : nullptr));
    dataset = std::make_shared<const Dataset>(std::move(loaded));
  }
  std::shared_ptr<const Schema> kanon_schema = schema;
  if (!config.kanon_quasi_identifiers.empty()) {
    DA_ASSIGN_OR_RETURN(
        Schema with_qi,
        schema->WithQuasiIdentifiers(config.kanon_quasi_identifiers));
    kanon_schema = std::make_shared<const Schema>(std::move(with_qi));
  }
  return Experiment(std::move(config), std::move(dataset),
                    std::move(kanon_schema));
}

absl::StatusOr<Privatizer> Experiment::MakePrivatizer(
    const std::string& name, const MechanismParams& params) const {
  if (!IsKnownMechanism(name)) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown mechanism '", name, "'"));
  }
  if (IsPrivateMechanism(name)) {
    DA_RETURN_IF_ERROR(ValidateEpsilon(params.epsilon));
  }
  std::shared_ptr<const Histogram> histogram = histogram_;
  std::shared_ptr<const Dataset> dataset = dataset_;
  const double epsilon = params.epsilon;
  const int64_t k = params.k;
  Privatizer privatizer;
  privatizer.project = name == kLaplace || name == kDiscreteGaussian;

  std::function<absl::StatusOr<RealHistogram>(Rng&)> on_histogram;
  if (name == kIdentity) {
    on_histogram = [histogram](Rng&) -> absl::StatusOr<RealHistogram> {
      return ToReal(*histogram);
    };
  } else if (name == kLaplace) {
    on_histogram = [histogram, epsilon](Rng& rng) {
      return LaplaceMechanism(*histogram, epsilon, rng);
    };
  } else if (name == kDiscreteGaussian) {
    on_histogram = [histogram, epsilon](Rng& rng) {
      return DiscreteGaussianMechanism(*histogram, epsilon, rng);
    };
  } else if (name == kDpCellSuppression) {
    const CellSuppressionVariant variant = config_.cs_variant;
    on_histogram = [histogram, epsilon, k,
                    variant](Rng& rng) -> absl::StatusOr<RealHistogram> {
      DA_ASSIGN_OR_RETURN(
          Histogram out, DpCellSuppression(*histogram, k, epsilon, rng, variant));
      return ToReal(out);
    };
  } else if (name == kCellSuppression) {
    on_histogram = [histogram, k](Rng&) -> absl::StatusOr<RealHistogram> {
      return ToReal(CellSuppression(*histogram, k));
    };
  } else if (name == kDpSwapping) {
    on_histogram = [histogram,
                    epsilon](Rng& rng) -> absl::StatusOr<RealHistogram> {
      DA_ASSIGN_OR_RETURN(Histogram out, DpSwapping(*histogram, epsilon, rng));
      return ToReal(out);
    };
  }

  if (on_histogram) {
    privatizer.histogram = on_histogram;
    privatizer.dataset = [on_histogram](Rng& rng) -> absl::StatusOr<Dataset> {
      DA_ASSIGN_OR_RETURN(RealHistogram release, on_histogram(rng));
      return HistogramToDataset(NonnegProject(release));
    };
    return privatizer;
  }

  std::function<absl::StatusOr<Dataset>(Rng&)> on_dataset;
  if (name == kSwapping) {
    const double fraction = params.swap_fraction;
    on_dataset = [dataset, fraction](Rng& rng) {
      return Swapping(*dataset, fraction, rng);
    };
  } else {
    DA_ASSIGN_OR_RETURN(Dataset kanon_view, dataset_->WithSchema(kanon_schema_));
    auto source = std::make_shared<const Dataset>(std::move(kanon_view));
    std::shared_ptr<const Schema> schema = dataset_->schema_ptr();
    const bool is_private = name == kDpKAnonymity;
    const std::optional<double> beta = config_.beta_override;
    on_dataset = [source, schema, k, epsilon, is_private,
                  beta](Rng& rng) -> absl::StatusOr<Dataset> {
      absl::StatusOr<Dataset> out =
          is_private ? DpKAnonymity(*source, k, epsilon, rng, beta)
                     : KAnonymity(*source, k, rng);
      if (!out.ok()) return out.status();
      return out->WithSchema(schema);
    };
  }
  privatizer.dataset = on_dataset;
  privatizer.histogram =
      [on_dataset](Rng& rng) -> absl::StatusOr<RealHistogram> {
    DA_ASSIGN_OR_RETURN(Dataset out, on_dataset(rng));
    return ToReal(BuildHistogram(out));
  };
  return privatizer;
}

absl::StatusOr<Experiment::Study> Experiment::RunStudy(
    const std::string& name, const MechanismParams& params) const {
  DA_ASSIGN_OR_RETURN(Privatizer privatizer, MakePrivatizer(name, params));
  EmpiricalOptions options;
  options.reps = config_.repetitions;
  options.seed = config_.seed;
  options.project_nonnegative = privatizer.project;
  const auto& release = privatizer.histogram;
  Study study;
  DA_ASSIGN_OR_RETURN(
      study.empirical,
      RunEmpirical(
          [&release](const Histogram&, Rng& rng) { return release(rng); },
          *histogram_, options));
  DA_ASSIGN_OR_RETURN(study.fairness, FairnessOf(study.empirical.bias));
  return study;
}

absl::StatusOr<SweepRow> Experiment::Measure(
    const std::string& name, const MechanismParams& params) const {
  DA_ASSIGN_OR_RETURN(Study study, RunStudy(name, params));
  SweepRow row;
  row.mechanism = name;
  if (IsPrivateMechanism(name)) row.epsilon = params.epsilon;
  row.mean_l1_error = study.empirical.mean_l1_error;
  row.l1_error_se = study.empirical.l1_error_se;
  row.alpha = study.fairness.alpha;
  return row;
}

absl::StatusOr<ReleaseReport> Experiment::RunDataRelease() const {
  ReleaseReport report;
  report.k = config_.ks.front();
  report.bound = histogram_->Bound();
  report.n_q = histogram_->schema().qi_universe_size();
  for (double epsilon : config_.epsilons) {
    for (const std::string& name : config_.mechanisms) {
      ReleaseRow row;
      row.epsilon = epsilon;
      row.mechanism = name;
      std::optional<DeltaReport> delta;
      if (name == kLaplace) {
        delta = LaplaceReport(epsilon);
      } else if (name == kDpCellSuppression) {
        if (auto r = CellSuppressionReport(epsilon, report.bound, report.k);
            r.ok()) {
          delta = *std::move(r);
        }
      } else if (name == kDpSwapping) {
        if (auto r = SwappingReport(epsilon, report.n_q); r.ok()) {
          delta = *std::move(r);
        }
      } else if (name == kDpKAnonymity) {
        const double beta =
            config_.beta_override.value_or(SamplingProbability(epsilon));
        if (auto r = KAnonymityReport(epsilon, beta, report.bound, report.k);
            r.ok()) {
          delta = *std::move(r);
        }
      }
      if (delta.has_value()) {
        row.delta = delta->delta;
        report.accounting.push_back(*std::move(delta));
      }
      MechanismParams params;
      params.epsilon = epsilon;
      params.k = report.k;
      params.swap_fraction = config_.swap_fractions.empty()
                                 ? 1.0
                                 : config_.swap_fractions.front();
      DA_ASSIGN_OR_RETURN(Study study, RunStudy(name, params));
      row.bias_l1 = study.empirical.bias.l1;
      row.alpha = study.fairness.alpha;
      row.mean_l1_error = study.empirical.mean_l1_error;
      row.l1_error_se = study.empirical.l1_error_se;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

absl::StatusOr<std::vector<SweepRow>> Experiment::RunSweep(
    SweepAxis axis) const {
  std::vector<SweepRow> rows;
  auto add = [&](double axis_value, const std::string& name,
                 const MechanismParams& params) -> absl::Status {
    DA_ASSIGN_OR_RETURN(SweepRow row, Measure(name, params));
    row.axis_value = axis_value;
    rows.push_back(std::move(row));
    return absl::OkStatus();
  };
  auto sweep = [&](const std::string& traditional, const std::string& dp,
                   double axis_value,
                   MechanismParams params) -> absl::Status {
    DA_RETURN_IF_ERROR(add(axis_value, traditional, params));
    for (double epsilon : config_.epsilons) {
      params.epsilon = epsilon;
      DA_RETURN_IF_ERROR(add(axis_value, dp, params));
    }
    return absl::OkStatus();
  };
  switch (axis) {
    case SweepAxis::kCsThreshold:
      for (int64_t k : config_.ks) {
        DA_RETURN_IF_ERROR(sweep(kCellSuppression, kDpCellSuppression,
                                 static_cast<double>(k), {.k = k}));
      }
      break;
    case SweepAxis::kSwapFraction:
      for (double f : config_.swap_fractions) {
        DA_RETURN_IF_ERROR(
            sweep(kSwapping, kDpSwapping, f, {.swap_fraction = f}));
      }
      break;
    case SweepAxis::kKanonK:
      for (int64_t k : config_.ks) {
        DA_RETURN_IF_ERROR(sweep(kKAnonymity, kDpKAnonymity,
                                 static_cast<double>(k), {.k = k}));
      }
      break;
  }
  return rows;
}

absl::StatusOr<ClassificationReport> Experiment::RunClassification() const {
  ClassificationReport report;
  DA_ASSIGN_OR_RETURN(
      ClassifierModel baseline,
      TrainLogistic(*dataset_, config_.label, config_.features,
                    config_.logistic));
  DA_ASSIGN_OR_RETURN(report.baseline_accuracy, Accuracy(baseline, *dataset_));
  for (const std::string& name : config_.mechanisms) {
    std::vector<std::optional<double>> epsilons;
    if (IsPrivateMechanism(name)) {
      for (double epsilon : config_.epsilons) epsilons.push_back(epsilon);
    } else {
      epsilons.push_back(std::nullopt);
    }
    for (const std::optional<double>& epsilon : epsilons) {
      MechanismParams params;
      params.epsilon = epsilon.value_or(1.0);
      params.k = config_.ks.front();
      params.swap_fraction = config_.swap_fractions.empty()
                                 ? 1.0
                                 : config_.swap_fractions.front();
      DA_ASSIGN_OR_RETURN(Privatizer privatizer, MakePrivatizer(name, params));
      const size_t reps = static_cast<size_t>(config_.repetitions);
      std::vector<double> accuracy(reps);
      std::vector<absl::Status> errors(reps);
      ParallelFor(reps, [&](size_t r) {
        Rng rng(DeriveSeed(config_.seed, r));
        absl::StatusOr<Dataset> released = privatizer.dataset(rng);
        if (!released.ok()) {
          errors[r] = released.status();
          return;
        }
        absl::StatusOr<ClassifierModel> model = TrainLogistic(
            *released, config_.label, config_.features, config_.logistic);
        if (!model.ok()) {
          errors[r] = model.status();
          return;
        }
        // Always scored on the original data.
        absl::StatusOr<double> score = Accuracy(*model, *dataset_);
        if (!score.ok()) {
          errors[r] = score.status();
          return;
        }
        accuracy[r] = *score;
      });
      for (const absl::Status& status : errors) DA_RETURN_IF_ERROR(status);
      ClassificationRow row;
      row.mechanism = name;
      row.epsilon = epsilon;
      row.accuracy_se = MeanSe(accuracy, &row.mean_accuracy);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void WriteReleaseCsv(const ReleaseReport& report, std::ostream& out) {
  out << "epsilon,mechanism,delta,bias_l1,alpha,mean_l1_error,l1_error_se\n";
  for (const ReleaseRow& row : report.rows) {
    out << FormatDouble(row.epsilon) << ',' << row.mechanism << ','
        << FormatOptional(row.delta) << ',' << FormatDouble(row.bias_l1)
        << ',' << FormatDouble(row.alpha) << ','
        << FormatDouble(row.mean_l1_error) << ','
        << FormatDouble(row.l1_error_se) << '\n';
  }
}

nlohmann::json ReleaseToJson(const ReleaseReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReleaseRow& row : report.rows) {
    rows.push_back({{"epsilon", row.epsilon},
                    {"mechanism", row.mechanism},
                    {"delta", row.delta.has_value() ? nlohmann::json(*row.delta)
                                                    : nlohmann::json(nullptr)},
                    {"bias_l1", row.bias_l1},
                    {"alpha", row.alpha},
                    {"mean_l1_error", row.mean_l1_error},
                    {"l1_error_se", row.l1_error_se}});
  }
  return {{"k", report.k},
          {"B", report.bound},
          {"n_Q", report.n_q},
          {"rows", rows},
          {"accounting", DeltaReportsToJson(report.accounting)}};
}

void WriteSweepCsv(SweepAxis axis, const std::vector<SweepRow>& rows,
                   std::ostream& out) {
  out << "axis,axis_value,mechanism,epsilon,mean_l1_error,l1_error_se,alpha\n";
  const std::string name = SweepAxisName(axis);
  for (const SweepRow& row : rows) {
    out << name << ',' << FormatDouble(row.axis_value) << ',' << row.mechanism
        << ',' << FormatOptional(row.epsilon) << ','
        << FormatDouble(row.mean_l1_error) << ','
        << FormatDouble(row.l1_error_se) << ',' << FormatDouble(row.alpha)
        << '\n';
  }
}

void WriteClassificationCsv(const ClassificationReport& report,
                            std::ostream& out) {
  out << "mechanism,epsilon,mean_accuracy,accuracy_se\n";
  out << "baseline,," << FormatDouble(report.baseline_accuracy) << ",0\n";
  for (const ClassificationRow& row : report.rows) {
    out << row.mechanism << ',' << FormatOptional(row.epsilon) << ','
        << FormatDouble(row.mean_accuracy) << ','
        << FormatDouble(row.accuracy_se) << '\n';
  }
}

absl::Status WriteOutputFile(const std::string& dir, const std::string& name,
                             const std::string& contents) {
  std::error_code error;
  std::filesystem::create_directories(dir, error);
  if (error) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir, ": ", error.message()));
  }
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) {
    return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  }
  return absl::OkStatus();
}

}  // namespace da
