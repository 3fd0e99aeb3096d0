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

// Command-line driver for the disclosure-avoidance toolkit.
//
// Exit codes: 0 success, 1 runtime error, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "da/accounting.h"
#include "da/dp_verifier.h"
#include "da/experiment.h"
#include "da/synthetic.h"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << '\n';
  if (absl::IsInvalidArgument(status) || absl::IsNotFound(status) ||
      absl::IsFailedPrecondition(status)) {
    return kConfigError;
  }
  return kRuntimeError;
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

// Flags shared by the experiment subcommands; unset ones keep config values.
struct ExperimentFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::vector<double> epsilons;
  std::vector<int64_t> ks;
  std::optional<int64_t> reps;
  std::string out;

  void Register(CLI::App* app) {
    app->add_option("--config", config, "JSON experiment config");
    app->add_option("--seed", seed, "base seed; repetition r uses seed + r");
    app->add_option("--eps", epsilons, "privacy budgets")->delimiter(',');
    app->add_option("--k", ks, "thresholds")->delimiter(',');
    app->add_option("--reps", reps, "repetitions");
    app->add_option("--out", out, "output directory");
  }

  absl::StatusOr<da::ExperimentConfig> Resolve() const {
    da::ExperimentConfig resolved;
    if (!config.empty()) {
      absl::StatusOr<da::ExperimentConfig> loaded =
          da::ExperimentConfig::Load(config);
      if (!loaded.ok()) return loaded.status();
      resolved = *std::move(loaded);
    }
    if (seed.has_value()) resolved.seed = *seed;
    if (!epsilons.empty()) resolved.epsilons = epsilons;
    if (!ks.empty()) resolved.ks = ks;
    if (reps.has_value()) resolved.repetitions = *reps;
    if (!out.empty()) resolved.output_dir = out;
    if (absl::Status status = resolved.Validate(); !status.ok()) return status;
    return resolved;
  }
};

int RunRelease(const ExperimentFlags& flags) {
  absl::StatusOr<da::ExperimentConfig> config = flags.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<da::Experiment> experiment =
      da::Experiment::Create(*std::move(config));
  if (!experiment.ok()) return Fail(experiment.status());
  absl::StatusOr<da::ReleaseReport> report = experiment->RunDataRelease();
  if (!report.ok()) return Fail(report.status());
  std::ostringstream csv;
  da::WriteReleaseCsv(*report, csv);
  const std::string& dir = experiment->config().output_dir;
  for (const auto& [name, contents] :
       std::vector<std::pair<std::string, std::string>>{
           {"release.csv", csv.str()},
           {"release.json", da::ReleaseToJson(*report).dump(2) + "\n"},
           {"accounting.json",
            da::DeltaReportsToJson(report->accounting).dump(2) + "\n"}}) {
    if (absl::Status s = da::WriteOutputFile(dir, name, contents); !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << csv.str();
  return kOk;
}

int RunSweep(const ExperimentFlags& flags,
             const std::vector<std::string>& axes) {
  absl::StatusOr<da::ExperimentConfig> config = flags.Resolve();
  if (!config.ok()) return Fail(config.status());
  std::vector<da::SweepAxis> parsed;
  for (const std::string& name : axes) {
    absl::StatusOr<da::SweepAxis> axis = da::ParseSweepAxis(name);
    if (!axis.ok()) return Fail(axis.status());
    parsed.push_back(*axis);
  }
  if (parsed.empty()) {
    parsed = {da::SweepAxis::kCsThreshold, da::SweepAxis::kSwapFraction,
              da::SweepAxis::kKanonK};
  }
  absl::StatusOr<da::Experiment> experiment =
      da::Experiment::Create(*std::move(config));
  if (!experiment.ok()) return Fail(experiment.status());
  for (da::SweepAxis axis : parsed) {
    absl::StatusOr<std::vector<da::SweepRow>> rows =
        experiment->RunSweep(axis);
    if (!rows.ok()) return Fail(rows.status());
    std::ostringstream csv;
    da::WriteSweepCsv(axis, *rows, csv);
    if (absl::Status s = da::WriteOutputFile(
            experiment->config().output_dir,
            "sweep_" + da::SweepAxisName(axis) + ".csv", csv.str());
        !s.ok()) {
      return Fail(s);
    }
    std::cout << csv.str();
  }
  return kOk;
}

int RunClassify(const ExperimentFlags& flags) {
  absl::StatusOr<da::ExperimentConfig> config = flags.Resolve();
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<da::Experiment> experiment =
      da::Experiment::Create(*std::move(config));
  if (!experiment.ok()) return Fail(experiment.status());
  absl::StatusOr<da::ClassificationReport> report =
      experiment->RunClassification();
  if (!report.ok()) return Fail(report.status());
  std::ostringstream csv;
  da::WriteClassificationCsv(*report, csv);
  if (absl::Status s = da::WriteOutputFile(experiment->config().output_dir,
                                           "classify.csv", csv.str());
      !s.ok()) {
    return Fail(s);
  }
  std::cout << csv.str();
  return kOk;
}

struct AccountingFlags {
  std::vector<double> epsilons;
  std::optional<uint64_t> n_q;
  std::optional<int64_t> bound;
  std::optional<int64_t> k;
  std::optional<double> beta;
  std::optional<double> delta;
  std::string out;
};

void PrintReport(const da::DeltaReport& report) {
  std::cout << report.mechanism << " epsilon=" << report.epsilon;
  for (const auto& [name, value] : report.parameters) {
    std::cout << ' ' << name << '=' << value;
  }
  std::cout << " delta=" << Fixed(report.delta, 3) << " ("
            << Fixed(report.delta, 12) << ")\n";
}

int RunAccounting(const AccountingFlags& flags) {
  std::vector<da::DeltaReport> reports;
  for (double epsilon : flags.epsilons) {
    std::vector<absl::StatusOr<da::DeltaReport>> computed;
    if (flags.n_q.has_value()) {
      computed.push_back(da::SwappingReport(epsilon, *flags.n_q));
    }
    if (flags.bound.has_value() && flags.k.has_value()) {
      computed.push_back(
          da::CellSuppressionReport(epsilon, *flags.bound, *flags.k));
    }
    if (flags.bound.has_value()) {
      const double beta = flags.beta.value_or(-std::expm1(-epsilon));
      computed.push_back(da::KAnonymityReport(epsilon, beta, *flags.bound,
                                              flags.k.value_or(0)));
    }
    if (flags.delta.has_value()) {
      absl::StatusOr<double> effective =
          da::GaussianDpParameters(epsilon, *flags.delta);
      if (!effective.ok()) return Fail(effective.status());
      std::cout << "discrete_gaussian epsilon_param=" << epsilon
                << " delta=" << *flags.delta
                << " epsilon_effective=" << Fixed(*effective, 12) << '\n';
    }
    if (computed.empty() && !flags.delta.has_value()) {
      return Fail(absl::InvalidArgumentError(
          "pass --n-q, --bound (with --k for suppression) or --delta"));
    }
    for (absl::StatusOr<da::DeltaReport>& report : computed) {
      if (!report.ok()) return Fail(report.status());
      PrintReport(*report);
      reports.push_back(*std::move(report));
    }
  }
  if (!flags.out.empty()) {
    if (absl::Status s = da::WriteOutputFile(
            flags.out, "accounting.json",
            da::DeltaReportsToJson(reports).dump(2) + "\n");
        !s.ok()) {
      return Fail(s);
    }
  }
  return kOk;
}

struct VerifyFlags {
  std::string mechanism = "dp_swapping";
  double epsilon = 1;
  int64_t k = 2;
  int64_t max_count = 3;
  int64_t samples = 0;
  uint64_t seed = 1;
};

int RunVerify(const VerifyFlags& flags) {
  // Two-cell universe: one binary quasi-identifier.
  absl::StatusOr<da::Schema> schema = da::Schema::Create(
      {{"Q", {"a", "b"}, true, da::AttributeKind::kCategorical}});
  if (!schema.ok()) return Fail(schema.status());
  auto shared = std::make_shared<const da::Schema>(*std::move(schema));
  std::unique_ptr<da::DiscreteMechanism> mechanism;
  std::optional<absl::StatusOr<double>> analytic;
  if (flags.mechanism == "dp_cell_suppression") {
    mechanism = da::MakeDpCellSuppressionMechanism(flags.k, flags.epsilon);
    analytic = da::DeltaCellSuppression(flags.epsilon, flags.max_count, flags.k);
  } else if (flags.mechanism == "dp_swapping") {
    mechanism = da::MakeDpSwappingMechanism(flags.epsilon);
    analytic = da::DeltaSwapping(flags.epsilon, shared->qi_universe_size());
  } else if (flags.mechanism == "laplace") {
    mechanism = da::MakeLaplaceMechanism();
  } else if (flags.mechanism == "identity") {
    mechanism = da::MakeIdentityMechanism();
  } else if (flags.mechanism == "constant") {
    mechanism = da::MakeConstantMechanism();
  } else {
    return Fail(absl::InvalidArgumentError(
        absl::StrCat("unknown mechanism '", flags.mechanism, "'")));
  }
  da::VerifierOptions options;
  options.max_count = flags.max_count;
  options.seed = flags.seed;
  if (flags.samples > 0) {
    options.mode = da::VerifierMode::kSampled;
    options.samples = flags.samples;
  }
  absl::StatusOr<da::VerifierResult> result =
      da::VerifyDpBruteForce(*mechanism, shared, flags.epsilon, options);
  if (!result.ok()) return Fail(result.status());
  std::cout << mechanism->name() << " epsilon=" << flags.epsilon
            << " pairs=" << result->pairs
            << " delta_hat=" << Fixed(result->delta_hat, 6)
            << " se=" << Fixed(result->standard_error, 6);
  if (analytic.has_value()) {
    if (!analytic->ok()) return Fail(analytic->status());
    const double bound = **analytic + 3 * result->standard_error;
    std::cout << " analytic_delta=" << Fixed(**analytic, 6)
              << (result->delta_hat <= bound ? " PASS" : " FAIL");
  }
  std::cout << '\n';
  return kOk;
}

int RunSynth(size_t rows, uint64_t seed, const std::string& out) {
  da::SyntheticOptions options;
  options.rows = rows;
  options.seed = seed;
  if (out.empty() || out == "-") {
    da::WriteSyntheticCsv(options, std::cout);
    return kOk;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) return Fail(absl::PermissionDeniedError("cannot open " + out));
  da::WriteSyntheticCsv(options, file);
  return file ? kOk : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disclosure avoidance versus differential privacy toolkit"};
  app.require_subcommand(1);

  ExperimentFlags release_flags, sweep_flags, classify_flags;
  CLI::App* release = app.add_subcommand(
      "release", "compare mechanisms on a data release (delta, bias, alpha)");
  release_flags.Register(release);

  CLI::App* sweep =
      app.add_subcommand("sweep", "error curves over k or swap fraction");
  sweep_flags.Register(sweep);
  std::vector<std::string> axes;
  sweep->add_option("--axis", axes,
                    "cs_threshold, swap_fraction or kanon_k (default: all)");

  CLI::App* classify = app.add_subcommand(
      "classify", "logistic-regression accuracy on privatized data");
  classify_flags.Register(classify);

  AccountingFlags accounting_flags;
  CLI::App* accounting =
      app.add_subcommand("accounting", "closed-form (epsilon, delta)");
  accounting->add_option("--eps", accounting_flags.epsilons, "privacy budgets")
      ->delimiter(',')
      ->required();
  accounting->add_option("--n-q", accounting_flags.n_q,
                         "quasi-identifier universe size (swapping)");
  accounting->add_option("--bound", accounting_flags.bound,
                         "largest cell count B");
  accounting->add_option("--k", accounting_flags.k, "suppression threshold");
  accounting->add_option("--beta", accounting_flags.beta,
                         "subsampling rate (default 1 - e^-eps)");
  accounting->add_option("--delta", accounting_flags.delta,
                         "delta for the discrete Gaussian conversion");
  accounting->add_option("--out", accounting_flags.out,
                         "directory for accounting.json");

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand(
      "verify-dp", "brute-force DP check on a two-cell universe");
  verify->add_option("--mechanism", verify_flags.mechanism,
                     "dp_cell_suppression, dp_swapping, identity, constant");
  verify->add_option("--eps", verify_flags.epsilon, "privacy budget");
  verify->add_option("--k", verify_flags.k, "suppression threshold");
  verify->add_option("--max-count", verify_flags.max_count,
                     "largest count on the grid");
  verify->add_option("--samples", verify_flags.samples,
                     "Monte-Carlo samples per input (0: exact)");
  verify->add_option("--seed", verify_flags.seed, "base seed");

  size_t synth_rows = 8000;
  uint64_t synth_seed = 7;
  std::string synth_out;
  CLI::App* synth =
      app.add_subcommand("synth-data", "write the bundled synthetic CSV");
  synth->add_option("--rows", synth_rows, "row count");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kConfigError;
  }

  if (*release) return RunRelease(release_flags);
  if (*sweep) return RunSweep(sweep_flags, axes);
  if (*classify) return RunClassify(classify_flags);
  if (*accounting) return RunAccounting(accounting_flags);
  if (*verify) return RunVerify(verify_flags);
  if (*synth) return RunSynth(synth_rows, synth_seed, synth_out);
  std::cerr << app.help();
  return kConfigError;
}
