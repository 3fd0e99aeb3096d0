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

#ifndef DA_SYNTHETIC_H_
#define DA_SYNTHETIC_H_

#include <cstdint>
#include <memory>
#include <ostream>

#include "absl/status/statusor.h"
#include "da/dataset.h"
#include "da/schema.h"

namespace da {

// Raw microdata with columns RACE, SEX, OWNERSHP, AGE (years) and INCTOT
// (dollars). Income depends on every other column.
struct SyntheticOptions {
  size_t rows = 8000;
  uint64_t seed = 7;
};

void WriteSyntheticCsv(const SyntheticOptions& options, std::ostream& out);

// RACE 9 values (the only quasi-identifier), SEX 2, OWNERSHP 2, AGE 5
// brackets, INCTOT above 50000: 360 cells with n_Q = 9.
std::shared_ptr<const Schema> AcsLikeSchema();

// The generated rows binned into AcsLikeSchema().
absl::StatusOr<Dataset> GenerateSynthetic(const SyntheticOptions& options);

}  // namespace da

#endif  // DA_SYNTHETIC_H_
