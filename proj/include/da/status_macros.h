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

#ifndef DA_STATUS_MACROS_H_
#define DA_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DA_RETURN_IF_ERROR(expr)             \
  do {                                       \
    const absl::Status _da_status = (expr);  \
    if (!_da_status.ok()) return _da_status; \
  } while (0)

#define DA_CONCAT_INNER_(a, b) a##b
#define DA_CONCAT_(a, b) DA_CONCAT_INNER_(a, b)

#define DA_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(*tmp)

#define DA_ASSIGN_OR_RETURN(lhs, expr) \
  DA_ASSIGN_OR_RETURN_IMPL_(DA_CONCAT_(_da_statusor_, __LINE__), lhs, expr)

#endif  // DA_STATUS_MACROS_H_
