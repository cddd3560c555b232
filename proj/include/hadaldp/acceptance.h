// Copyright 2026 The HadaLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HADALDP_ACCEPTANCE_H_
#define HADALDP_ACCEPTANCE_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace hadaldp {

inline constexpr int kCriterionCount = 12;

struct AcceptanceOptions {
  uint64_t seed = 0x5EED2026;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::string_view CriterionName(int id);

// Runs criterion `id` in [1, kCriterionCount]. Unknown ids fail.
CriterionResult RunCriterion(int id, const AcceptanceOptions& options = {});

// "PASS C01 <name>: <detail> (<seconds>s)"
std::string FormatResult(const CriterionResult& result);

}  // namespace hadaldp

#endif  // HADALDP_ACCEPTANCE_H_
