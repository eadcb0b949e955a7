// Copyright 2026 the parapt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "parapt/study.hpp"

namespace parapt {

inline constexpr const char* kCsvHeader = "level,M,k,err_L1,err_L2,err_Linf,eoc_L1,eoc_L2,eoc_Linf";

/// %.8g
std::string format_real(double x);

/// Header line plus one line per row; EOC cells empty when absent.
std::string csv_table(const std::vector<ConvergenceRow>& rows);

/// All four tables as markdown, one section each.
std::string markdown_tables(const StudyReport& report);

/// One JSON object per line: every table at every level, with iteration
/// count, convergence flag and wall time of that level.
std::string summary_lines(const StudyReport& report);

}  // namespace parapt
