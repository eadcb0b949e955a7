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

#include "parapt/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace parapt {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", x);
  return buf;
}

namespace {

std::string format_eoc(const std::optional<double>& e, int digits) {
  if (!e) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *e);
  return buf;
}

const char* title(TableKind kind) {
  switch (kind) {
    case TableKind::kControl: return "Control: errors and EOC";
    case TableKind::kState: return "State: errors and EOC";
    case TableKind::kStateProjected: return "Projected state: errors and EOC";
    case TableKind::kAdjoint: return "Adjoint: errors and EOC";
  }
  return "";
}

}  // namespace

std::string csv_table(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.level << ',' << r.intervals << ',' << format_real(r.k);
    for (std::size_t c = 0; c < 3; ++c) out << ',' << format_real(r.errors[c]);
    for (std::size_t c = 0; c < 3; ++c) out << ',' << (r.eoc[c] ? format_real(*r.eoc[c]) : std::string());
    out << '\n';
  }
  return out.str();
}

std::string markdown_tables(const StudyReport& report) {
  std::ostringstream out;
  out << "# " << report.problem << " (n_per_side = " << report.n_per_side
      << ", threshold = " << format_real(report.threshold) << ")\n";
  for (TableKind kind : kAllTables) {
    out << "\n## " << title(kind) << "\n\n";
    out << "| level | M | L1(L1) | L2(L2) | Linf(Linf) | EOC L1 | EOC L2 | EOC Linf |\n";
    out << "|---:|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : report.table(kind)) {
      out << "| " << r.level << " | " << r.intervals;
      for (std::size_t c = 0; c < 3; ++c) out << " | " << format_real(r.errors[c]);
      for (std::size_t c = 0; c < 3; ++c) {
        const std::string e = format_eoc(r.eoc[c], 2);
        out << " | " << (e.empty() ? "/" : e);
      }
      out << " |\n";
    }
  }
  bool any_failed = false;
  for (const auto& l : report.levels) any_failed |= l.failure.has_value();
  if (any_failed) {
    out << "\n## Failed levels\n\n";
    for (const auto& l : report.levels)
      if (l.failure) out << "- level " << l.level << " (M = " << l.intervals << "): " << *l.failure << '\n';
  }
  return out.str();
}

std::string summary_lines(const StudyReport& report) {
  std::ostringstream out;
  for (TableKind kind : kAllTables) {
    const auto rows = report.table(kind);
    std::size_t next = 0;
    for (const auto& l : report.levels) {
      nlohmann::json j;
      j["problem"] = report.problem;
      j["table"] = table_name(kind);
      j["level"] = l.level;
      j["M"] = l.intervals;
      j["k"] = l.k;
      j["n_per_side"] = report.n_per_side;
      j["iterations"] = l.iterations;
      j["converged"] = l.converged;
      j["final_criterion"] = l.final_criterion;
      j["objective"] = l.objective;
      j["wall_seconds"] = l.wall_seconds;
      const char* names[3] = {"L1", "L2", "Linf"};
      if (l.failure) {
        j["failure"] = *l.failure;
        for (const char* n : names) {
          j[std::string("err_") + n] = nullptr;
          j[std::string("eoc_") + n] = nullptr;
        }
      } else {
        const ConvergenceRow& r = rows[next++];
        for (std::size_t c = 0; c < 3; ++c) {
          j[std::string("err_") + names[c]] = r.errors[c];
          j[std::string("eoc_") + names[c]] = r.eoc[c] ? nlohmann::json(*r.eoc[c]) : nlohmann::json(nullptr);
        }
      }
      out << j.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace parapt
