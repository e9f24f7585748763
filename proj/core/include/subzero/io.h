// Copyright 2026 The Subzero Authors
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

#ifndef SUBZERO_IO_H_
#define SUBZERO_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subzero/engine.h"
#include "subzero/oracles.h"

namespace subzero {

inline constexpr std::string_view kMetricsHeader =
    "t,side,agent,avg_regret,consensus_err,dist_to_ne,gap_avg,t1_bound_avg,"
    "h_bound";

// 17 significant digits; "null" for non-finite values.
std::string FormatNumber(double value);

std::string FormatMetricsCsv(const std::vector<MetricRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index, or -1 when absent.
  int Column(std::string_view name) const;
};

CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);

// One JSON object on one line.
std::string FormatCertificate(const NeCertificate& certificate);
NeCertificate ParseCertificate(std::string_view text);
NeCertificate LoadCertificate(const std::filesystem::path& path);

// One JSON object per line: round snapshots, then the final averages and a
// summary record.
std::string FormatTraceJsonl(const SimulationTrace& trace);

std::string ReadTextFile(const std::filesystem::path& path);
// Creates missing parent directories. Throws IoError.
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace subzero

#endif  // SUBZERO_IO_H_
