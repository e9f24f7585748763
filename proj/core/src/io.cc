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

#include "subzero/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "subzero/error.h"

namespace subzero {
namespace {

void AppendOptional(std::string& out, const std::optional<double>& v) {
  out += ',';
  if (v) out += FormatNumber(*v);
}

std::string JsonVector(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k > 0) out += ',';
    out += FormatNumber(v[k]);
  }
  return out + "]";
}

std::string JsonPoints(const AgentPoints& points) {
  std::string out = "[";
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k > 0) out += ',';
    out += JsonVector(points[k]);
  }
  return out + "]";
}

Vector VectorFromJson(const nlohmann::json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInputError(
        fmt::format("certificate field '{}' must be a non-empty array", field));
  }
  Vector v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v[k] = j[k].get<double>();
  return v;
}

}  // namespace

std::string FormatNumber(double value) {
  if (!std::isfinite(value)) return "null";
  return fmt::format("{:.17g}", value);
}

std::string FormatMetricsCsv(const std::vector<MetricRow>& rows) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const MetricRow& r : rows) {
    out += fmt::format("{},{},{}", r.t, SideIndex(r.side) + 1, r.agent);
    AppendOptional(out, r.avg_regret);
    out += ',' + FormatNumber(r.consensus_err);
    AppendOptional(out, r.dist_to_ne);
    AppendOptional(out, r.gap_avg);
    out += ',' + FormatNumber(r.t1_bound_avg);
    out += ',' + FormatNumber(r.h_bound);
    out += '\n';
  }
  return out;
}

int CsvTable::Column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return static_cast<int>(k);
  }
  return -1;
}

CsvTable ParseCsv(std::string_view text) {
  CsvTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(s);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!s.empty() && s.back() == ',') fields.emplace_back();
    return fields;
  };
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split(line);
      first = false;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw InvalidInputError(fmt::format(
          "CSV row has {} fields, header has {}", fields.size(),
          table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (first) throw InvalidInputError("CSV text has no header");
  return table;
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  return ParseCsv(ReadTextFile(path));
}

std::string FormatCertificate(const NeCertificate& c) {
  return fmt::format(
      "{{\"type\":\"ne_certificate\",\"x1\":{},\"x2\":{},\"value\":{},"
      "\"gap\":{},\"iterations\":{},\"tolerance\":{},\"final_x1\":{},"
      "\"final_x2\":{}}}\n",
      JsonVector(c.x1), JsonVector(c.x2), FormatNumber(c.value),
      FormatNumber(c.gap), c.iterations, FormatNumber(c.tolerance),
      JsonVector(c.final_x1), JsonVector(c.final_x2));
}

NeCertificate ParseCertificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInputError(fmt::format("malformed certificate: {}", e.what()));
    }
    if (j.value("type", "") != "ne_certificate") continue;
    try {
      NeCertificate c;
      c.x1 = VectorFromJson(j.at("x1"), "x1");
      c.x2 = VectorFromJson(j.at("x2"), "x2");
      c.value = j.at("value").get<double>();
      c.gap = j.at("gap").get<double>();
      c.iterations = j.at("iterations").get<int>();
      c.tolerance = j.at("tolerance").get<double>();
      c.final_x1 = VectorFromJson(j.at("final_x1"), "final_x1");
      c.final_x2 = VectorFromJson(j.at("final_x2"), "final_x2");
      return c;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInputError(fmt::format("malformed certificate: {}", e.what()));
    }
  }
  throw InvalidInputError("no ne_certificate record found");
}

NeCertificate LoadCertificate(const std::filesystem::path& path) {
  return ParseCertificate(ReadTextFile(path));
}

std::string FormatTraceJsonl(const SimulationTrace& trace) {
  std::string out;
  for (const RoundState& s : trace.snapshots) {
    out += fmt::format(
        "{{\"type\":\"round\",\"t\":{},\"x1\":{},\"x2\":{},\"v1\":{},"
        "\"v2\":{},\"u_into_1\":{},\"u_into_2\":{}}}\n",
        s.t, JsonPoints(s.x[0]), JsonPoints(s.x[1]), JsonPoints(s.v[0]),
        JsonPoints(s.v[1]), JsonPoints(s.u_into[0]), JsonPoints(s.u_into[1]));
  }
  const AverageSnapshot& a = trace.final_averages;
  out += fmt::format(
      "{{\"type\":\"averages\",\"t\":{},\"uniform1\":{},\"uniform2\":{},"
      "\"weighted1\":{},\"weighted2\":{}}}\n",
      a.t, JsonPoints(a.uniform[0]), JsonPoints(a.uniform[1]),
      JsonPoints(a.weighted[0]), JsonPoints(a.weighted[1]));
  out += fmt::format("{{\"type\":\"summary\",\"horizon\":{},\"agents1\":{},"
                     "\"agents2\":{}}}\n",
                     trace.horizon, trace.num_agents[0], trace.num_agents[1]);
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError(fmt::format("failed writing {}", path.string()));
}

}  // namespace subzero
