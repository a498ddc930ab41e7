//
// Copyright 2026 The hybrid_dp Authors
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
//

#include "hybrid_dp/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace hybrid_dp {
namespace {

std::string Quote(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string_view Trim(std::string_view text) {
  const absl::string_view stripped =
      absl::StripAsciiWhitespace(absl::string_view(text.data(), text.size()));
  return std::string_view(stripped.data(), stripped.size());
}

std::string CellText(const CsvCell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return FormatDouble(*d);
  if (const int64_t* i = std::get_if<int64_t>(&cell)) return absl::StrCat(*i);
  return Quote(std::get<std::string>(cell));
}

bool ParseDouble(std::string_view text, double& out) {
  text = Trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && end == text.data() + text.size() &&
         std::isfinite(out);
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  return std::string(buffer, end);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

absl::Status CsvTable::AddRow(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "row has ", row.size(), " cells, header has ", header_.size()));
  }
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (const CsvCell& cell : row) cells.push_back(CellText(cell));
  rows_.push_back(std::move(cells));
  return absl::OkStatus();
}

std::string CsvTable::ToString() const {
  std::string out;
  std::vector<std::string> quoted;
  quoted.reserve(header_.size());
  for (const std::string& h : header_) quoted.push_back(Quote(h));
  absl::StrAppend(&out, absl::StrJoin(quoted, ","), "\n");
  for (const auto& row : rows_) {
    absl::StrAppend(&out, absl::StrJoin(row, ","), "\n");
  }
  return out;
}

absl::Status CsvTable::WriteFile(const std::string& path) const {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    return absl::UnavailableError(
        absl::StrCat("cannot open '", path, "' for writing"));
  }
  const std::string text = ToString();
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) {
    return absl::UnavailableError(absl::StrCat("failed writing '", path, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<IngestResult> IngestCsv(const std::string& path,
                                       std::string_view column) {
  std::ifstream file(path);
  if (!file) {
    return absl::NotFoundError(absl::StrCat("cannot read '", path, "'"));
  }
  std::string line;
  if (!std::getline(file, line)) {
    return absl::InvalidArgumentError(absl::StrCat("'", path, "' is empty"));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = absl::StrSplit(line, ',');
  int index = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (Trim(header[i]) == column) {
      index = static_cast<int>(i);
      break;
    }
  }
  if (index < 0) {
    int parsed = -1;
    const auto [end, ec] =
        std::from_chars(column.data(), column.data() + column.size(), parsed);
    if (ec != std::errc() || end != column.data() + column.size() ||
        parsed < 0 || parsed >= static_cast<int>(header.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("no column '", std::string(column), "' in '", path, "'"));
    }
    index = parsed;
  }

  IngestResult result;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = absl::StrSplit(line, ',');
    double value = 0;
    if (index >= static_cast<int>(fields.size()) ||
        !ParseDouble(fields[index], value)) {
      ++result.skipped_non_numeric;
      continue;
    }
    if (value < 0) {
      ++result.skipped_out_of_range;
      continue;
    }
    result.values.push_back(value);
  }
  result.n = static_cast<int64_t>(result.values.size());
  if (result.n == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("column '", std::string(column), "' has no usable values"));
  }
  if (result.skipped_non_numeric > result.n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "column '", std::string(column), "' is mostly non-numeric (",
        result.skipped_non_numeric, " of ",
        result.skipped_non_numeric + result.n, " rows)"));
  }
  double sum = 0;
  for (double v : result.values) sum += v;
  result.mean = sum / static_cast<double>(result.n);
  double sq = 0;
  for (double v : result.values) sq += (v - result.mean) * (v - result.mean);
  result.variance = sq / static_cast<double>(result.n);
  result.stddev = std::sqrt(result.variance);
  result.max = *std::max_element(result.values.begin(), result.values.end());
  return result;
}

}  // namespace hybrid_dp
