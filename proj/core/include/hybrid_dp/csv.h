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

// CSV output with a fixed, locale-free number format, and numeric column
// ingestion.
//
// I/O failures are reported as absl::StatusCode::kUnavailable (write) or
// kNotFound (unreadable input); malformed content as kInvalidArgument.

#ifndef HYBRID_DP_CSV_H_
#define HYBRID_DP_CSV_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace hybrid_dp {

// General notation with 17 significant digits (round-trip safe) and a
// '.' decimal point. Non-finite values print as "inf", "-inf" or "nan".
std::string FormatDouble(double value);

using CsvCell = std::variant<double, int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Fails when the row width differs from the header width.
  absl::Status AddRow(std::vector<CsvCell> row);

  const std::vector<std::string>& header() const { return header_; }
  size_t row_count() const { return rows_.size(); }

  // Header line then one line per row, each terminated by '\n'. Strings
  // containing a comma, quote or newline are quoted.
  std::string ToString() const;

  absl::Status WriteFile(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct IngestResult {
  std::vector<double> values;
  int64_t n = 0;
  double max = 0;
  double mean = 0;
  // Population variance and its square root.
  double variance = 0;
  double stddev = 0;
  int64_t skipped_non_numeric = 0;
  // Negative values fall outside the [0, m] support and are skipped.
  int64_t skipped_out_of_range = 0;
};

// Reads one column, selected by header name or, failing that, by a
// zero-based index. The first line is always treated as the header.
// Fails on a missing file, an empty column, or when non-numeric rows
// outnumber numeric ones.
absl::StatusOr<IngestResult> IngestCsv(const std::string& path,
                                       std::string_view column);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_CSV_H_
