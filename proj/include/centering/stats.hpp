// Copyright 2026 The Centering Authors
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

#ifndef CENTERING_STATS_HPP_
#define CENTERING_STATS_HPP_

#include <array>
#include <span>
#include <stdexcept>
#include <string>

#include "centering/engine.hpp"

namespace centering {

// Distribution of subject expressions over centering functions.
// Rows: zero, strong, np, poss. Columns: continue, retain, shift
// (smooth+rough), cent-est, other. new_entity and untagged records are not
// counted; set expressions land in the np row.
struct DistributionTable {
  static constexpr int kRows = 4;
  static constexpr int kCols = 5;
  enum Row { kZero = 0, kStrong = 1, kNp = 2, kPoss = 3 };
  enum Col { kContinue = 0, kRetain = 1, kShift = 2, kCentEst = 3, kOther = 4 };

  std::array<std::array<long, kCols>, kRows> cells{};

  long row_total(int r) const;
  long col_total(int c) const;
  long grand_total() const;
};

// Zero/strong continues split by the preceding transition.
struct SequenceTable {
  enum Row { kZero = 0, kStrong = 1 };
  enum Col { kContShiftCont = 0, kRetCont = 1 };

  std::array<std::array<long, 2>, 2> cells{};

  long row_total(int r) const { return cells[r][0] + cells[r][1]; }
  long col_total(int c) const { return cells[0][c] + cells[1][c]; }
  long grand_total() const { return row_total(0) + row_total(1); }
};

struct ContingencyTable2x2 {
  double a = 0, b = 0, c = 0, d = 0;
};

enum class Significance { NotSignificant, P05, P01, P001 };

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 1;
  Significance significance = Significance::NotSignificant;
};

class InvalidTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pearson chi-square on a 2x2 table, no continuity correction, df=1.
// Significance bands via the critical values 3.841 / 6.635 / 10.828.
// Throws InvalidTableError when a marginal is zero or a count is negative.
ChiSquareResult chi_square(const ContingencyTable2x2& table);

DistributionTable distribution_table(std::span<const AnalysisResult> results);
SequenceTable sequence_table(std::span<const AnalysisResult> results);

enum class ReportFormat { PlainTable, Delimited, Markdown };

// The full statistics report: both tables, the four chi-square tests, and
// the derived percentage breakdowns.
std::string report(std::span<const AnalysisResult> results, ReportFormat format);

const char* to_string(Significance s);

}  // namespace centering

#endif  // CENTERING_STATS_HPP_
