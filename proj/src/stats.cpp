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

#include "centering/stats.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

namespace centering {

long DistributionTable::row_total(int r) const {
  long t = 0;
  for (int c = 0; c < kCols; ++c) t += cells[r][c];
  return t;
}

long DistributionTable::col_total(int c) const {
  long t = 0;
  for (int r = 0; r < kRows; ++r) t += cells[r][c];
  return t;
}

long DistributionTable::grand_total() const {
  long t = 0;
  for (int r = 0; r < kRows; ++r) t += row_total(r);
  return t;
}

ChiSquareResult chi_square(const ContingencyTable2x2& t) {
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
    throw InvalidTableError("chi_square: negative observed count");
  }
  const double r1 = t.a + t.b;
  const double r2 = t.c + t.d;
  const double c1 = t.a + t.c;
  const double c2 = t.b + t.d;
  const double n = r1 + r2;
  if (n <= 0 || r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) {
    throw InvalidTableError("chi_square: zero marginal, expected counts undefined");
  }

  const double observed[4] = {t.a, t.b, t.c, t.d};
  const double expected[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
  double statistic = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double diff = observed[i] - expected[i];
    statistic += diff * diff / expected[i];
  }

  ChiSquareResult result;
  result.statistic = statistic;
  if (statistic >= 10.828) {
    result.significance = Significance::P001;
  } else if (statistic >= 6.635) {
    result.significance = Significance::P01;
  } else if (statistic >= 3.841) {
    result.significance = Significance::P05;
  } else {
    result.significance = Significance::NotSignificant;
  }
  return result;
}

namespace {

std::optional<int> row_of(Form f) {
  switch (f) {
    case Form::Zero: return DistributionTable::kZero;
    case Form::StrongPronoun: return DistributionTable::kStrong;
    case Form::FullNp: return DistributionTable::kNp;
    case Form::SetExpression: return DistributionTable::kNp;  // conjoined NPs
    case Form::PossessiveNp: return DistributionTable::kPoss;
    default: return std::nullopt;  // clitic, deictic, other_anaphor
  }
}

std::optional<int> col_of(RecordTag t) {
  switch (t) {
    case RecordTag::Continue: return DistributionTable::kContinue;
    case RecordTag::Retain: return DistributionTable::kRetain;
    case RecordTag::Shift: return DistributionTable::kShift;
    case RecordTag::CentEstab: return DistributionTable::kCentEst;
    case RecordTag::OtherExcluded: return DistributionTable::kOther;
    default: return std::nullopt;  // new_entity, none
  }
}

}  // namespace

DistributionTable distribution_table(std::span<const AnalysisResult> results) {
  DistributionTable table;
  for (const AnalysisResult& result : results) {
    for (const ExpressionRecord& r : result.expression_records) {
      const auto row = row_of(r.form);
      const auto col = col_of(r.tag);
      if (row && col) ++table.cells[*row][*col];
    }
  }
  return table;
}

SequenceTable sequence_table(std::span<const AnalysisResult> results) {
  SequenceTable table;
  for (const AnalysisResult& result : results) {
    for (const ExpressionRecord& r : result.expression_records) {
      if (r.tag != RecordTag::Continue) continue;
      int row;
      if (r.form == Form::Zero) {
        row = SequenceTable::kZero;
      } else if (r.form == Form::StrongPronoun) {
        row = SequenceTable::kStrong;
      } else {
        continue;
      }
      if (r.sequence == SequenceLabel::RetCont) {
        ++table.cells[row][SequenceTable::kRetCont];
      } else if (r.sequence == SequenceLabel::ContCont ||
                 r.sequence == SequenceLabel::ShiftCont) {
        ++table.cells[row][SequenceTable::kContShiftCont];
      }
    }
  }
  return table;
}

namespace {

struct TextTable {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_pct(long num, long den) {
  if (den == 0) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * static_cast<double>(num) /
                                                 static_cast<double>(den));
  return buf;
}

std::string fmt_ratio(long num, long den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

void render_plain(const TextTable& t, std::ostringstream& out) {
  out << t.title << "\n";
  std::vector<size_t> widths(t.headers.size(), 0);
  for (size_t c = 0; c < t.headers.size(); ++c) widths[c] = t.headers[c].size();
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  const auto emit_row = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      out << row[c];
      for (size_t pad = row[c].size(); pad < widths[c]; ++pad) out << ' ';
    }
    out << "\n";
  };
  emit_row(t.headers);
  size_t total = 0;
  for (size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c > 0 ? 2 : 0);
  out << std::string(total, '-') << "\n";
  for (const auto& row : t.rows) emit_row(row);
  out << "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string escaped = "\"";
  for (char c : s) {
    if (c == '"') escaped += "\"\"";
    else escaped += c;
  }
  escaped += "\"";
  return escaped;
}

void render_csv(const TextTable& t, std::ostringstream& out) {
  out << "# " << t.title << "\n";
  for (size_t c = 0; c < t.headers.size(); ++c) {
    if (c > 0) out << ",";
    out << csv_escape(t.headers[c]);
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ",";
      out << csv_escape(row[c]);
    }
    out << "\n";
  }
  out << "\n";
}

void render_markdown(const TextTable& t, std::ostringstream& out) {
  out << "### " << t.title << "\n\n";
  out << "|";
  for (const auto& h : t.headers) out << " " << h << " |";
  out << "\n|";
  for (size_t c = 0; c < t.headers.size(); ++c) out << " --- |";
  out << "\n";
  for (const auto& row : t.rows) {
    out << "|";
    for (const auto& cell : row) out << " " << cell << " |";
    out << "\n";
  }
  out << "\n";
}

void render(const TextTable& t, ReportFormat format, std::ostringstream& out) {
  switch (format) {
    case ReportFormat::PlainTable: render_plain(t, out); break;
    case ReportFormat::Delimited: render_csv(t, out); break;
    case ReportFormat::Markdown: render_markdown(t, out); break;
  }
}

struct ChiTest {
  std::string name;
  ContingencyTable2x2 table;
};

}  // namespace

std::string report(std::span<const AnalysisResult> results, ReportFormat format) {
  const DistributionTable dist = distribution_table(results);
  const SequenceTable seq = sequence_table(results);

  long new_entity = 0, other_anaphor_forms = 0, untagged = 0, counted = 0;
  for (const AnalysisResult& result : results) {
    for (const ExpressionRecord& r : result.expression_records) {
      if (r.tag == RecordTag::NewEntity) {
        ++new_entity;
      } else if (r.tag == RecordTag::None) {
        ++untagged;
      } else if (!row_of(r.form)) {
        ++other_anaphor_forms;
      } else {
        ++counted;
      }
    }
  }

  std::ostringstream out;
  static const char* kRowNames[] = {"zero", "strong", "np", "poss"};

  TextTable coverage;
  coverage.title = "Subject expression records";
  coverage.headers = {"category", "count"};
  coverage.rows = {
      {"tabulated", std::to_string(counted)},
      {"new entity (excluded)", std::to_string(new_entity)},
      {"other anaphors (excluded)", std::to_string(other_anaphor_forms)},
      {"untagged (excluded)", std::to_string(untagged)},
  };
  render(coverage, format, out);

  TextTable table2;
  table2.title = "Distribution of centering transitions";
  table2.headers = {"type", "total", "continue", "retain", "shift", "cent-est", "other"};
  for (int r = 0; r < DistributionTable::kRows; ++r) {
    std::vector<std::string> row = {kRowNames[r], std::to_string(dist.row_total(r))};
    for (int c = 0; c < DistributionTable::kCols; ++c) {
      row.push_back(std::to_string(dist.cells[r][c]));
    }
    table2.rows.push_back(std::move(row));
  }
  {
    std::vector<std::string> row = {"total", std::to_string(dist.grand_total())};
    for (int c = 0; c < DistributionTable::kCols; ++c) {
      row.push_back(std::to_string(dist.col_total(c)));
    }
    table2.rows.push_back(std::move(row));
  }
  render(table2, format, out);

  TextTable table4;
  table4.title = "Pronoun occurrences by transition preceding a continue";
  table4.headers = {"type", "total", "cont-cont+shift-cont", "ret-cont"};
  table4.rows = {
      {"zero", std::to_string(seq.row_total(0)), std::to_string(seq.cells[0][0]),
       std::to_string(seq.cells[0][1])},
      {"strong", std::to_string(seq.row_total(1)), std::to_string(seq.cells[1][0]),
       std::to_string(seq.cells[1][1])},
      {"total", std::to_string(seq.grand_total()), std::to_string(seq.col_total(0)),
       std::to_string(seq.col_total(1))},
  };
  render(table4, format, out);

  const long zc = dist.cells[DistributionTable::kZero][DistributionTable::kContinue];
  const long zr = dist.row_total(DistributionTable::kZero) - zc;
  const long sc = dist.cells[DistributionTable::kStrong][DistributionTable::kContinue];
  const long sr = dist.row_total(DistributionTable::kStrong) - sc;
  const long others_cont = dist.col_total(DistributionTable::kContinue) - zc;
  const long others_rest = dist.grand_total() - dist.col_total(DistributionTable::kContinue) - zr;
  const long npp_ce = dist.cells[DistributionTable::kNp][DistributionTable::kCentEst] +
                      dist.cells[DistributionTable::kPoss][DistributionTable::kCentEst];
  const long npp_rest = dist.row_total(DistributionTable::kNp) +
                        dist.row_total(DistributionTable::kPoss) - npp_ce;
  const long pron_ce = dist.cells[DistributionTable::kZero][DistributionTable::kCentEst] +
                       dist.cells[DistributionTable::kStrong][DistributionTable::kCentEst];
  const long pron_rest = dist.row_total(DistributionTable::kZero) +
                         dist.row_total(DistributionTable::kStrong) - pron_ce;

  const ChiTest tests[] = {
      {"zero vs strong x continue vs other transitions",
       {double(zc), double(zr), double(sc), double(sr)}},
      {"zero vs all other expressions x continue vs other transitions",
       {double(zc), double(zr), double(others_cont), double(others_rest)}},
      {"full NPs (np+poss) vs pronouns (zero+strong) x cent-est vs other transitions",
       {double(npp_ce), double(npp_rest), double(pron_ce), double(pron_rest)}},
      {"zero vs strong x cont-cont+shift-cont vs ret-cont",
       {double(seq.cells[0][0]), double(seq.cells[0][1]), double(seq.cells[1][0]),
        double(seq.cells[1][1])}},
  };

  TextTable chi;
  chi.title = "Chi-square tests (df=1, no continuity correction)";
  chi.headers = {"test", "a", "b", "c", "d", "chi2", "significance"};
  for (const ChiTest& t : tests) {
    std::vector<std::string> row = {t.name,
                                    std::to_string(long(t.table.a)),
                                    std::to_string(long(t.table.b)),
                                    std::to_string(long(t.table.c)),
                                    std::to_string(long(t.table.d))};
    try {
      const ChiSquareResult r = chi_square(t.table);
      row.push_back(fmt3(r.statistic));
      row.push_back(to_string(r.significance));
    } catch (const InvalidTableError&) {
      row.push_back("n/a");
      row.push_back("not computable");
    }
    chi.rows.push_back(std::move(row));
  }
  render(chi, format, out);

  TextTable pct;
  pct.title = "Derived percentages";
  pct.headers = {"measure", "ratio", "percent"};
  const long cont_total = dist.col_total(DistributionTable::kContinue);
  for (int r = 0; r < DistributionTable::kRows; ++r) {
    const long v = dist.cells[r][DistributionTable::kContinue];
    pct.rows.push_back({std::string(kRowNames[r]) + " share of continues",
                        fmt_ratio(v, cont_total), fmt_pct(v, cont_total)});
  }
  for (int r = 0; r < DistributionTable::kRows; ++r) {
    const long v = dist.cells[r][DistributionTable::kContinue];
    const long t = dist.row_total(r);
    pct.rows.push_back({std::string("continue share of ") + kRowNames[r],
                        fmt_ratio(v, t), fmt_pct(v, t)});
  }
  pct.rows.push_back({"zero share of pronominal continues (zero+strong)",
                      fmt_ratio(zc, zc + sc), fmt_pct(zc, zc + sc)});
  pct.rows.push_back({"zero share of cont-cont+shift-cont",
                      fmt_ratio(seq.cells[0][0], seq.col_total(0)),
                      fmt_pct(seq.cells[0][0], seq.col_total(0))});
  pct.rows.push_back({"zero share of ret-cont",
                      fmt_ratio(seq.cells[0][1], seq.col_total(1)),
                      fmt_pct(seq.cells[0][1], seq.col_total(1))});
  render(pct, format, out);

  return out.str();
}

const char* to_string(Significance s) {
  switch (s) {
    case Significance::NotSignificant: return "ns";
    case Significance::P05: return "p<0.05";
    case Significance::P01: return "p<0.01";
    case Significance::P001: return "p<0.001";
  }
  return "ns";
}

}  // namespace centering
