#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "verinews/label.hpp"
#include "verinews/types.hpp"

namespace verinews {

/// cells(i, j): documents with true label i predicted as j, label-code order.
struct Confusion {
  using Cells = Eigen::Matrix<std::int64_t, kNumLabels, kNumLabels, Eigen::RowMajor>;
  Cells cells = Cells::Zero();

  std::int64_t total() const { return cells.sum(); }

  /// Row-major counts. Throws Error on a negative cell.
  static Confusion from_counts(const std::array<std::int64_t, kNumLabels * kNumLabels>& counts);

  bool operator==(const Confusion& other) const { return cells == other.cells; }
};

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct EvalReport {
  Confusion confusion;
  std::array<ClassMetrics, kNumLabels> per_class{};
  double accuracy = 0;
  double macro_f1 = 0;
};

/// Throws Error when the lengths differ or are zero.
Confusion confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred);

/// 2PR / (P + R), or 0 when P + R is 0.
double f1_score(double precision, double recall);

/// Empty row or column yields 0 for the matching ratio.
ClassMetrics class_metrics(const Confusion& conf, Label c);

/// trace / total. Throws Error on an empty matrix.
double accuracy(const Confusion& conf);

/// Unweighted mean over all four classes, unsupported ones included.
double macro_f1(const Confusion& conf);
double macro_f1(std::span<const double, kNumLabels> per_class_f1);

EvalReport classification_report(const Confusion& conf);

/// Integer percent, halves rounded up.
int round_half_up_percent(double fraction);

/// Text grid: true labels on rows, predictions on columns, each cell
/// "<count> <pct>%" with two decimals, then "Accuracy=<pct>" with three.
std::string render_confusion(const Confusion& conf, std::string_view title);

/// Same grid as a static HTML table.
std::string render_confusion_html(const Confusion& conf, std::string_view title);

/// Precision / recall / F1 table in whole percent plus accuracy and macro-F1.
std::string render_report(const EvalReport& report);

/// Machine-readable report: confusion cells, per-class metrics as full
/// precision fractions, accuracy, macro-F1. Schema in docs/report_schema.md.
std::string report_to_json(const EvalReport& report);

/// Rebuilds a report from its JSON form; metrics are recomputed from the
/// cells. Throws Error on malformed input.
EvalReport report_from_json(std::string_view json);

}  // namespace verinews
