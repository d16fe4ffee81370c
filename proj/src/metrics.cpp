#include "verinews/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "verinews/errors.hpp"

namespace verinews {

namespace {

constexpr int kGridColumn = 17;
constexpr int kRowHeaderColumn = 18;

std::string format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

std::string cell_text(std::int64_t count, std::int64_t total) {
  return std::to_string(count) + " " +
         format("%.2f", 100.0 * static_cast<double>(count) / static_cast<double>(total)) + "%";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void rstrip_line(std::string& line) {
  while (!line.empty() && line.back() == ' ') line.pop_back();
}

void require_nonempty(const Confusion& conf) {
  if (conf.total() <= 0) throw Error("confusion matrix is empty");
}

std::string escape_html(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

Confusion Confusion::from_counts(const std::array<std::int64_t, kNumLabels * kNumLabels>& counts) {
  Confusion conf;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 0) throw Error("confusion cell " + std::to_string(k) + " is negative");
    conf.cells(static_cast<Index>(k / kNumLabels), static_cast<Index>(k % kNumLabels)) = counts[k];
  }
  return conf;
}

Confusion confusion_matrix(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size())
    throw Error("confusion matrix: " + std::to_string(y_true.size()) + " true labels but " +
                std::to_string(y_pred.size()) + " predictions");
  if (y_true.empty()) throw Error("confusion matrix: no labels");
  Confusion conf;
  for (std::size_t i = 0; i < y_true.size(); ++i)
    ++conf.cells(static_cast<Index>(index_of(y_true[i])), static_cast<Index>(index_of(y_pred[i])));
  return conf;
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0 ? 2 * precision * recall / sum : 0.0;
}

ClassMetrics class_metrics(const Confusion& conf, Label c) {
  const auto k = static_cast<Index>(index_of(c));
  const auto hit = static_cast<double>(conf.cells(k, k));
  const auto predicted = static_cast<double>(conf.cells.col(k).sum());
  const auto actual = static_cast<double>(conf.cells.row(k).sum());
  ClassMetrics m;
  m.precision = predicted > 0 ? hit / predicted : 0.0;
  m.recall = actual > 0 ? hit / actual : 0.0;
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

double accuracy(const Confusion& conf) {
  require_nonempty(conf);
  return static_cast<double>(conf.cells.trace()) / static_cast<double>(conf.total());
}

double macro_f1(std::span<const double, kNumLabels> per_class_f1) {
  double sum = 0;
  for (const double f : per_class_f1) sum += f;
  return sum / static_cast<double>(kNumLabels);
}

double macro_f1(const Confusion& conf) {
  require_nonempty(conf);
  std::array<double, kNumLabels> f1{};
  for (const Label c : kAllLabels) f1[index_of(c)] = class_metrics(conf, c).f1;
  return macro_f1(std::span<const double, kNumLabels>(f1));
}

EvalReport classification_report(const Confusion& conf) {
  EvalReport report;
  report.confusion = conf;
  for (const Label c : kAllLabels) report.per_class[index_of(c)] = class_metrics(conf, c);
  report.accuracy = accuracy(conf);
  report.macro_f1 = macro_f1(conf);
  return report;
}

int round_half_up_percent(double fraction) {
  return static_cast<int>(std::floor(100.0 * fraction + 0.5));
}

std::string render_confusion(const Confusion& conf, std::string_view title) {
  require_nonempty(conf);
  const std::int64_t total = conf.total();
  std::ostringstream out;
  out << title << '\n';
  std::string header = pad("true \\ predicted", kRowHeaderColumn);
  for (const Label c : kAllLabels) header += pad(std::string(display_name(c)), kGridColumn);
  rstrip_line(header);
  out << header << '\n';
  for (const Label row : kAllLabels) {
    std::string line = pad(std::string(display_name(row)), kRowHeaderColumn);
    for (const Label col : kAllLabels)
      line += pad(cell_text(conf.cells(static_cast<Index>(index_of(row)), static_cast<Index>(index_of(col))), total),
                  kGridColumn);
    rstrip_line(line);
    out << line << '\n';
  }
  out << "Accuracy=" << format("%.3f", 100.0 * accuracy(conf)) << '\n';
  return out.str();
}

std::string render_confusion_html(const Confusion& conf, std::string_view title) {
  require_nonempty(conf);
  const std::int64_t total = conf.total();
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>" << escape_html(title)
      << "</title></head>\n<body>\n<table border=\"1\">\n<caption>" << escape_html(title) << "</caption>\n";
  out << "<tr><th>true \\ predicted</th>";
  for (const Label c : kAllLabels) out << "<th>" << display_name(c) << "</th>";
  out << "</tr>\n";
  for (const Label row : kAllLabels) {
    out << "<tr><th>" << display_name(row) << "</th>";
    for (const Label col : kAllLabels)
      out << "<td>" << cell_text(conf.cells(static_cast<Index>(index_of(row)), static_cast<Index>(index_of(col))), total)
          << "</td>";
    out << "</tr>\n";
  }
  out << "</table>\n<p>Accuracy=" << format("%.3f", 100.0 * accuracy(conf)) << "</p>\n</body>\n</html>\n";
  return out.str();
}

std::string render_report(const EvalReport& report) {
  std::ostringstream out;
  out << pad("Class name", kGridColumn) << "Precision  Recall     F1  Support\n";
  for (const Label c : kAllLabels) {
    const auto& m = report.per_class[index_of(c)];
    char line[96];
    std::snprintf(line, sizeof line, "%8d%% %6d%% %5d%% %8lld", round_half_up_percent(m.precision),
                  round_half_up_percent(m.recall), round_half_up_percent(m.f1),
                  static_cast<long long>(report.confusion.cells.row(static_cast<Index>(index_of(c))).sum()));
    out << pad(std::string(display_name(c)), kGridColumn) << line << '\n';
  }
  out << '\n'
      << pad("Accuracy", kGridColumn) << round_half_up_percent(report.accuracy) << "%\n"
      << pad("F1-macro avg", kGridColumn) << round_half_up_percent(report.macro_f1) << "%\n";
  return out.str();
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["labels"] = nlohmann::ordered_json::array();
  for (const Label c : kAllLabels) j["labels"].push_back(display_name(c));
  j["confusion"] = nlohmann::ordered_json::array();
  for (Index r = 0; r < static_cast<Index>(kNumLabels); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (Index c = 0; c < static_cast<Index>(kNumLabels); ++c) row.push_back(report.confusion.cells(r, c));
    j["confusion"].push_back(row);
  }
  j["total"] = report.confusion.total();
  j["per_class"] = nlohmann::ordered_json::object();
  for (const Label c : kAllLabels) {
    const auto& m = report.per_class[index_of(c)];
    j["per_class"][std::string(display_name(c))] = {
        {"precision", m.precision},
        {"recall", m.recall},
        {"f1", m.f1},
        {"support", report.confusion.cells.row(static_cast<Index>(index_of(c))).sum()}};
  }
  j["accuracy"] = report.accuracy;
  j["macro_f1"] = report.macro_f1;
  return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    const auto& rows = j.at("confusion");
    if (!rows.is_array() || rows.size() != kNumLabels) throw Error("report JSON: 'confusion' must be 4x4");
    std::array<std::int64_t, kNumLabels * kNumLabels> counts{};
    for (std::size_t r = 0; r < kNumLabels; ++r) {
      if (!rows[r].is_array() || rows[r].size() != kNumLabels) throw Error("report JSON: 'confusion' must be 4x4");
      for (std::size_t c = 0; c < kNumLabels; ++c) counts[r * kNumLabels + c] = rows[r][c].get<std::int64_t>();
    }
    return classification_report(Confusion::from_counts(counts));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report JSON: ") + e.what());
  }
}

}  // namespace verinews
