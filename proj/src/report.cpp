#include "riskminer/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"

namespace riskminer {

namespace {

// Left-justified column layout; the first row is the header.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size())
        line.append(widths[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

std::string trim_number(std::string text) {
  if (text.find('.') == std::string::npos) return text;
  while (!text.empty() && text.back() == '0') text.pop_back();
  if (!text.empty() && text.back() == '.') text.pop_back();
  return text;
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return trim_number(buf);
}

std::string joined_rules(const std::vector<std::string>& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i > 0) out += ';';
    out += rules[i];
  }
  return out;
}

std::vector<std::string> triggered_of(const RatioReport& report) {
  std::vector<std::string> out;
  for (const RuleFlag& flag : report.flags)
    if (flag.triggered) out.push_back(flag.rule);
  return out;
}

}  // namespace

std::string format_percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
  return buf;
}

std::string format_signed_percent(double percent) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.6f", percent);
  std::string body = buf;
  std::string sign = body.substr(0, 1);
  return sign + trim_number(body.substr(1)) + "%";
}

std::string report_table3(
    const std::vector<std::pair<std::string, MetricsReport>>& rows,
    const TableProvenance& provenance) {
  if (rows.empty()) fail(ErrorCode::EmptyInput, "no evaluated models to tabulate");
  std::vector<std::vector<std::string>> table;
  table.push_back({"Model Type", "Accuracy", "Precision", "Recall", "F1 Score"});
  for (const auto& [name, metrics] : rows) {
    table.push_back({name, format_percent(metrics.accuracy),
                     format_percent(metrics.macro_precision),
                     format_percent(metrics.macro_recall),
                     format_percent(metrics.macro_f1)});
  }
  std::string out = render_table(table);
  out += "(macro-averaged; dataset: " + provenance.dataset + "; split: " + provenance.split +
         "; seed: " + std::to_string(provenance.seed) + ")\n";
  return out;
}

std::string metrics_table(const MetricsReport& report) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Class", "Precision", "Recall", "F1 Score"});
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    const ClassMetrics& m = report.per_class[i];
    std::string precision = format_percent(m.precision);
    if (!m.precision_defined) precision += " (never predicted, 0 by convention)";
    table.push_back({report.labels[i], precision, format_percent(m.recall),
                     format_percent(m.f1)});
  }
  table.push_back({"macro", format_percent(report.macro_precision),
                   format_percent(report.macro_recall), format_percent(report.macro_f1)});
  std::string out = "accuracy " + format_percent(report.accuracy) + "\n";
  out += render_table(table);
  return out;
}

std::string metrics_keyvalues(const MetricsReport& report) {
  std::string out;
  out += "accuracy " + format_double(report.accuracy) + "\n";
  out += "macro_precision " + format_double(report.macro_precision) + "\n";
  out += "macro_recall " + format_double(report.macro_recall) + "\n";
  out += "macro_f1 " + format_double(report.macro_f1) + "\n";
  out += "has_undefined_precision " + std::string(report.has_undefined_precision ? "1" : "0") +
         "\n";
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    const ClassMetrics& m = report.per_class[i];
    out += "class " + encode_field(report.labels[i]) + " " + format_double(m.precision) + " " +
           format_double(m.recall) + " " + format_double(m.f1) + " " +
           (m.precision_defined ? "1" : "0") + " " + (m.recall_defined ? "1" : "0") + "\n";
  }
  return out;
}

std::string confusion_table(const ConfusionMatrix& matrix) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header = {"true \\ predicted"};
  header.insert(header.end(), matrix.labels.begin(), matrix.labels.end());
  table.push_back(header);
  for (std::size_t r = 0; r < matrix.labels.size(); ++r) {
    std::vector<std::string> row = {matrix.labels[r]};
    for (std::size_t c = 0; c < matrix.labels.size(); ++c)
      row.push_back(std::to_string(matrix.counts(static_cast<Eigen::Index>(r),
                                                 static_cast<Eigen::Index>(c))));
    table.push_back(row);
  }
  return render_table(table);
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "fpr,tpr\n";
  for (const auto& [fpr, tpr] : curve.points)
    out += format_double(fpr) + "," + format_double(tpr) + "\n";
  return out;
}

std::string screen_table(const std::vector<RatioReport>& reports) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Company", "Liquidity Ratio", "Debt Ratio", "Flags"});
  for (const RatioReport& report : reports) {
    std::vector<std::string> rules = triggered_of(report);
    table.push_back({report.company, format_ratio(report.liquidity_ratio),
                     format_ratio(report.debt_ratio),
                     rules.empty() ? "-" : joined_rules(rules)});
  }
  return render_table(table);
}

std::string screen_csv(const std::vector<RatioReport>& reports) {
  std::string out =
      csv_row({"company", "liquidity_ratio", "debt_ratio", "liquidity_flag", "debt_flag"});
  for (const RatioReport& report : reports) {
    out += csv_row({report.company, format_double(report.liquidity_ratio),
                    format_double(report.debt_ratio), report.flagged("liquidity") ? "1" : "0",
                    report.flagged("debt") ? "1" : "0"});
  }
  return out;
}

std::string trend_table(const std::vector<TrendReport>& reports) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Company", "Net Profit Change (YoY)", "Asset Growth Rate"});
  for (const TrendReport& report : reports)
    table.push_back({report.company, format_signed_percent(report.net_profit_yoy),
                     format_signed_percent(report.asset_growth)});
  return render_table(table);
}

std::string trend_csv(const std::vector<TrendReport>& reports) {
  std::string out = csv_row({"company", "net_profit_yoy", "asset_growth"});
  for (const TrendReport& report : reports)
    out += csv_row({report.company, format_double(report.net_profit_yoy),
                    format_double(report.asset_growth)});
  return out;
}

std::vector<CompanyAnalysis> combine_analysis(
    const std::vector<RatioReport>& ratios, const std::vector<TrendReport>& trends,
    const std::map<std::string, std::string>& themes) {
  std::map<std::string, const TrendReport*> by_company;
  for (const TrendReport& trend : trends) by_company[trend.company] = &trend;
  std::vector<CompanyAnalysis> rows;
  rows.reserve(ratios.size());
  for (const RatioReport& ratio : ratios) {
    CompanyAnalysis row;
    row.company = ratio.company;
    auto theme = themes.find(ratio.company);
    if (theme != themes.end()) row.main_risk_theme = theme->second;
    row.liquidity_ratio = ratio.liquidity_ratio;
    row.debt_ratio = ratio.debt_ratio;
    row.triggered_rules = triggered_of(ratio);
    auto trend = by_company.find(ratio.company);
    if (trend != by_company.end()) {
      row.has_trend = true;
      row.net_profit_yoy = trend->second->net_profit_yoy;
      row.asset_growth = trend->second->asset_growth;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string analysis_table(const std::vector<CompanyAnalysis>& rows) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Company", "Main Risk Theme", "Liquidity Ratio", "Debt Ratio",
                   "Net Profit Change (YoY)", "Asset Growth Rate", "Flags"});
  for (const CompanyAnalysis& row : rows) {
    table.push_back({row.company, row.main_risk_theme.empty() ? "-" : row.main_risk_theme,
                     format_ratio(row.liquidity_ratio), format_ratio(row.debt_ratio),
                     row.has_trend ? format_signed_percent(row.net_profit_yoy) : "-",
                     row.has_trend ? format_signed_percent(row.asset_growth) : "-",
                     row.triggered_rules.empty() ? "-" : joined_rules(row.triggered_rules)});
  }
  return render_table(table);
}

std::string analysis_csv(const std::vector<CompanyAnalysis>& rows) {
  std::string out = csv_row({"company", "main_risk_theme", "liquidity_ratio", "debt_ratio",
                             "net_profit_yoy", "asset_growth", "flags"});
  for (const CompanyAnalysis& row : rows) {
    out += csv_row({row.company, row.main_risk_theme, format_double(row.liquidity_ratio),
                    format_double(row.debt_ratio),
                    row.has_trend ? format_double(row.net_profit_yoy) : "",
                    row.has_trend ? format_double(row.asset_growth) : "",
                    joined_rules(row.triggered_rules)});
  }
  return out;
}

std::string validation_text(const ValidationReport& report) {
  std::string out;
  out += "documents " + std::to_string(report.n_docs) + "\n";
  out += "distinct_labels " + std::to_string(report.label_counts.size()) + "\n";
  for (const auto& [label, count] : report.label_counts)
    out += "label " + encode_field(label) + " " + std::to_string(count) + "\n";
  out += "unlabeled " + std::to_string(report.unlabeled_ids.size());
  for (const std::string& id : report.unlabeled_ids) out += " " + encode_field(id);
  out += "\n";
  out += "empty_text " + std::to_string(report.empty_text_ids.size());
  for (const std::string& id : report.empty_text_ids) out += " " + encode_field(id);
  out += "\n";
  out += "duplicate_ids " + std::to_string(report.duplicate_ids.size());
  for (const std::string& id : report.duplicate_ids) out += " " + encode_field(id);
  out += "\n";
  out += "anomalies " + std::to_string(report.anomaly_count()) + "\n";
  return out;
}

}  // namespace riskminer
