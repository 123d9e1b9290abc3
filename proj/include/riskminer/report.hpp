#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/corpus.hpp"
#include "riskminer/eval.hpp"
#include "riskminer/finance.hpp"

// Human-readable UTF-8 tables and machine-readable CSV / key-value emitters.
// Every classification metric printed here is macro-averaged and labeled as
// such.

namespace riskminer {

struct TableProvenance {
  std::string dataset;
  std::string split;  // e.g. "held-out test (70/15/15)" or "5-fold cv"
  std::uint64_t seed = 0;
};

// 0.852 -> "85.2%"
std::string format_percent(double fraction);

// Growth rates with an explicit sign: 10 -> "+10%", -3.5 -> "-3.5%"
std::string format_signed_percent(double percent);

// Model comparison table: one row per model kind, columns
// Model Type / Accuracy / Precision / Recall / F1 Score, one-decimal
// percents, plus a provenance footer. Fails on empty input.
std::string report_table3(
    const std::vector<std::pair<std::string, MetricsReport>>& rows,
    const TableProvenance& provenance);

// Macro summary plus one row per class.
std::string metrics_table(const MetricsReport& report);

// Machine-readable mirror: "key value" lines, labels percent-encoded.
std::string metrics_keyvalues(const MetricsReport& report);

std::string confusion_table(const ConfusionMatrix& matrix);

// Two-column CSV of curve points for external plotting.
std::string roc_csv(const RocCurve& curve);

std::string screen_table(const std::vector<RatioReport>& reports);
std::string screen_csv(const std::vector<RatioReport>& reports);

std::string trend_table(const std::vector<TrendReport>& reports);
std::string trend_csv(const std::vector<TrendReport>& reports);

// One combined analysis row per company: ratios, flags and (when available)
// growth rates plus an optional dominant risk theme.
struct CompanyAnalysis {
  std::string company;
  std::string main_risk_theme;  // empty when no theme is supplied
  double liquidity_ratio = 0.0;
  double debt_ratio = 0.0;
  bool has_trend = false;
  double net_profit_yoy = 0.0;
  double asset_growth = 0.0;
  std::vector<std::string> triggered_rules;
};

std::vector<CompanyAnalysis> combine_analysis(
    const std::vector<RatioReport>& ratios, const std::vector<TrendReport>& trends,
    const std::map<std::string, std::string>& themes = {});

std::string analysis_table(const std::vector<CompanyAnalysis>& rows);
std::string analysis_csv(const std::vector<CompanyAnalysis>& rows);

std::string validation_text(const ValidationReport& report);

}  // namespace riskminer
