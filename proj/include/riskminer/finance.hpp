#pragma once

#include <string>
#include <utility>
#include <vector>

#include "riskminer/corpus.hpp"

namespace riskminer {

struct ScreenConfig {
  double liquidity_floor = 1.5;  // flag when liquidity_ratio <= floor
  double debt_ceiling = 0.7;     // flag when debt_ratio >= ceiling
};

struct RuleFlag {
  std::string rule;  // "liquidity" or "debt"
  bool triggered = false;
  double threshold = 0.0;
};

struct RatioReport {
  std::string company;
  double liquidity_ratio = 0.0;
  double debt_ratio = 0.0;
  std::vector<RuleFlag> flags;

  bool flagged(const std::string& rule) const;
};

struct TrendReport {
  std::string company;
  double net_profit_yoy = 0.0;  // percent
  double asset_growth = 0.0;    // percent
};

double liquidity_ratio(double current_assets, double current_liabilities);
double debt_ratio(double total_liabilities, double total_assets);

// 100 * (current - previous) / previous
double yoy_change(double current, double previous);

// Reports sorted by company; flag comparisons are non-strict so boundary
// values trigger.
std::vector<RatioReport> screen(const std::vector<FinancialRecord>& records,
                                const ScreenConfig& config);

// One (previous, current) pair per company.
std::vector<TrendReport> trend_report(
    const std::vector<std::pair<FinancialRecord, FinancialRecord>>& pairs);

// Pairs every current record with the same company's previous record.
std::vector<std::pair<FinancialRecord, FinancialRecord>> match_periods(
    const std::vector<FinancialRecord>& previous,
    const std::vector<FinancialRecord>& current);

}  // namespace riskminer
