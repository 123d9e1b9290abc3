#include "riskminer/finance.hpp"

#include <algorithm>
#include <map>

#include "riskminer/error.hpp"

namespace riskminer {

bool RatioReport::flagged(const std::string& rule) const {
  for (const auto& flag : flags)
    if (flag.rule == rule) return flag.triggered;
  return false;
}

double liquidity_ratio(double current_assets, double current_liabilities) {
  if (!(current_liabilities > 0.0))
    fail(ErrorCode::NonPositiveDenominator, "current liabilities must be > 0");
  return current_assets / current_liabilities;
}

double debt_ratio(double total_liabilities, double total_assets) {
  if (!(total_assets > 0.0))
    fail(ErrorCode::NonPositiveDenominator, "total assets must be > 0");
  return total_liabilities / total_assets;
}

double yoy_change(double current, double previous) {
  if (!(previous > 0.0))
    fail(ErrorCode::NonPositiveBase, "previous-period value must be > 0");
  return 100.0 * (current - previous) / previous;
}

std::vector<RatioReport> screen(const std::vector<FinancialRecord>& records,
                                const ScreenConfig& config) {
  std::vector<RatioReport> reports;
  reports.reserve(records.size());
  for (const auto& record : records) {
    RatioReport report;
    report.company = record.company;
    report.liquidity_ratio = record.liquidity_ratio;
    report.debt_ratio = record.debt_ratio;
    report.flags.push_back({"liquidity",
                            record.liquidity_ratio <= config.liquidity_floor,
                            config.liquidity_floor});
    report.flags.push_back(
        {"debt", record.debt_ratio >= config.debt_ceiling, config.debt_ceiling});
    reports.push_back(std::move(report));
  }
  std::sort(reports.begin(), reports.end(),
            [](const RatioReport& a, const RatioReport& b) {
              return a.company < b.company;
            });
  return reports;
}

std::vector<TrendReport> trend_report(
    const std::vector<std::pair<FinancialRecord, FinancialRecord>>& pairs) {
  std::vector<TrendReport> reports;
  reports.reserve(pairs.size());
  for (const auto& [previous, current] : pairs) {
    if (previous.company != current.company)
      fail(ErrorCode::UnmatchedCompany, "pair mixes '" + previous.company +
                                            "' and '" + current.company + "'");
    TrendReport report;
    report.company = current.company;
    report.net_profit_yoy = yoy_change(current.net_profit, previous.net_profit);
    report.asset_growth = yoy_change(current.total_assets, previous.total_assets);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<std::pair<FinancialRecord, FinancialRecord>> match_periods(
    const std::vector<FinancialRecord>& previous,
    const std::vector<FinancialRecord>& current) {
  std::map<std::string, const FinancialRecord*> by_company;
  for (const auto& record : previous) by_company[record.company] = &record;

  std::vector<std::pair<FinancialRecord, FinancialRecord>> pairs;
  pairs.reserve(current.size());
  for (const auto& record : current) {
    const auto it = by_company.find(record.company);
    if (it == by_company.end())
      fail(ErrorCode::UnmatchedCompany,
           "no previous period for '" + record.company + "'");
    pairs.emplace_back(*it->second, record);
  }
  return pairs;
}

}  // namespace riskminer
