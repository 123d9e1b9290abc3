#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riskminer {

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> label;
  std::optional<std::string> company;
  std::optional<std::string> date;  // strict ISO-8601 calendar date
};

// Immutable once loaded; iteration order equals input file order.
struct Corpus {
  std::vector<Document> docs;

  // Distinct non-null labels, sorted.
  std::vector<std::string> label_set() const;
};

enum class CorpusFormat { jsonl, csv };

enum class ReportType { Annual, Quarterly, MarketAnalysis };

const char* report_type_name(ReportType type);
ReportType parse_report_type(std::string_view text);

// One row of the financial indicator table. Currency magnitudes are in
// billions, taken as-is from the source.
struct FinancialRecord {
  std::string company;
  ReportType report_type = ReportType::Annual;
  std::string report_date;
  double total_assets = 0.0;
  double net_profit = 0.0;
  double liquidity_ratio = 0.0;
  double debt_ratio = 0.0;
  std::string risk_assessment;
};

struct ValidationReport {
  int n_docs = 0;
  std::map<std::string, int> label_counts;
  std::vector<std::string> unlabeled_ids;
  std::vector<std::string> empty_text_ids;
  std::vector<std::string> duplicate_ids;

  int anomaly_count() const {
    return static_cast<int>(empty_text_ids.size() + duplicate_ids.size());
  }
};

Corpus load_corpus(const std::string& path, CorpusFormat format);
std::string serialize_corpus(const Corpus& corpus);  // JSONL
void save_corpus(const Corpus& corpus, const std::string& path);

// Header must be exactly:
// company,report_type,report_date,total_assets,net_profit,liquidity_ratio,debt_ratio,risk_assessment
std::vector<FinancialRecord> load_financial_records(const std::string& path,
                                                    double max_debt_ratio = 1.5);

ValidationReport validate_corpus(const Corpus& corpus);

bool is_iso_date(std::string_view text);

}  // namespace riskminer
