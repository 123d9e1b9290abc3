#include "riskminer/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"

namespace riskminer {

namespace {

std::string lower_ascii(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Document parse_jsonl_record(const std::string& line, int line_no) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedRecord,
         "line " + std::to_string(line_no) + ": " + e.what());
  }
  if (!obj.is_object())
    fail(ErrorCode::MalformedRecord,
         "line " + std::to_string(line_no) + ": expected a JSON object");

  Document doc;
  for (const auto& [key, value] : obj.items()) {
    if (key == "id" || key == "text" || key == "label" || key == "company" ||
        key == "date") {
      if (!value.is_string())
        fail(ErrorCode::MalformedRecord, "line " + std::to_string(line_no) +
                                             ": field '" + key + "' must be a string");
      const std::string s = value.get<std::string>();
      if (key == "id") doc.id = s;
      else if (key == "text") doc.text = s;
      else if (key == "label") doc.label = s;
      else if (key == "company") doc.company = s;
      else doc.date = s;
    } else {
      fail(ErrorCode::MalformedRecord,
           "line " + std::to_string(line_no) + ": unknown field '" + key + "'");
    }
  }
  return doc;
}

void check_document(Document& doc, int line_no, std::set<std::string>& seen_ids) {
  if (doc.id.empty())
    fail(ErrorCode::MalformedRecord,
         "line " + std::to_string(line_no) + ": missing id");
  if (!seen_ids.insert(doc.id).second) fail(ErrorCode::DuplicateId, doc.id);
  if (trim(doc.text).empty()) fail(ErrorCode::EmptyText, doc.id);
  if (doc.date && !is_iso_date(*doc.date))
    fail(ErrorCode::MalformedRecord,
         "line " + std::to_string(line_no) + ": date '" + *doc.date +
             "' is not ISO-8601 (YYYY-MM-DD)");
}

}  // namespace

bool is_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  const std::string_view y = text.substr(0, 4);
  const std::string_view m = text.substr(5, 2);
  const std::string_view d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return false;
  const int year = (((y[0] - '0') * 10 + (y[1] - '0')) * 10 + (y[2] - '0')) * 10 +
                   (y[3] - '0');
  const int month = (m[0] - '0') * 10 + (m[1] - '0');
  const int day = (d[0] - '0') * 10 + (d[1] - '0');
  if (month < 1 || month > 12 || day < 1) return false;
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
  const int limit = month == 2 && leap ? 29 : kDays[month - 1];
  return day <= limit;
}

std::vector<std::string> Corpus::label_set() const {
  std::set<std::string> labels;
  for (const auto& doc : docs)
    if (doc.label) labels.insert(*doc.label);
  return {labels.begin(), labels.end()};
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  Corpus corpus;
  std::set<std::string> seen_ids;

  if (format == CorpusFormat::jsonl) {
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string_view line = trim(lines[i]);
      if (line.empty() || line[0] == '#') continue;
      Document doc = parse_jsonl_record(lines[i], static_cast<int>(i + 1));
      check_document(doc, static_cast<int>(i + 1), seen_ids);
      corpus.docs.push_back(std::move(doc));
    }
    return corpus;
  }

  // csv: header id,text,label,company,date; trailing optional columns may be
  // omitted per row only via empty fields.
  const auto rows = parse_csv(read_file(path));
  if (rows.empty()) return corpus;
  const std::vector<std::string> expected = {"id", "text", "label", "company", "date"};
  if (rows[0] != expected)
    fail(ErrorCode::MalformedRecord, "corpus CSV header must be id,text,label,company,date");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const int line_no = static_cast<int>(r + 1);
    if (row.size() != expected.size())
      fail(ErrorCode::MalformedRecord,
           "line " + std::to_string(line_no) + ": expected 5 fields, got " +
               std::to_string(row.size()));
    Document doc;
    doc.id = row[0];
    doc.text = row[1];
    if (!row[2].empty()) doc.label = row[2];
    if (!row[3].empty()) doc.company = row[3];
    if (!row[4].empty()) doc.date = row[4];
    check_document(doc, line_no, seen_ids);
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.docs) {
    nlohmann::json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    if (doc.label) obj["label"] = *doc.label;
    if (doc.company) obj["company"] = *doc.company;
    if (doc.date) obj["date"] = *doc.date;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  atomic_write_file(path, serialize_corpus(corpus));
}

const char* report_type_name(ReportType type) {
  switch (type) {
    case ReportType::Annual: return "Annual";
    case ReportType::Quarterly: return "Quarterly";
    case ReportType::MarketAnalysis: return "Market Analysis";
  }
  return "Annual";
}

ReportType parse_report_type(std::string_view text) {
  std::string t = lower_ascii(trim(text));
  if (t == "annual" || t == "annual report") return ReportType::Annual;
  if (t == "quarterly" || t == "quarterly report") return ReportType::Quarterly;
  if (t == "marketanalysis" || t == "market analysis") return ReportType::MarketAnalysis;
  fail(ErrorCode::UnknownReportType, std::string(text));
}

std::vector<FinancialRecord> load_financial_records(const std::string& path,
                                                    double max_debt_ratio) {
  const auto rows = parse_csv(read_file(path));
  const std::vector<std::string> expected = {
      "company",         "report_type", "report_date", "total_assets",
      "net_profit",      "liquidity_ratio", "debt_ratio",
      "risk_assessment"};
  if (rows.empty() || rows[0] != expected)
    fail(ErrorCode::MalformedRecord,
         "financial CSV header must be company,report_type,report_date,"
         "total_assets,net_profit,liquidity_ratio,debt_ratio,risk_assessment");

  std::vector<FinancialRecord> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "line " + std::to_string(r + 1);
    if (row.size() != expected.size())
      fail(ErrorCode::MalformedRecord,
           where + ": expected 8 fields, got " + std::to_string(row.size()));

    FinancialRecord rec;
    rec.company = row[0];
    if (rec.company.empty())
      fail(ErrorCode::MalformedRecord, where + ": empty company");
    rec.report_type = parse_report_type(row[1]);
    rec.report_date = row[2];
    if (!is_iso_date(rec.report_date))
      fail(ErrorCode::MalformedRecord,
           where + ": report_date '" + rec.report_date + "' is not ISO-8601");
    rec.total_assets = parse_double(row[3]);
    rec.net_profit = parse_double(row[4]);
    rec.liquidity_ratio = parse_double(row[5]);
    rec.debt_ratio = parse_double(row[6]);
    rec.risk_assessment = row[7];

    if (rec.total_assets <= 0.0)
      fail(ErrorCode::NonPositiveAsset,
           rec.company + ": total_assets = " + row[3]);
    if (rec.liquidity_ratio <= 0.0)
      fail(ErrorCode::MalformedRecord,
           where + ": liquidity_ratio must be > 0");
    if (rec.debt_ratio < 0.0 || rec.debt_ratio > max_debt_ratio)
      fail(ErrorCode::MalformedRecord,
           where + ": debt_ratio " + row[6] + " outside [0, " +
               format_double(max_debt_ratio) + "]");
    records.push_back(std::move(rec));
  }
  return records;
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  report.n_docs = static_cast<int>(corpus.docs.size());
  std::set<std::string> seen;
  for (const auto& doc : corpus.docs) {
    if (doc.label) ++report.label_counts[*doc.label];
    else report.unlabeled_ids.push_back(doc.id);
    if (doc.text.empty()) report.empty_text_ids.push_back(doc.id);
    if (!seen.insert(doc.id).second) report.duplicate_ids.push_back(doc.id);
  }
  return report;
}

}  // namespace riskminer
