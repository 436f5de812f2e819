#include "vsign/report.hpp"

#include <cstdio>
#include <json.hpp>

#include "vsign/error.hpp"

namespace vsign {

namespace {

using nlohmann::json;

std::string three_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csv_line(const ResultRow& row, const std::string& run, double accuracy) {
  return std::string(to_string(row.method)) + "," + std::to_string(row.k) + "," +
         std::string(to_string(row.metric)) + "," + std::to_string(row.session) + "," + run + "," +
         three_decimals(accuracy) + "\n";
}

// Printed with three decimals, re-read as a JSON number.
json rounded(double v) { return json::parse(three_decimals(v)); }

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv" || text == "CSV") return ReportFormat::Csv;
  if (text == "json" || text == "JSON") return ReportFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string emit_report(const ResultTable& table, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::string out = "method,k,metric,session,run,accuracy\n";
    for (const ResultRow& row : table.rows) {
      for (std::size_t r = 0; r < row.run_accuracies.size(); ++r) {
        out += csv_line(row, std::to_string(r + 1), row.run_accuracies[r]);
      }
      out += csv_line(row, "mean", row.mean);
    }
    return out;
  }

  json records = json::array();
  for (const ResultRow& row : table.rows) {
    auto record = [&](json run, double accuracy) {
      return json{{"method", to_string(row.method)}, {"k", row.k},         {"metric", to_string(row.metric)},
                  {"session", row.session},          {"run", std::move(run)}, {"accuracy", rounded(accuracy)}};
    };
    for (std::size_t r = 0; r < row.run_accuracies.size(); ++r) {
      records.push_back(record(r + 1, row.run_accuracies[r]));
    }
    records.push_back(record("mean", row.mean));
  }
  return json{{"records", records}}.dump(2) + "\n";
}

ResultTable parse_report_json(std::string_view document) {
  ResultTable table;
  try {
    const json doc = json::parse(document);
    ResultRow* open = nullptr;
    for (const json& rec : doc.at("records")) {
      const FeatureMethod method = parse_feature_method(rec.at("method").get<std::string>());
      const int k = rec.at("k").get<int>();
      const Metric metric = parse_metric(rec.at("metric").get<std::string>());
      const int session = rec.at("session").get<int>();
      const double accuracy = rec.at("accuracy").get<double>();
      if (!open) {
        table.rows.push_back(ResultRow{method, k, metric, session, {}, 0.0});
        open = &table.rows.back();
      }
      if (open->method != method || open->k != k || open->metric != metric || open->session != session) {
        throw Error(ErrorCode::ParseError, "run records must precede their row's mean record");
      }
      if (rec.at("run").is_string()) {
        if (rec.at("run").get<std::string>() != "mean") throw Error(ErrorCode::ParseError, "run must be a number or \"mean\"");
        open->mean = accuracy;
        open = nullptr;
      } else {
        open->run_accuracies.push_back(accuracy);
      }
    }
    if (open) throw Error(ErrorCode::ParseError, "last row has no mean record");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
  return table;
}

}  // namespace vsign
