#pragma once

#include <string>
#include <string_view>

#include "vsign/experiment.hpp"

namespace vsign {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view text);

/// CSV columns method,k,metric,session,run,accuracy. Each row contributes
/// one line per run (run numbered from 1) and a closing "mean" line.
/// Accuracies carry three decimals. JSON holds the same records.
std::string emit_report(const ResultTable& table, ReportFormat format);

/// Rebuilds a table from emit_report(..., Json) output.
ResultTable parse_report_json(std::string_view document);

}  // namespace vsign
