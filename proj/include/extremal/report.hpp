#pragma once

// Report serialization: JSON for AssertionReport, CSV for summaries and
// per-n tabulation. All numeric output is locale-independent.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "extremal/bounds.hpp"
#include "extremal/verify.hpp"

namespace extremal {

/// 17 significant digits, '.' decimal separator, no grouping.
std::string format_real(double v);

nlohmann::json to_json(const AssertionReport& r);
/// Inverse of to_json; throws nlohmann::json exceptions on malformed input.
AssertionReport report_from_json(const nlohmann::json& j);

inline constexpr std::string_view kSummaryCsvHeader =
    "assertion,kernels,range_lo,range_hi,checked,skipped,violations,min_slack_n,min_slack,equality_count";
std::string summary_csv_row(const AssertionReport& r);

inline constexpr std::string_view kTabulateCsvHeader = "n,assertion,kernel,lhs,rhs,slack,exact";
/// One tabulation row; `kernel` is the kernel label (or sub-check tag for maxord).
std::string tabulate_csv_row(const BoundCheck& c, std::string_view kernel);

/// Kernel ids joined with '+'.
std::string kernel_label(std::span<const std::string> ids);

}  // namespace extremal
