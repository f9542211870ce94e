#include "extremal/report.hpp"

#include <charconv>
#include <cmath>

namespace extremal {

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

nlohmann::json to_json(const AssertionReport& r)
{
    using nlohmann::json;
    json j;
    j["assertion"] = r.assertion;
    j["kernels"] = r.kernels;
    j["range"] = json::array({r.range_lo, r.range_hi});
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    j["skip_reasons"] = r.skip_reasons;
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"n", v.n}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"slack", v.slack}});
    j["violations"] = std::move(violations);
    j["violation_count"] = r.violation_count;
    if (r.min_slack)
        j["min_slack"] = {{"n", r.min_slack->n}, {"slack", r.min_slack->slack}};
    else
        j["min_slack"] = nullptr;
    j["equality_witnesses"] = r.equality_witnesses;
    j["equality_count"] = r.equality_count;
    j["diagnostics"] = r.diagnostics;
    return j;
}

AssertionReport report_from_json(const nlohmann::json& j)
{
    AssertionReport r;
    r.assertion = j.at("assertion").get<std::string>();
    r.kernels = j.at("kernels").get<std::vector<std::string>>();
    r.range_lo = j.at("range").at(0).get<std::uint64_t>();
    r.range_hi = j.at("range").at(1).get<std::uint64_t>();
    r.checked = j.at("checked").get<std::uint64_t>();
    r.skipped = j.at("skipped").get<std::uint64_t>();
    r.skip_reasons = j.at("skip_reasons").get<std::map<std::string, std::uint64_t>>();
    for (const auto& v : j.at("violations"))
        r.violations.push_back({v.at("n").get<std::uint64_t>(), v.at("lhs").get<double>(),
                                v.at("rhs").get<double>(), v.at("slack").get<double>()});
    r.violation_count = j.at("violation_count").get<std::uint64_t>();
    if (const auto& m = j.at("min_slack"); !m.is_null())
        r.min_slack = SlackPoint{m.at("n").get<std::uint64_t>(), m.at("slack").get<double>()};
    r.equality_witnesses = j.at("equality_witnesses").get<std::vector<std::uint64_t>>();
    r.equality_count = j.at("equality_count").get<std::uint64_t>();
    r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    return r;
}

std::string kernel_label(std::span<const std::string> ids)
{
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty())
            out += '+';
        out += id;
    }
    return out;
}

std::string summary_csv_row(const AssertionReport& r)
{
    std::string row = r.assertion + ',' + kernel_label(r.kernels) + ',' + std::to_string(r.range_lo) + ',' +
                      std::to_string(r.range_hi) + ',' + std::to_string(r.checked) + ',' +
                      std::to_string(r.skipped) + ',' + std::to_string(r.violation_count) + ',';
    if (r.min_slack)
        row += std::to_string(r.min_slack->n) + ',' + format_real(r.min_slack->slack);
    else
        row += ',';
    row += ',' + std::to_string(r.equality_count);
    return row;
}

std::string tabulate_csv_row(const BoundCheck& c, std::string_view kernel)
{
    std::string row = std::to_string(c.n);
    row += ',';
    row += to_string(c.assertion);
    row += ',';
    row += kernel;
    row += ',' + format_real(c.lhs) + ',' + format_real(c.rhs) + ',' + format_real(c.slack) + ',';
    row += c.exact ? "true" : "false";
    return row;
}

}  // namespace extremal
