#include "extremal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "extremal/errors.hpp"
#include "extremal/report.hpp"

namespace extremal {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::uint64_t table_limit_for(std::uint64_t max_n)
{
    std::uint64_t limit = std::max(max_n, kDefaultValidationLimit);
    if (const char* env = std::getenv(kTableLimitEnv); env != nullptr && *env != '\0') {
        std::uint64_t requested = 0;
        const char* last = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, last, requested);
        if (ec != std::errc{} || ptr != last)
            throw UsageError(std::string(kTableLimitEnv) + " must be a positive integer");
        limit = std::max(limit, requested);
    }
    return limit;
}

// Everything a subcommand needs; built once per invocation.
struct Session {
    PrimeTable table;
    KernelRegistry registry;
    Constants constants;
    Verifier verifier;

    Session(std::uint64_t max_n, unsigned sigma_order)
        : table(table_limit_for(max_n)), registry(table, sigma_order), verifier(table, registry, constants)
    {
    }
};

std::unique_ptr<Session> open_session(std::uint64_t max_n, const std::vector<std::string>& kernels)
{
    return std::make_unique<Session>(max_n, std::max(3u, max_sigma_order(kernels)));
}

enum class Format { json, csv };

Format resolve_format(const std::string& format, const std::string& out_path)
{
    std::string ext;
    if (!out_path.empty()) {
        ext = std::filesystem::path(out_path).extension().string();
        if (ext != ".json" && ext != ".csv")
            throw UsageError("output path must end in .json or .csv");
    }
    if (!format.empty() && format != "json" && format != "csv")
        throw UsageError("--format must be json or csv");
    if (!format.empty() && !ext.empty() && "." + format != ext)
        throw UsageError("--format " + format + " does not match output path " + out_path);
    const std::string chosen = !format.empty() ? format : (ext == ".csv" ? "csv" : "json");
    return chosen == "csv" ? Format::csv : Format::json;
}

// Writes to the --out path, or to `out` when no path was given.
void emit(const std::string& out_path, std::ostream& out, const std::string& text)
{
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw UsageError("cannot open " + out_path + " for writing");
    file << text;
}

std::vector<std::vector<std::string>> selections_for(AssertionId id, const std::vector<std::string>& kernels)
{
    if (kernels.empty())
        return default_kernel_selections(id);
    if (id == AssertionId::maxord)
        throw UsageError("maxord takes no --kernel");
    if (takes_kernel_list(id))
        return {kernels};
    std::vector<std::vector<std::string>> out;
    for (const auto& k : kernels)
        out.push_back({k});
    return out;
}

struct CommonOptions {
    std::vector<std::string> assertions;
    std::vector<std::string> kernels;
    std::uint64_t min_n = 2;
    std::uint64_t max_n = 100'000;
    unsigned workers = 1;
    double rel_tol = TolerancePolicy{}.rel;
    double abs_tol = TolerancePolicy{}.abs;
    std::size_t violation_cap = 100;
    std::size_t witness_cap = 10'000;
    std::string out_path;
    std::string format;

    TolerancePolicy policy() const { return {rel_tol, abs_tol}; }
};

void add_tolerance_flags(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--rel-tol", o.rel_tol, "relative tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--abs-tol", o.abs_tol, "absolute tolerance")->check(CLI::NonNegativeNumber);
}

void add_output_flags(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--out", o.out_path, "output file (.json or .csv); stdout when omitted");
    cmd->add_option("--format", o.format, "json or csv");
}

int cmd_verify(const CommonOptions& o, std::ostream& out)
{
    if (o.max_n < 2)
        throw UsageError("--max must be at least 2");
    const Format format = resolve_format(o.format, o.out_path);
    std::vector<AssertionId> ids;
    for (const auto& a : o.assertions)
        ids.push_back(parse_assertion(a));
    if (ids.empty())
        ids.assign(all_assertions().begin(), all_assertions().end());

    auto session = open_session(o.max_n, o.kernels);
    std::vector<SweepConfig> configs;
    for (const auto id : ids) {
        for (auto& sel : selections_for(id, o.kernels)) {
            SweepConfig cfg;
            cfg.assertion = id;
            cfg.kernels = std::move(sel);
            cfg.max_n = o.max_n;
            cfg.policy = o.policy();
            cfg.workers = std::max(1u, o.workers);
            cfg.violation_cap = o.violation_cap;
            cfg.witness_cap = o.witness_cap;
            session->verifier.validate(cfg);
            configs.push_back(std::move(cfg));
        }
    }

    std::vector<AssertionReport> reports;
    for (const auto& cfg : configs)
        reports.push_back(session->verifier.sweep(cfg));

    std::string text;
    if (format == Format::json) {
        nlohmann::json j;
        if (reports.size() == 1) {
            j = to_json(reports.front());
        } else {
            j = nlohmann::json::array();
            for (const auto& r : reports)
                j.push_back(to_json(r));
        }
        text = j.dump(2) + "\n";
    } else {
        text = std::string(kSummaryCsvHeader) + "\n";
        for (const auto& r : reports)
            text += summary_csv_row(r) + "\n";
    }
    emit(o.out_path, out, text);

    bool any_violation = false;
    for (const auto& r : reports) {
        any_violation |= !r.passed();
        if (!o.out_path.empty())
            out << r.assertion << ' ' << kernel_label(r.kernels) << ": checked " << r.checked << ", skipped "
                << r.skipped << ", violations " << r.violation_count << '\n';
    }
    return any_violation ? kExitViolation : kExitOk;
}

int cmd_tabulate(const CommonOptions& o, std::ostream& out)
{
    if (o.assertions.size() != 1)
        throw UsageError("tabulate takes exactly one --assertion");
    if (o.min_n < 1 || o.min_n > o.max_n)
        throw UsageError("empty range [" + std::to_string(o.min_n) + ", " + std::to_string(o.max_n) + "]");
    if (resolve_format(o.format.empty() && o.out_path.empty() ? "csv" : o.format, o.out_path) != Format::csv)
        throw UsageError("tabulate writes csv only");
    const AssertionId id = parse_assertion(o.assertions.front());

    auto session = open_session(o.max_n, o.kernels);
    std::ostringstream text;
    text << kTabulateCsvHeader << '\n';
    for (const auto& sel : selections_for(id, o.kernels)) {
        SweepConfig cfg;
        cfg.assertion = id;
        cfg.kernels = sel;
        cfg.max_n = o.max_n;
        cfg.policy = o.policy();
        session->verifier.validate(cfg);
        const std::string label = kernel_label(sel);
        session->verifier.walk(cfg, o.min_n, o.max_n,
                               [&](std::uint64_t, std::span<const BoundCheck> checks, std::string_view) {
                                   for (const auto& c : checks)
                                       text << tabulate_csv_row(c, c.tag.empty() ? std::string_view(label) : c.tag)
                                            << '\n';
                               });
    }
    emit(o.out_path, out, text.str());
    return kExitOk;
}

int cmd_extremal(const CommonOptions& o, std::ostream& out)
{
    if (o.assertions.size() != 1)
        throw UsageError("extremal takes exactly one --assertion");
    if (o.max_n < 2)
        throw UsageError("--max must be at least 2");
    const Format format = resolve_format(o.format, o.out_path);
    const AssertionId id = parse_assertion(o.assertions.front());
    const auto sels = selections_for(id, o.kernels);
    if (sels.size() != 1)
        throw UsageError("extremal takes a single kernel selection");

    auto session = open_session(o.max_n, o.kernels);
    SweepConfig cfg;
    cfg.assertion = id;
    cfg.kernels = sels.front();
    cfg.max_n = o.max_n;
    cfg.policy = o.policy();
    cfg.workers = std::max(1u, o.workers);
    session->verifier.validate(cfg);
    const auto witnesses = session->verifier.find_extremal(cfg);

    std::string text;
    if (format == Format::json) {
        nlohmann::json j;
        j["assertion"] = std::string(to_string(id));
        j["kernels"] = cfg.kernels;
        j["range"] = nlohmann::json::array({2, o.max_n});
        j["witnesses"] = witnesses;
        if (!witnesses.empty()) {
            const auto checks = session->verifier.evaluate(cfg, witnesses.front(), nullptr);
            const auto it = std::ranges::find_if(checks, [](const BoundCheck& c) { return !c.report_only; });
            j["min_slack"] = it->slack;
            j["extremal_lhs"] = it->lhs;
        } else {
            j["min_slack"] = nullptr;
            j["extremal_lhs"] = nullptr;
        }
        text = j.dump(2) + "\n";
    } else {
        text = "n\n";
        for (auto n : witnesses)
            text += std::to_string(n) + "\n";
    }
    emit(o.out_path, out, text);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Evaluate and verify extremal bounds for strongly additive and multiplicative functions",
                 "extremal-arith"};
    app.require_subcommand(1);

    CommonOptions o;

    auto* verify = app.add_subcommand("verify", "sweep assertions over [2, max] and report violations");
    verify->add_option("--assertion", o.assertions, "assertion id (repeatable; all when omitted)");
    verify->add_option("--kernel", o.kernels, "kernel id (repeatable; defaults per assertion)");
    verify->add_option("--max", o.max_n, "largest n swept");
    verify->add_option("--workers", o.workers, "worker threads");
    verify->add_option("--violation-cap", o.violation_cap, "violations listed per report");
    verify->add_option("--witness-cap", o.witness_cap, "equality witnesses listed per report");
    add_tolerance_flags(verify, o);
    add_output_flags(verify, o);

    auto* tabulate = app.add_subcommand("tabulate", "per-n csv of both sides of a bound");
    tabulate->add_option("--assertion", o.assertions, "assertion id")->required();
    tabulate->add_option("--kernel", o.kernels, "kernel id (repeatable)");
    tabulate->add_option("--min", o.min_n, "smallest n");
    tabulate->add_option("--max", o.max_n, "largest n")->required();
    add_tolerance_flags(tabulate, o);
    add_output_flags(tabulate, o);

    auto* extremal = app.add_subcommand("extremal", "all n attaining the minimum slack");
    extremal->add_option("--assertion", o.assertions, "assertion id")->required();
    extremal->add_option("--kernel", o.kernels, "kernel id (repeatable for a5c/a6c)");
    extremal->add_option("--max", o.max_n, "largest n");
    extremal->add_option("--workers", o.workers, "worker threads");
    add_tolerance_flags(extremal, o);
    add_output_flags(extremal, o);

    auto* examples = app.add_subcommand("worked-examples", "reproduce every worked example");
    examples->alias("paper-examples");
    examples->add_option("--max", o.max_n, "largest n");
    examples->add_option("--workers", o.workers, "worker threads");

    std::vector<const char*> argv{"extremal-arith"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*verify)
            return cmd_verify(o, out);
        if (*tabulate)
            return cmd_tabulate(o, out);
        if (*extremal)
            return cmd_extremal(o, out);
        if (o.max_n < 2)
            throw UsageError("--max must be at least 2");
        auto session = open_session(o.max_n, {});
        return run_worked_examples(session->verifier, o.max_n, std::max(1u, o.workers), out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << app.help();
    } catch (const MisuseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const LookupError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const RangeError& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace extremal
