#include "extremal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

#include "extremal/arith.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

struct ResolvedKernels {
    std::vector<const PrimeKernel*> prime;
    const PrimePowerKernel* prime_power = nullptr;
};

ResolvedKernels resolve(const KernelRegistry& registry, const SweepConfig& cfg)
{
    ResolvedKernels r;
    const auto name = std::string(to_string(cfg.assertion));
    if (cfg.assertion == AssertionId::maxord) {
        if (!cfg.kernels.empty())
            throw MisuseError("maxord takes no kernel");
        return r;
    }
    if (uses_prime_power_kernels(cfg.assertion)) {
        if (cfg.kernels.size() != 1)
            throw MisuseError(name + " takes exactly one prime-power kernel");
        r.prime_power = &registry.prime_power_kernel(cfg.kernels.front());
        return r;
    }
    for (const auto& id : cfg.kernels)
        r.prime.push_back(&registry.prime_kernel(id));
    require_hypotheses(cfg.assertion, r.prime);
    return r;
}

// Sweep state for one contiguous chunk of n.
class ChunkEvaluator {
public:
    ChunkEvaluator(const Verifier& v, const SweepConfig& cfg, const ResolvedKernels& ks)
        : v_(v), cfg_(cfg), ks_(ks)
    {
        if (cfg.assertion == AssertionId::a1) {
            const PrimeKernel* k = ks.prime.front();
            tracker_.emplace(v.table(), [k](const Factorization& x) { return k->extend(x); });
        } else if (cfg.assertion == AssertionId::a3) {
            const PrimeKernel* k = ks.prime.front();
            tracker_.emplace(v.table(), [k](const Factorization& x) {
                const double g = k->extend(x);
                return g > 0.0 ? std::log(g) : kMinusInf;
            });
        }
    }

    // Appends the checks for n to out; returns a skip reason, empty when n was checked.
    std::string_view run(const Factorization& f, std::vector<BoundCheck>& out)
    {
        const std::uint64_t n = f.n();
        const auto& policy = cfg_.policy;
        try {
            switch (cfg_.assertion) {
            case AssertionId::a1: out.push_back(bound_a1(f, *ks_.prime[0], tracker_->advance(n), policy)); break;
            case AssertionId::a2: out.push_back(bound_a2(f, *ks_.prime[0], v_.table(), policy)); break;
            case AssertionId::a3: out.push_back(bound_a3(f, *ks_.prime[0], tracker_->advance(n), policy)); break;
            case AssertionId::a4: out.push_back(bound_a4(f, *ks_.prime[0], v_.table(), policy)); break;
            case AssertionId::a5: out.push_back(bound_a5(f, *ks_.prime[0], policy)); break;
            case AssertionId::a6: out.push_back(bound_a6(f, *ks_.prime[0], policy)); break;
            case AssertionId::a5c: out.push_back(bound_a5_corollary(f, ks_.prime, policy)); break;
            case AssertionId::a6c: out.push_back(bound_a6_corollary(f, ks_.prime, policy)); break;
            case AssertionId::a7: out.push_back(bound_a7(f, *ks_.prime_power, policy)); break;
            case AssertionId::a8: out.push_back(bound_a8(f, *ks_.prime_power, policy)); break;
            case AssertionId::maxord: {
                auto checks = maximal_order_checks(f, v_.constants(), policy);
                const bool participating =
                    std::ranges::any_of(checks, [](const BoundCheck& c) { return !c.report_only; });
                out.insert(out.end(), checks.begin(), checks.end());
                if (!participating)
                    return "below_threshold";
                break;
            }
            }
        } catch (const NotApplicable& e) {
            return e.reason();
        } catch (const OverflowError&) {
            return "overflow";
        }
        return {};
    }

private:
    const Verifier& v_;
    const SweepConfig& cfg_;
    const ResolvedKernels& ks_;
    std::optional<SupTracker> tracker_;
};

struct Extreme {
    double value = 0.0;
    std::uint64_t n = 0;
    bool is_max = true;
    bool set = false;

    void offer(double v, std::uint64_t at)
    {
        if (!set || (is_max ? v > value : v < value)) {
            value = v;
            n = at;
            set = true;
        }
    }

    // `later` covers larger n, so ties keep the current argument.
    void merge(const Extreme& later)
    {
        if (later.set)
            offer(later.value, later.n);
    }
};

struct Partial {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::map<std::string, std::uint64_t> skip_reasons;
    std::vector<Violation> violations;
    std::uint64_t violation_count = 0;
    std::optional<SlackPoint> min_slack;
    std::vector<std::uint64_t> witnesses;
    std::uint64_t equality_count = 0;
    std::map<std::string, Extreme> diagnostics;

    void diag(const std::string& name, bool is_max, double v, std::uint64_t n)
    {
        auto [it, inserted] = diagnostics.try_emplace(name);
        if (inserted)
            it->second.is_max = is_max;
        it->second.offer(v, n);
    }

    void merge(Partial&& later, const SweepConfig& cfg)
    {
        checked += later.checked;
        skipped += later.skipped;
        for (const auto& [reason, count] : later.skip_reasons)
            skip_reasons[reason] += count;
        violation_count += later.violation_count;
        for (auto& v : later.violations)
            if (violations.size() < cfg.violation_cap)
                violations.push_back(v);
        if (later.min_slack && (!min_slack || later.min_slack->slack < min_slack->slack))
            min_slack = later.min_slack;
        equality_count += later.equality_count;
        for (auto w : later.witnesses)
            if (witnesses.size() < cfg.witness_cap)
                witnesses.push_back(w);
        for (const auto& [name, e] : later.diagnostics) {
            auto [it, inserted] = diagnostics.try_emplace(name, e);
            if (!inserted)
                it->second.merge(e);
        }
    }
};

void record_diagnostics(Partial& part, const Verifier& v, AssertionId id, const Factorization& f,
                        const BoundCheck& c)
{
    const std::uint64_t n = f.n();
    if ((id == AssertionId::a2 || id == AssertionId::a4) && !f.empty()) {
        if (c.diagnostic)
            part.diag("max_pw_over_ln_n", true, *c.diagnostic, n);
        const double theta = v.table().theta_prefix()[f.size() - 1];
        part.diag("max_theta_pw_minus_ln_n", true, theta - std::log(static_cast<double>(n)), n);
    }
    if (id != AssertionId::maxord)
        return;
    if (c.tag == "sigma_zeta_k2" || c.tag == "sigma_zeta_k3" || c.tag == "sigma_gronwall")
        part.diag(std::string(c.tag) + "_ratio_max", true, c.lhs / c.rhs, n);
    else if (c.tag == "tau_max_order")
        part.diag("tau_exponent_ratio_max", true, std::log(c.lhs) / std::log(c.rhs), n);
    else if (c.tag == "phi_min_order") {
        part.diag("phi_lnln_ratio_min", false, c.lhs / c.rhs, n);
        if (n >= kGronwallThreshold)
            part.diag("phi_lnln_ratio_min_large_n", false, c.lhs / c.rhs, n);
    }
}

// Splits [2, max_n] into `workers` contiguous chunks and runs fn(lo, hi) on
// each, returning results in chunk order.
template <typename Fn>
auto run_chunks(const SweepConfig& cfg, Fn fn)
{
    using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
    const std::uint64_t total = cfg.max_n - 1;
    const std::uint64_t chunks = std::clamp<std::uint64_t>(cfg.workers, 1, total);
    std::vector<Result> results(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    auto bounds = [&](std::uint64_t i) {
        const std::uint64_t lo = 2 + total * i / chunks;
        const std::uint64_t hi = 1 + total * (i + 1) / chunks;
        return std::pair{lo, hi};
    };
    auto work = [&](std::uint64_t i) {
        try {
            const auto [lo, hi] = bounds(i);
            results[i] = fn(lo, hi);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (chunks == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(chunks);
        for (std::uint64_t i = 0; i < chunks; ++i)
            threads.emplace_back(work, i);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

void check_config(const PrimeTable& table, const SweepConfig& cfg)
{
    if (cfg.max_n < 2)
        throw DomainError("sweep range must include n = 2");
    if (cfg.max_n > table.limit())
        throw RangeError("sweep bound " + std::to_string(cfg.max_n) + " exceeds prime table limit " +
                         std::to_string(table.limit()));
}

}  // namespace

std::vector<std::vector<std::string>> default_kernel_selections(AssertionId id)
{
    using S = std::vector<std::vector<std::string>>;
    switch (id) {
    case AssertionId::a1:
    case AssertionId::a3: return S{{"ln_phi"}, {"ln_sigma"}, {"phi"}, {"sigma2"}, {"ratio1"}};
    case AssertionId::a2: return S{{"n_over_phi"}, {"ln_tau_over_p"}, {"inv_p_minus_1"}, {"ln_n_over_phi"}};
    case AssertionId::a4: return S{{"n_over_phi"}, {"inv_p_minus_1"}, {"ln_n_over_phi"}, {"two"}};
    case AssertionId::a5:
        return S{{"ln_phi"}, {"ln_sigma"}, {"phi"},         {"sigma2"},      {"ratio1"},
                 {"ratio2"}, {"sigma_k:1"}, {"sigma_k:2"}, {"sigma_k:3"}};
    case AssertionId::a6:
        return S{{"phi"}, {"sigma2"}, {"ratio1"}, {"ratio2"}, {"sigma_k:1"}, {"sigma_k:2"}, {"sigma_k:3"}};
    case AssertionId::a5c: return S{{"ln_phi", "ln_sigma"}};
    case AssertionId::a6c: return S{{"phi", "sigma2"}};
    case AssertionId::a7: return S{{"ln_phi"}, {"ln_tau_over_id"}};
    case AssertionId::a8:
        return S{{"sigma_k:0"}, {"sigma_k:1"}, {"sigma_k:2"}, {"sigma_k:3"}, {"phi"}, {"tau"}};
    case AssertionId::maxord: return S{{}};
    }
    return {};
}

Verifier::Verifier(const PrimeTable& table, const KernelRegistry& registry, const Constants& constants)
    : table_(table), registry_(registry), constants_(constants)
{
}

void Verifier::validate(const SweepConfig& cfg) const
{
    check_config(table_, cfg);
    resolve(registry_, cfg);
}

AssertionReport Verifier::sweep(const SweepConfig& cfg) const
{
    check_config(table_, cfg);
    const ResolvedKernels ks = resolve(registry_, cfg);

    auto parts = run_chunks(cfg, [&](std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        ChunkEvaluator eval(*this, cfg, ks);
        std::vector<BoundCheck> checks;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            checks.clear();
            const Factorization f = table_.factorize(n);
            const std::string_view skip = eval.run(f, checks);
            if (skip.empty())
                ++part.checked;
            else {
                ++part.skipped;
                ++part.skip_reasons[std::string(skip)];
            }
            for (const auto& c : checks) {
                record_diagnostics(part, *this, cfg.assertion, f, c);
                if (c.report_only)
                    continue;
                if (!c.holds) {
                    ++part.violation_count;
                    if (part.violations.size() < cfg.violation_cap)
                        part.violations.push_back({c.n, c.lhs, c.rhs, c.slack});
                }
                if (!part.min_slack || c.slack < part.min_slack->slack)
                    part.min_slack = SlackPoint{c.n, c.slack};
                if (std::abs(c.slack) <= cfg.policy.abs) {
                    ++part.equality_count;
                    if (part.witnesses.size() < cfg.witness_cap)
                        part.witnesses.push_back(c.n);
                }
            }
        }
        return part;
    });

    Partial total = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i)
        total.merge(std::move(parts[i]), cfg);

    AssertionReport r;
    r.assertion = std::string(to_string(cfg.assertion));
    r.kernels = cfg.kernels;
    r.range_lo = 2;
    r.range_hi = cfg.max_n;
    r.checked = total.checked;
    r.skipped = total.skipped;
    r.skip_reasons = std::move(total.skip_reasons);
    r.violations = std::move(total.violations);
    r.violation_count = total.violation_count;
    r.min_slack = total.min_slack;
    r.equality_witnesses = std::move(total.witnesses);
    r.equality_count = total.equality_count;
    for (const auto& [name, e] : total.diagnostics) {
        r.diagnostics[name] = e.value;
        r.diagnostics[name + "_n"] = static_cast<double>(e.n);
    }
    return r;
}

std::vector<std::uint64_t> Verifier::find_extremal(const SweepConfig& cfg) const
{
    check_config(table_, cfg);
    const ResolvedKernels ks = resolve(registry_, cfg);

    auto parts = run_chunks(cfg, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<SlackPoint> points;
        ChunkEvaluator eval(*this, cfg, ks);
        std::vector<BoundCheck> checks;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            checks.clear();
            eval.run(table_.factorize(n), checks);
            for (const auto& c : checks)
                if (!c.report_only)
                    points.push_back({c.n, c.slack});
        }
        return points;
    });

    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& part : parts)
        for (const auto& pt : part)
            min_slack = std::min(min_slack, pt.slack);
    std::vector<std::uint64_t> out;
    for (const auto& part : parts)
        for (const auto& pt : part)
            if (std::abs(pt.slack - min_slack) <= cfg.policy.abs && (out.empty() || out.back() != pt.n))
                out.push_back(pt.n);
    return out;
}

void Verifier::walk(const SweepConfig& cfg, std::uint64_t lo, std::uint64_t hi, const Visitor& visit) const
{
    if (lo < 1 || lo > hi)
        throw DomainError("empty range");
    if (hi > table_.limit())
        throw RangeError("range exceeds prime table limit");
    const ResolvedKernels ks = resolve(registry_, cfg);
    ChunkEvaluator eval(*this, cfg, ks);
    std::vector<BoundCheck> checks;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        checks.clear();
        const std::string_view skip = eval.run(table_.factorize(n), checks);
        visit(n, checks, skip);
    }
}

std::vector<BoundCheck> Verifier::evaluate(const SweepConfig& cfg, std::uint64_t n, std::string* skip_reason) const
{
    if (n > table_.limit())
        throw RangeError("n exceeds prime table limit");
    const ResolvedKernels ks = resolve(registry_, cfg);
    ChunkEvaluator eval(*this, cfg, ks);
    std::vector<BoundCheck> checks;
    const std::string_view skip = eval.run(table_.factorize(n), checks);
    if (skip_reason)
        *skip_reason = std::string(skip);
    return checks;
}

}  // namespace extremal
