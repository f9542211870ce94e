// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "json.hpp"

#include "extremal/arith.hpp"
#include "extremal/errors.hpp"
#include "extremal/report.hpp"
#include "extremal/verify.hpp"

using namespace extremal;

namespace {

constexpr std::uint64_t kMax = 1'000'000;

struct Context {
    PrimeTable table{kMax};
    KernelRegistry registry{table};
    Constants constants;
    Verifier verifier{table, registry, constants};
};

SweepConfig config(AssertionId id, std::vector<std::string> ks, std::uint64_t max_n, unsigned workers)
{
    SweepConfig cfg;
    cfg.assertion = id;
    cfg.kernels = std::move(ks);
    cfg.max_n = max_n;
    cfg.workers = workers;
    return cfg;
}

unsigned hw_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

// AC1: every default pairing over [2, 10^6] with no violations, within the time budget.
bool ac1(Context& c, std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t pairings = 0, violations = 0;
    for (const auto id : all_assertions()) {
        if (id == AssertionId::maxord)
            continue;
        for (const auto& ks : default_kernel_selections(id)) {
            const auto r = c.verifier.sweep(config(id, ks, kMax, hw_workers()));
            ++pairings;
            violations += r.violation_count;
            if (!r.passed())
                detail += " " + r.assertion + "/" + kernel_label(ks);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = std::to_string(pairings) + " pairings, " + std::to_string(violations) + " violations, " +
             std::to_string(secs) + " s" + detail;
    return violations == 0 && secs <= 120.0;
}

// AC2: n/phi(n) = prod p/(p-1) as an exact rational identity.
bool ac2(Context& c, std::string& detail)
{
    std::uint64_t bad = 0;
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        const auto f = c.table.factorize(n);
        unsigned __int128 left = n, right = euler_phi(f);
        for (const auto& pp : f) {
            left *= pp.p - 1;
            right *= pp.p;
        }
        bad += left != right;
    }
    detail = std::to_string(bad) + " mismatches in [1, 1e5]";
    return bad == 0;
}

std::vector<std::uint64_t> powers(std::uint64_t p, std::uint64_t max_n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = p; q <= max_n; q *= p)
        out.push_back(q);
    return out;
}

// AC3: extremal sets and minimum values.
bool ac3(Context& c, std::string& detail)
{
    struct Case {
        AssertionId id;
        std::string kernel;
        std::uint64_t base;
        double minimum;
    };
    const std::vector<Case> cases{{AssertionId::a5, "ratio1", 3, 6.5},
                                  {AssertionId::a6, "ratio2", 5, 31.0 / 3.0},
                                  {AssertionId::a6, "sigma_k:1", 2, 3.0},
                                  {AssertionId::a6, "sigma_k:2", 2, 5.0},
                                  {AssertionId::a6, "sigma_k:3", 2, 9.0}};
    bool ok = true;
    for (const auto& k : cases) {
        const auto cfg = config(k.id, {k.kernel}, kMax, hw_workers());
        const auto set = c.verifier.find_extremal(cfg);
        const auto checks = c.verifier.evaluate(cfg, set.empty() ? 2 : set.front(), nullptr);
        const bool this_ok = set == powers(k.base, kMax) && !checks.empty() &&
                             std::abs(checks.front().lhs - k.minimum) <= 1e-12 &&
                             std::abs(checks.front().slack) <= 1e-12;
        if (!this_ok)
            detail += " " + k.kernel;
        ok &= this_ok;
    }
    detail = std::to_string(cases.size()) + " kernels" + (ok ? "" : ", mismatched:" + detail);
    return ok;
}

// AC4: theta(p_omega(n)) <= ln n and a finite p_omega / ln n maximum.
bool ac4(Context& c, std::string& detail)
{
    std::uint64_t bad = 0;
    double worst = -1e300;
    for (std::uint64_t n = 2; n <= kMax; ++n) {
        const auto w = c.table.factorize(n).size();
        const double gap = c.table.chebyshev_theta(double(c.table.nth_prime(w))) - std::log(double(n));
        worst = std::max(worst, gap);
        bad += gap > 1e-9;
    }
    const auto r = c.verifier.sweep(config(AssertionId::a2, {"n_over_phi"}, kMax, hw_workers()));
    const double ratio = r.diagnostics.at("max_pw_over_ln_n");
    detail = std::to_string(bad) + " failures, max theta - ln n = " + format_real(worst) +
             ", max p_w / ln n = " + format_real(ratio);
    return bad == 0 && std::isfinite(ratio);
}

// AC5: ln phi(n) <= omega(n) sup ln phi(x) on [3, 10^6].
bool ac5(Context& c, std::string& detail)
{
    std::uint64_t bad = 0;
    double sup = -1e300;
    for (std::uint64_t n = 2; n <= kMax; ++n) {
        const auto f = c.table.factorize(n);
        const double v = std::log(double(euler_phi(f)));
        sup = std::max(sup, v);
        if (n >= 3 && v > double(omega(f)) * sup + 1e-12 * std::max(1.0, std::abs(double(omega(f)) * sup)) + 1e-12)
            ++bad;
    }
    detail = std::to_string(bad) + " failures in [3, 1e6]";
    return bad == 0;
}

// AC6: fast path against the brute-force oracle on random triples.
bool ac6(Context& c, std::string& detail)
{
    std::vector<std::pair<AssertionId, std::vector<std::string>>> pairings;
    for (const auto id : all_assertions())
        for (const auto& ks : default_kernel_selections(id))
            pairings.emplace_back(id, ks);
    std::mt19937_64 rng(0x5eed2024);
    std::uniform_int_distribution<std::size_t> pick(0, pairings.size() - 1);
    std::uniform_int_distribution<std::uint64_t> number(2, 100'000);
    const TolerancePolicy policy;
    int mismatches = 0, compared = 0, skipped = 0;
    for (int i = 0; i < 500; ++i) {
        const auto& [id, ks] = pairings[pick(rng)];
        const std::uint64_t n = number(rng);
        std::vector<const PrimeKernel*> pks;
        const PrimePowerKernel* ppk = nullptr;
        if (uses_prime_power_kernels(id))
            ppk = &c.registry.prime_power_kernel(ks.front());
        else
            for (const auto& k : ks)
                pks.push_back(&c.registry.prime_kernel(k));
        std::string fast_skip, slow_skip;
        auto fast = c.verifier.evaluate(config(id, ks, 100'000, 1), n, &fast_skip);
        BoundCheck slow;
        try {
            slow = brute_force_oracle(id, pks, ppk, n, policy);
        } catch (const NotApplicable& e) {
            slow_skip = std::string(e.reason());
        }
        if (fast_skip != slow_skip) {
            ++mismatches;
            continue;
        }
        if (!fast_skip.empty()) {
            ++skipped;
            continue;
        }
        ++compared;
        const BoundCheck* f = nullptr;
        for (const auto& check : fast)
            if (!check.report_only)
                f = &check;
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); };
        if (!f || f->holds != slow.holds || f->direction != slow.direction || !close(f->lhs, slow.lhs) ||
            !close(f->rhs, slow.rhs))
            ++mismatches;
    }
    detail = "500 triples, " + std::to_string(compared) + " compared, " + std::to_string(skipped) +
             " skipped by both, " + std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
}

// AC7: maximal-order sweep with the participating check passing.
bool ac7(Context& c, std::string& detail)
{
    const auto r = c.verifier.sweep(config(AssertionId::maxord, {}, kMax, hw_workers()));
    bool finite = true;
    for (const auto& [name, v] : r.diagnostics)
        finite &= std::isfinite(v);
    detail = std::to_string(r.checked) + " checked, " + std::to_string(r.violation_count) +
             " violations, sigma/(e^gamma n ln ln n) max " + format_real(r.diagnostics.at("sigma_gronwall_ratio_max"));
    return r.passed() && finite && r.checked == kMax - kGronwallThreshold + 1;
}

// AC8: identical JSON for 1, 2 and 8 workers.
bool ac8(Context& c, std::string& detail)
{
    int differing = 0, total = 0;
    for (const auto id : all_assertions()) {
        for (const auto& ks : default_kernel_selections(id)) {
            const std::uint64_t max_n = 200'000;
            const auto base = to_json(c.verifier.sweep(config(id, ks, max_n, 1))).dump();
            for (unsigned w : {2u, 8u}) {
                ++total;
                differing += to_json(c.verifier.sweep(config(id, ks, max_n, w))).dump() != base;
            }
        }
    }
    detail = std::to_string(total) + " comparisons, " + std::to_string(differing) + " differ";
    return differing == 0;
}

}  // namespace

int main()
{
    Context c;
    const std::vector<std::pair<const char*, std::function<bool(Context&, std::string&)>>> criteria{
        {"AC1 default pairings over [2, 1e6]", ac1}, {"AC2 n/phi(n) product identity", ac2},
        {"AC3 extremal sets", ac3},                  {"AC4 primorial theta bound", ac4},
        {"AC5 ln phi omega-sup bound", ac5},         {"AC6 oracle agreement", ac6},
        {"AC7 maximal-order sweep", ac7},            {"AC8 worker-count determinism", ac8}};
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(c, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        failures += !ok;
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
