// Reproduces each worked example as a labeled block. Theorem-class blocks
// assert an inequality or an equality set and decide the exit code;
// report-class blocks print empirical extremes of ratios whose constants are
// not pinned down.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "extremal/arith.hpp"
#include "extremal/cli.hpp"
#include "extremal/report.hpp"

namespace extremal {

namespace {

class Block {
public:
    Block(std::ostream& out, std::string name, bool theorem) : out_(out), theorem_(theorem)
    {
        out_ << "[" << name << "] " << (theorem ? "theorem" : "report") << '\n';
    }

    void line(const std::string& text) { out_ << "  " << text << '\n'; }

    void require(bool ok, const std::string& what)
    {
        line(what + (ok ? "" : "  <-- FAILED"));
        passed_ &= ok;
    }

    bool finish()
    {
        out_ << "  result: " << (theorem_ ? (passed_ ? "PASS" : "FAIL") : "REPORT") << "\n\n";
        return !theorem_ || passed_;
    }

private:
    std::ostream& out_;
    bool theorem_;
    bool passed_ = true;
};

std::vector<std::uint64_t> powers_up_to(std::uint64_t base, std::uint64_t max_n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = base; v <= max_n; v *= base)
        out.push_back(v);
    return out;
}

std::string join(const std::vector<std::uint64_t>& xs, std::size_t limit = 12)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size() && i < limit; ++i)
        s += (i ? " " : "") + std::to_string(xs[i]);
    if (xs.size() > limit)
        s += " ... (" + std::to_string(xs.size()) + " total)";
    return s;
}

struct Runner {
    const Verifier& v;
    std::uint64_t max_n;
    unsigned workers;

    SweepConfig config(AssertionId id, std::vector<std::string> kernels) const
    {
        SweepConfig cfg;
        cfg.assertion = id;
        cfg.kernels = std::move(kernels);
        cfg.max_n = max_n;
        cfg.workers = workers;
        return cfg;
    }

    AssertionReport sweep(AssertionId id, std::vector<std::string> kernels) const
    {
        return v.sweep(config(id, std::move(kernels)));
    }

    void require_sweep(Block& b, AssertionId id, std::vector<std::string> kernels) const
    {
        const auto r = sweep(id, kernels);
        b.require(r.passed(), std::string(to_string(id)) + " with " + kernel_label(kernels) + ": " +
                                  std::to_string(r.checked) + " checked, " + std::to_string(r.skipped) +
                                  " skipped, " + std::to_string(r.violation_count) + " violations");
    }

    // Witness set must be exactly the powers of `base` with lhs equal to `value`.
    void require_minimum(Block& b, AssertionId id, std::vector<std::string> kernels, std::uint64_t base,
                         double value) const
    {
        const auto cfg = config(id, kernels);
        const auto witnesses = v.find_extremal(cfg);
        const auto expected = powers_up_to(base, max_n);
        double attained = std::nan("");
        if (!witnesses.empty())
            attained = v.evaluate(cfg, witnesses.front(), nullptr).front().lhs;
        b.require(std::abs(attained - value) <= 1e-12,
                  "minimum of " + kernel_label(kernels) + ": " + format_real(attained) + " (expected " +
                      format_real(value) + ")");
        b.require(witnesses == expected, "attained at: " + join(witnesses) + " (expected powers of " +
                                             std::to_string(base) + ")");
    }
};

}  // namespace

int run_worked_examples(const Verifier& v, std::uint64_t max_n, unsigned workers, std::ostream& out)
{
    const Runner run{v, max_n, workers};
    const PrimeTable& table = v.table();
    bool all_ok = true;
    out << "worked examples over n in [2, " << max_n << "]\n\n";

    {
        Block b(out, "ln-phi-three-estimates", true);
        // sum ln phi(p) <= ln phi(n) <= omega(n) sup ln phi(x), against the
        // crude sum over all primes up to n.
        SupTracker sup(table, [](const Factorization& x) { return std::log(static_cast<double>(euler_phi(x))); });
        double all_primes = 0.0;
        std::uint64_t chain_failures = 0;
        std::uint64_t sup_tighter = 0;
        std::uint64_t counted = 0;
        for (std::uint64_t n = 2; n <= max_n; ++n) {
            const auto f = table.factorize(n);
            if (table.is_prime(n))
                all_primes += std::log(static_cast<double>(n - 1));
            const double s = sup.advance(n);
            if (n < 3)
                continue;
            double lhs = 0.0;
            for (const auto& pp : f)
                lhs += std::log(static_cast<double>(pp.p - 1));
            const double exact = std::log(static_cast<double>(euler_phi(f)));
            const double via_sup = omega(f) * s;
            const double tol = 1e-12 * std::max(1.0, std::abs(via_sup)) + 1e-12;
            if (lhs > exact + tol || exact > via_sup + tol || exact > std::log(static_cast<double>(n)) + tol)
                ++chain_failures;
            sup_tighter += via_sup <= all_primes ? 1 : 0;
            ++counted;
        }
        b.require(chain_failures == 0, "sum ln phi(p) <= ln phi(n) <= min(ln n, omega(n) sup ln phi(x)) failed at " +
                                           std::to_string(chain_failures) + " of " + std::to_string(counted) + " n");
        b.line("omega(n) sup ln phi(x) <= sum_{p<=n} ln(p-1) at " + std::to_string(sup_tighter) + " of " +
               std::to_string(counted) + " n");
        all_ok &= b.finish();
    }
    {
        Block b(out, "ln-n-over-phi-decreasing", true);
        run.require_sweep(b, AssertionId::a2, {"ln_n_over_phi"});
        run.require_sweep(b, AssertionId::a2, {"inv_p_minus_1"});
        double worst = 0.0;
        for (std::uint64_t n = 2; n <= max_n; ++n) {
            double diff = 0.0;
            for (const auto& pp : table.factorize(n))
                diff += std::log1p(1.0 / static_cast<double>(pp.p - 1)) - 1.0 / static_cast<double>(pp.p - 1);
            worst = std::max(worst, std::abs(diff));
        }
        b.line("max |sum ln(p/(p-1)) - sum 1/(p-1)| = " + format_real(worst));
        all_ok &= b.finish();
    }
    {
        Block b(out, "phi-product-envelope", true);
        run.require_sweep(b, AssertionId::a3, {"phi"});
        std::uint64_t failures = 0;
        double c = 0.0;
        std::uint64_t c_at = 0;
        for (std::uint64_t n = 3; n <= max_n; ++n) {
            const auto f = table.factorize(n);
            double log_prod = 0.0;
            for (const auto& pp : f)
                log_prod += std::log(static_cast<double>(pp.p - 1));
            const double nd = static_cast<double>(n);
            if (log_prod > omega(f) * std::log(nd) + 1e-12)
                ++failures;
            const double ratio = omega(f) * std::log(std::log(nd)) / std::log(nd);
            if (ratio > c) {
                c = ratio;
                c_at = n;
            }
        }
        b.require(failures == 0, "prod phi(p) <= n^omega(n) failed at " + std::to_string(failures) + " n");
        b.line("empirical max omega(n) ln ln n / ln n = " + format_real(c) + " at n = " + std::to_string(c_at));
        all_ok &= b.finish();
    }
    {
        Block b(out, "n-over-phi-product", true);
        run.require_sweep(b, AssertionId::a4, {"n_over_phi"});
        std::uint64_t identity_failures = 0;
        double ec = 0.0;
        std::uint64_t ec_at = 0;
        for (std::uint64_t n = 2; n <= max_n; ++n) {
            const auto f = table.factorize(n);
            unsigned __int128 left = n;
            unsigned __int128 right = euler_phi(f);
            for (const auto& pp : f) {
                left *= pp.p - 1;
                right *= pp.p;
            }
            identity_failures += left != right ? 1 : 0;
            if (n >= 3) {
                const double nd = static_cast<double>(n);
                const double ratio = nd / static_cast<double>(euler_phi(f)) / std::log(std::log(nd));
                if (ratio > ec) {
                    ec = ratio;
                    ec_at = n;
                }
            }
        }
        b.require(identity_failures == 0, "n * prod(p-1) == phi(n) * prod p failed at " +
                                              std::to_string(identity_failures) + " n");
        b.line("empirical max (n/phi(n)) / ln ln n = " + format_real(ec) + " at n = " + std::to_string(ec_at));
        all_ok &= b.finish();
    }

    const auto maxord = run.sweep(AssertionId::maxord, {});
    auto diag = [&](const std::string& key) {
        const auto it = maxord.diagnostics.find(key);
        if (it == maxord.diagnostics.end())
            return std::string("n/a");
        return format_real(it->second) + " at n = " +
               std::to_string(static_cast<std::uint64_t>(maxord.diagnostics.at(key + "_n")));
    };
    {
        Block b(out, "phi-lower-estimate", false);
        b.line("min phi(n) ln ln n / n = " + diag("phi_lnln_ratio_min"));
        b.line("min phi(n) ln ln n / n over n >= 5041 = " + diag("phi_lnln_ratio_min_large_n"));
        b.line("reference: e^-gamma = " + format_real(std::exp(-Constants::euler_gamma)));
        all_ok &= b.finish();
    }
    {
        Block b(out, "ratio1-minimum", true);
        run.require_sweep(b, AssertionId::a5, {"ratio1"});
        run.require_minimum(b, AssertionId::a5, {"ratio1"}, 3, 6.5);
        all_ok &= b.finish();
    }
    {
        Block b(out, "ratio2-minimum", true);
        run.require_sweep(b, AssertionId::a6, {"ratio2"});
        run.require_minimum(b, AssertionId::a6, {"ratio2"}, 5, 31.0 / 3.0);
        all_ok &= b.finish();
    }
    {
        Block b(out, "ln-phi-additive", true);
        run.require_sweep(b, AssertionId::a7, {"ln_phi"});
        run.require_minimum(b, AssertionId::a5, {"ln_phi"}, 2, 0.0);
        all_ok &= b.finish();
    }
    {
        Block b(out, "ln-tau-over-n", true);
        run.require_sweep(b, AssertionId::a7, {"ln_tau_over_id"});
        std::uint64_t lower_failures = 0;
        std::uint64_t prime_equalities = 0;
        std::uint64_t primes = 0;
        const auto cfg = run.config(AssertionId::a7, {"ln_tau_over_id"});
        v.walk(cfg, 2, max_n, [&](std::uint64_t n, std::span<const BoundCheck> checks, std::string_view) {
            const double floor = std::log(2.0 / static_cast<double>(n));
            for (const auto& c : checks) {
                lower_failures += c.rhs < floor - 1e-12 ? 1 : 0;
                if (table.is_prime(n)) {
                    ++primes;
                    prime_equalities += std::abs(c.lhs - floor) <= 1e-12 && std::abs(c.slack) <= 1e-12 ? 1 : 0;
                }
            }
        });
        b.require(lower_failures == 0, "ln(tau(n)/n) >= ln(2/n) failed at " + std::to_string(lower_failures) + " n");
        b.require(prime_equalities == primes, "equality at primes: " + std::to_string(prime_equalities) + " of " +
                                                  std::to_string(primes));
        all_ok &= b.finish();
    }
    {
        Block b(out, "ln-tau-over-p-upper", true);
        run.require_sweep(b, AssertionId::a2, {"ln_tau_over_p"});
        const auto r = run.sweep(AssertionId::a2, {"ln_tau_over_p"});
        b.line("max p_omega(n) / ln n = " + format_real(r.diagnostics.at("max_pw_over_ln_n")));
        all_ok &= b.finish();
    }
    {
        Block b(out, "ln-phi-ln-sigma-sum", true);
        run.require_sweep(b, AssertionId::a5c, {"ln_phi", "ln_sigma"});
        run.require_minimum(b, AssertionId::a5c, {"ln_phi", "ln_sigma"}, 2, std::log(3.0));
        all_ok &= b.finish();
    }
    {
        Block b(out, "sigma-k-product", true);
        for (unsigned k = 0; k <= 3; ++k)
            run.require_sweep(b, AssertionId::a8, {"sigma_k:" + std::to_string(k)});
        all_ok &= b.finish();
    }
    {
        Block b(out, "sigma-k-zeta", false);
        b.line("max sigma_2(n) / (n^2 zeta(2)) = " + diag("sigma_zeta_k2_ratio_max"));
        b.line("max sigma_3(n) / (n^3 zeta(3)) = " + diag("sigma_zeta_k3_ratio_max"));
        all_ok &= b.finish();
    }
    {
        Block b(out, "sigma-gronwall", true);
        if (max_n >= kGronwallThreshold) {
            b.require(maxord.passed(), "sigma(n) <= e^gamma n ln ln n for 5041 <= n: " +
                                           std::to_string(maxord.checked) + " checked, " +
                                           std::to_string(maxord.violation_count) + " violations");
            b.line("max sigma(n) / (e^gamma n ln ln n) = " + diag("sigma_gronwall_ratio_max"));
        } else {
            b.line("range ends below 5041; nothing to check");
        }
        all_ok &= b.finish();
    }
    {
        Block b(out, "tau-max-order", true);
        run.require_sweep(b, AssertionId::a8, {"tau"});
        b.line("max ln tau(n) ln ln n / (ln 2 ln n) = " + diag("tau_exponent_ratio_max"));
        all_ok &= b.finish();
    }
    {
        Block b(out, "tau-primorial-envelope", true);
        const auto r = run.sweep(AssertionId::a4, {"two"});
        b.require(r.passed() && r.equality_count == r.checked,
                  "2^omega(n) <= exp(sum_{p<=p_omega} ln 2): " + std::to_string(r.equality_count) + " of " +
                      std::to_string(r.checked) + " n at equality");
        all_ok &= b.finish();
    }
    {
        Block b(out, "sigma-k-minimum", true);
        for (unsigned k = 1; k <= 3; ++k) {
            const std::string id = "sigma_k:" + std::to_string(k);
            run.require_sweep(b, AssertionId::a6, {id});
            run.require_minimum(b, AssertionId::a6, {id}, 2, std::pow(2.0, k) + 1.0);
        }
        all_ok &= b.finish();
    }
    {
        Block b(out, "phi-sigma2-product", true);
        run.require_sweep(b, AssertionId::a6c, {"phi", "sigma2"});
        run.require_minimum(b, AssertionId::a6c, {"phi", "sigma2"}, 2, 5.0);
        all_ok &= b.finish();
    }

    out << (all_ok ? "all theorem-class examples passed\n" : "some theorem-class examples FAILED\n");
    return all_ok ? kExitOk : kExitViolation;
}

}  // namespace extremal
