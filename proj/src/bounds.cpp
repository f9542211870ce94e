#include "extremal/bounds.hpp"

#include <array>
#include <cmath>
#include <string>

#include "extremal/arith.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr std::array kAssertions{AssertionId::a1, AssertionId::a2, AssertionId::a3, AssertionId::a4,
                                 AssertionId::a5, AssertionId::a6, AssertionId::a5c, AssertionId::a6c,
                                 AssertionId::a7, AssertionId::a8, AssertionId::maxord};

BoundCheck identity_check(AssertionId id, double identity, Direction dir, const TolerancePolicy& policy)
{
    return make_check(id, 1, identity, identity, dir, policy);
}

void require_one(const PrimeKernel& k, AssertionId id)
{
    const auto which = std::string(to_string(id));
    switch (id) {
    case AssertionId::a2:
    case AssertionId::a4:
        if (k.monotonicity != Monotonicity::decreasing)
            throw MisuseError(which + " requires a decreasing kernel; '" + k.id + "' is declared " +
                              std::string(to_string(k.monotonicity)));
        break;
    case AssertionId::a5:
    case AssertionId::a5c:
        if (k.monotonicity != Monotonicity::increasing_from || !implies(k.positivity, Positivity::nonnegative))
            throw MisuseError(which + " requires a nonnegative kernel increasing from a threshold prime; '" +
                              k.id + "' does not declare one");
        break;
    case AssertionId::a6:
    case AssertionId::a6c:
        if (k.monotonicity != Monotonicity::increasing_from || !implies(k.positivity, Positivity::at_least_one))
            throw MisuseError(which + " requires a kernel >= 1 increasing from a threshold prime; '" + k.id +
                              "' does not declare one");
        break;
    default:
        break;
    }
}

double positive_value(const PrimeKernel& k, std::uint64_t p)
{
    const double v = k(p);
    if (!(v > 0.0))
        throw PositivityError("kernel '" + k.id + "' is not positive at p = " + std::to_string(p));
    return v;
}

std::uint64_t max_threshold(std::span<const PrimeKernel* const> ks)
{
    std::uint64_t a = 0;
    for (const auto* k : ks)
        a = std::max(a, k->threshold);
    return a;
}

void require_list(AssertionId id, std::span<const PrimeKernel* const> ks)
{
    if (ks.empty())
        throw MisuseError(std::string(to_string(id)) + " requires at least one kernel");
    for (const auto* k : ks)
        require_one(*k, id);
}

}  // namespace

std::string_view to_string(AssertionId id)
{
    switch (id) {
    case AssertionId::a1: return "a1";
    case AssertionId::a2: return "a2";
    case AssertionId::a3: return "a3";
    case AssertionId::a4: return "a4";
    case AssertionId::a5: return "a5";
    case AssertionId::a6: return "a6";
    case AssertionId::a5c: return "a5c";
    case AssertionId::a6c: return "a6c";
    case AssertionId::a7: return "a7";
    case AssertionId::a8: return "a8";
    case AssertionId::maxord: return "maxord";
    }
    return "?";
}

AssertionId parse_assertion(std::string_view id)
{
    for (const auto a : kAssertions)
        if (to_string(a) == id)
            return a;
    throw LookupError("unknown assertion id '" + std::string(id) + "'");
}

std::span<const AssertionId> all_assertions()
{
    return kAssertions;
}

bool uses_prime_power_kernels(AssertionId id)
{
    return id == AssertionId::a7 || id == AssertionId::a8;
}

bool takes_kernel_list(AssertionId id)
{
    return id == AssertionId::a5c || id == AssertionId::a6c;
}

std::string_view to_string(Direction d)
{
    return d == Direction::le ? "<=" : ">=";
}

double TolerancePolicy::tolerance(double rhs) const noexcept
{
    return rel * std::max(1.0, std::abs(rhs)) + abs;
}

BoundCheck make_check(AssertionId id, std::uint64_t n, double lhs, double rhs, Direction dir,
                      const TolerancePolicy& policy)
{
    BoundCheck c;
    c.assertion = id;
    c.n = n;
    c.lhs = lhs;
    c.rhs = rhs;
    c.direction = dir;
    c.slack = dir == Direction::le ? rhs - lhs : lhs - rhs;
    c.holds = c.slack >= -policy.tolerance(rhs);  // false for NaN
    return c;
}

BoundCheck make_exact_check(AssertionId id, std::uint64_t n, std::uint64_t lhs, std::uint64_t rhs,
                            Direction dir)
{
    BoundCheck c;
    c.assertion = id;
    c.n = n;
    c.lhs = static_cast<double>(lhs);
    c.rhs = static_cast<double>(rhs);
    c.direction = dir;
    const auto diff = static_cast<__int128>(rhs) - static_cast<__int128>(lhs);
    c.slack = static_cast<double>(dir == Direction::le ? diff : -diff);
    c.holds = dir == Direction::le ? lhs <= rhs : lhs >= rhs;
    c.exact = true;
    return c;
}

double zeta_series(unsigned k, double max_tail_width)
{
    if (k < 2)
        throw DomainError("zeta(k) needs k >= 2");
    const double kd = static_cast<double>(k);
    // Tail sum over m > M lies in [(M+1)^(1-k), M^(1-k)] / (k-1), whose width
    // is below M^-k.
    auto m = static_cast<std::uint64_t>(std::ceil(std::pow(max_tail_width, -1.0 / kd)));
    auto tail = [&](double x) { return std::pow(x, 1.0 - kd) / (kd - 1.0); };
    while (tail(static_cast<double>(m)) - tail(static_cast<double>(m + 1)) > max_tail_width)
        ++m;
    long double sum = 0.0L;
    for (std::uint64_t i = m; i >= 1; --i)
        sum += std::pow(static_cast<long double>(i), -static_cast<long double>(k));
    const double mid = 0.5 * (tail(static_cast<double>(m)) + tail(static_cast<double>(m + 1)));
    return static_cast<double>(sum + mid);
}

Constants::Constants(unsigned max_zeta_order)
{
    if (max_zeta_order < 2)
        throw DomainError("Constants needs zeta order >= 2");
    for (unsigned k = 2; k <= max_zeta_order; ++k)
        zeta_.push_back(zeta_series(k));
}

double Constants::zeta(unsigned k) const
{
    if (k < 2 || k > max_zeta_order())
        throw DomainError("zeta(" + std::to_string(k) + ") not available");
    return zeta_[k - 2];
}

void require_hypotheses(AssertionId id, std::span<const PrimeKernel* const> kernels)
{
    if (uses_prime_power_kernels(id) || id == AssertionId::maxord)
        return;
    if (takes_kernel_list(id)) {
        require_list(id, kernels);
        return;
    }
    if (kernels.size() != 1)
        throw MisuseError(std::string(to_string(id)) + " takes exactly one kernel");
    require_one(*kernels[0], id);
}

BoundCheck bound_a1(const Factorization& f, const PrimeKernel& k, double sup_value,
                    const TolerancePolicy& policy)
{
    if (f.empty())
        return identity_check(AssertionId::a1, 0.0, Direction::le, policy);
    const double lhs = strongly_additive_eval(k, f);
    const double rhs = static_cast<double>(omega(f)) * sup_value;
    return make_check(AssertionId::a1, f.n(), lhs, rhs, Direction::le, policy);
}

BoundCheck bound_a2(const Factorization& f, const PrimeKernel& k, const PrimeTable& table,
                    const TolerancePolicy& policy)
{
    require_one(k, AssertionId::a2);
    if (f.empty())
        return identity_check(AssertionId::a2, 0.0, Direction::le, policy);
    const double lhs = strongly_additive_eval(k, f);
    double rhs = 0.0;
    for (std::size_t i = 1; i <= f.size(); ++i)
        rhs += k(table.nth_prime(i));
    auto c = make_check(AssertionId::a2, f.n(), lhs, rhs, Direction::le, policy);
    c.diagnostic = static_cast<double>(table.nth_prime(f.size())) / std::log(static_cast<double>(f.n()));
    return c;
}

BoundCheck bound_a3(const Factorization& f, const PrimeKernel& k, double sup_log_value,
                    const TolerancePolicy& policy)
{
    if (f.empty())
        return identity_check(AssertionId::a3, 1.0, Direction::le, policy);
    double lhs = 1.0;
    for (const auto& pp : f)
        lhs *= positive_value(k, pp.p);
    const double rhs = std::exp(static_cast<double>(omega(f)) * sup_log_value);
    return make_check(AssertionId::a3, f.n(), lhs, rhs, Direction::le, policy);
}

BoundCheck bound_a4(const Factorization& f, const PrimeKernel& k, const PrimeTable& table,
                    const TolerancePolicy& policy)
{
    require_one(k, AssertionId::a4);
    if (f.empty())
        return identity_check(AssertionId::a4, 1.0, Direction::le, policy);
    double lhs = 1.0;
    for (const auto& pp : f)
        lhs *= positive_value(k, pp.p);
    double log_sum = 0.0;
    for (std::size_t i = 1; i <= f.size(); ++i)
        log_sum += std::log(positive_value(k, table.nth_prime(i)));
    auto c = make_check(AssertionId::a4, f.n(), lhs, std::exp(log_sum), Direction::le, policy);
    c.diagnostic = static_cast<double>(table.nth_prime(f.size())) / std::log(static_cast<double>(f.n()));
    return c;
}

BoundCheck bound_a5(const Factorization& f, const PrimeKernel& k, const TolerancePolicy& policy)
{
    require_one(k, AssertionId::a5);
    if (f.empty())
        return identity_check(AssertionId::a5, 0.0, Direction::ge, policy);
    return make_check(AssertionId::a5, f.n(), strongly_additive_eval(k, f), k(k.threshold), Direction::ge,
                      policy);
}

BoundCheck bound_a6(const Factorization& f, const PrimeKernel& k, const TolerancePolicy& policy)
{
    require_one(k, AssertionId::a6);
    if (f.empty())
        return identity_check(AssertionId::a6, 1.0, Direction::ge, policy);
    return make_check(AssertionId::a6, f.n(), strongly_multiplicative_eval(k, f), k(k.threshold),
                      Direction::ge, policy);
}

BoundCheck bound_a5_corollary(const Factorization& f, std::span<const PrimeKernel* const> ks,
                              const TolerancePolicy& policy)
{
    require_list(AssertionId::a5c, ks);
    if (f.empty())
        return identity_check(AssertionId::a5c, 0.0, Direction::ge, policy);
    const std::uint64_t a = max_threshold(ks);
    double lhs = 0.0;
    double rhs = 0.0;
    for (const auto* k : ks) {
        lhs += strongly_additive_eval(*k, f);
        rhs += (*k)(a);
    }
    return make_check(AssertionId::a5c, f.n(), lhs, rhs, Direction::ge, policy);
}

BoundCheck bound_a6_corollary(const Factorization& f, std::span<const PrimeKernel* const> ks,
                              const TolerancePolicy& policy)
{
    require_list(AssertionId::a6c, ks);
    if (f.empty())
        return identity_check(AssertionId::a6c, 1.0, Direction::ge, policy);
    const std::uint64_t a = max_threshold(ks);
    double lhs = 1.0;
    double rhs = 1.0;
    for (const auto* k : ks) {
        lhs *= strongly_multiplicative_eval(*k, f);
        rhs *= (*k)(a);
    }
    return make_check(AssertionId::a6c, f.n(), lhs, rhs, Direction::ge, policy);
}

namespace {

// Direction implied by comparing k(p^alpha) with k(p) over every factor:
// <= when k(p^alpha) >= k(p) throughout, >= when k(p^alpha) <= k(p).
template <typename Compare>
Direction probe_direction(const Factorization& f, const std::string& kernel_id, Compare cmp)
{
    bool above = false;
    bool below = false;
    for (const auto& [p, alpha] : f) {
        if (alpha < 2)
            continue;
        const int s = cmp(p, alpha);
        above |= s > 0;
        below |= s < 0;
    }
    if (above && below)
        throw MixedComparisonError("kernel '" + kernel_id + "' compares k(p^a) with k(p) in both directions at n = " +
                                   std::to_string(f.n()));
    return below ? Direction::ge : Direction::le;
}

}  // namespace

BoundCheck bound_a7(const Factorization& f, const PrimePowerKernel& k, const TolerancePolicy& policy)
{
    if (f.empty())
        return identity_check(AssertionId::a7, 0.0, Direction::le, policy);
    const Direction dir = probe_direction(f, k.id, [&](std::uint64_t p, unsigned alpha) {
        const double hi = k(p, alpha);
        const double lo = k(p, 1);
        return hi > lo ? 1 : (hi < lo ? -1 : 0);
    });
    double lhs = 0.0;
    for (const auto& pp : f)
        lhs += k(pp.p, 1);
    return make_check(AssertionId::a7, f.n(), lhs, additive_eval(k, f), dir, policy);
}

BoundCheck bound_a8(const Factorization& f, const PrimePowerKernel& k, const TolerancePolicy& policy)
{
    if (k.has_exact()) {
        if (f.empty())
            return make_exact_check(AssertionId::a8, 1, 1, 1, Direction::le);
        auto positive_exact = [&](std::uint64_t p, unsigned alpha) {
            const std::uint64_t v = k.exact(p, alpha);
            if (v == 0)
                throw PositivityError("kernel '" + k.id + "' vanishes at " + std::to_string(p));
            return v;
        };
        const Direction dir = probe_direction(f, k.id, [&](std::uint64_t p, unsigned alpha) {
            const std::uint64_t hi = positive_exact(p, alpha);
            const std::uint64_t lo = positive_exact(p, 1);
            return hi > lo ? 1 : (hi < lo ? -1 : 0);
        });
        std::uint64_t lhs = 1;
        std::uint64_t rhs = 1;
        for (const auto& [p, alpha] : f) {
            lhs = checked_mul(lhs, positive_exact(p, 1));
            rhs = checked_mul(rhs, positive_exact(p, alpha));
        }
        return make_exact_check(AssertionId::a8, f.n(), lhs, rhs, dir);
    }

    if (f.empty())
        return identity_check(AssertionId::a8, 1.0, Direction::le, policy);
    auto positive = [&](std::uint64_t p, unsigned alpha) {
        const double v = k(p, alpha);
        if (!(v > 0.0))
            throw PositivityError("kernel '" + k.id + "' is not positive at " + std::to_string(p));
        return v;
    };
    const Direction dir = probe_direction(f, k.id, [&](std::uint64_t p, unsigned alpha) {
        const double hi = positive(p, alpha);
        const double lo = positive(p, 1);
        return hi > lo ? 1 : (hi < lo ? -1 : 0);
    });
    double lhs = 1.0;
    double rhs = 1.0;
    for (const auto& [p, alpha] : f) {
        lhs *= positive(p, 1);
        rhs *= positive(p, alpha);
    }
    return make_check(AssertionId::a8, f.n(), lhs, rhs, dir, policy);
}

std::vector<BoundCheck> maximal_order_checks(const Factorization& f, const Constants& c,
                                             const TolerancePolicy& policy)
{
    std::vector<BoundCheck> out;
    const std::uint64_t n = f.n();
    if (n < 2)
        return out;
    const double nd = static_cast<double>(n);

    auto add = [&](std::string_view tag, double lhs, double rhs, Direction dir, bool report_only) {
        auto check = make_check(AssertionId::maxord, n, lhs, rhs, dir, policy);
        check.tag = tag;
        check.report_only = report_only;
        out.push_back(check);
    };

    add("sigma_zeta_k2", static_cast<double>(sigma_k(f, 2)), nd * nd * c.zeta(2), Direction::le, true);
    add("sigma_zeta_k3", static_cast<double>(sigma_k(f, 3)), nd * nd * nd * c.zeta(3), Direction::le, true);

    const double lnln = std::log(std::log(nd));
    if (!(lnln > 0.0))
        return out;
    add("tau_max_order", static_cast<double>(tau(f)), std::exp(std::log(nd) * std::log(2.0) / lnln),
        Direction::le, true);
    add("phi_min_order", static_cast<double>(euler_phi(f)), nd / lnln, Direction::ge, true);
    if (n >= kGronwallThreshold)
        add("sigma_gronwall", static_cast<double>(sigma_k(f, 1)), std::exp(Constants::euler_gamma) * nd * lnln,
            Direction::le, false);
    return out;
}

}  // namespace extremal
