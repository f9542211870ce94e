// Slow, independent recomputation of every bound for cross-checking the
// sieve-based fast path. Everything here is derived from trial division and
// direct enumeration.

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/verify.hpp"

namespace extremal {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

using Factors = std::vector<std::pair<std::uint64_t, unsigned>>;

Factors trial_factor(std::uint64_t n)
{
    Factors out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        unsigned alpha = 0;
        while (n % d == 0) {
            n /= d;
            ++alpha;
        }
        if (alpha > 0)
            out.emplace_back(d, alpha);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

bool is_prime_td(std::uint64_t m)
{
    if (m < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0)
            return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0 && is_prime_td(p))
            ps.push_back(p);
    return ps;
}

std::vector<std::uint64_t> first_primes(std::size_t count)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t m = 2; ps.size() < count; ++m)
        if (is_prime_td(m))
            ps.push_back(m);
    return ps;
}

std::uint64_t ipow_checked(std::uint64_t base, unsigned exp)
{
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r *= base;
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("oracle: power overflows");
    }
    return static_cast<std::uint64_t>(r);
}

// Inclusion-exclusion over the distinct primes of n.
std::uint64_t phi_ie(std::uint64_t n)
{
    if (n == 1)
        return 1;
    const auto fs = trial_factor(n);
    const std::size_t k = fs.size();
    std::int64_t total = 0;
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        std::uint64_t d = 1;
        int bits = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                d *= fs[i].first;
                ++bits;
            }
        const auto term = static_cast<std::int64_t>(n / d);
        total += (bits % 2 == 0) ? term : -term;
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t divisor_power_sum(std::uint64_t n, unsigned k)
{
    unsigned __int128 sum = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        sum += ipow_checked(d, k);
        if (d * d != n)
            sum += ipow_checked(n / d, k);
        if (sum > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("oracle: divisor sum overflows");
    }
    return static_cast<std::uint64_t>(sum);
}

std::uint64_t divisor_count(std::uint64_t n)
{
    return divisor_power_sum(n, 0);
}

bool parse_sigma_order(const std::string& id, unsigned& k)
{
    constexpr std::string_view prefix = "sigma_k:";
    if (!id.starts_with(prefix))
        return false;
    k = static_cast<unsigned>(std::stoul(id.substr(prefix.size())));
    return true;
}

double real(std::uint64_t v) { return static_cast<double>(v); }

// Integer extension of a prime kernel, recomputed from its defining function.
double extension(const PrimeKernel& k, std::uint64_t x)
{
    const std::string& id = k.id;
    unsigned order = 0;
    if (id == "ln_phi")
        return std::log(real(phi_ie(x)));
    if (id == "ln_sigma")
        return std::log(real(divisor_power_sum(x, 1)));
    if (id == "n_over_phi")
        return real(x) / real(phi_ie(x));
    if (id == "ln_n_over_phi")
        return std::log(real(x) / real(phi_ie(x)));
    if (id == "ln_tau_over_p")
        return std::log(real(divisor_count(x)) / real(x));
    if (id == "phi")
        return real(phi_ie(x));
    if (id == "sigma2")
        return real(divisor_power_sum(x, 2));
    if (parse_sigma_order(id, order))
        return real(divisor_power_sum(x, order));
    if (k.extension)
        throw LookupError("no independent extension known for kernel '" + id + "'");
    if (x < k.p_min)
        return kMinusInf;
    const double v = k.eval(x);
    return std::isfinite(v) ? v : kMinusInf;
}

double kernel_at(const PrimeKernel& k, std::uint64_t p)
{
    if (p < k.p_min)
        throw KernelDomainError("oracle: kernel '" + k.id + "' undefined at " + std::to_string(p));
    const double v = k.eval(p);
    if (!std::isfinite(v))
        throw KernelDomainError("oracle: kernel '" + k.id + "' not finite at " + std::to_string(p));
    return v;
}

double positive_at(const PrimeKernel& k, std::uint64_t p)
{
    const double v = kernel_at(k, p);
    if (!(v > 0.0))
        throw PositivityError("oracle: kernel '" + k.id + "' not positive at " + std::to_string(p));
    return v;
}

double sup_over_integers(const PrimeKernel& k, std::uint64_t n, bool take_log)
{
    double sup = kMinusInf;
    for (std::uint64_t x = 2; x <= n; ++x) {
        double v = extension(k, x);
        if (take_log)
            v = v > 0.0 ? std::log(v) : kMinusInf;
        if (v > sup)
            sup = v;
    }
    return sup;
}

// Whole-number arithmetic function behind a prime-power kernel.
double whole_function(const PrimePowerKernel& k, std::uint64_t m)
{
    if (k.id == "ln_phi")
        return std::log(real(phi_ie(m)));
    if (k.id == "ln_tau_over_id")
        return std::log(real(divisor_count(m)) / real(m));
    throw LookupError("no independent evaluator for prime-power kernel '" + k.id + "'");
}

std::uint64_t whole_function_exact(const PrimePowerKernel& k, std::uint64_t m)
{
    unsigned order = 0;
    if (k.id == "phi")
        return phi_ie(m);
    if (k.id == "tau")
        return divisor_count(m);
    if (parse_sigma_order(k.id, order))
        return divisor_power_sum(m, order);
    throw LookupError("no independent exact evaluator for prime-power kernel '" + k.id + "'");
}

template <typename T, typename F>
Direction oracle_direction(const Factors& fs, const std::string& id, std::uint64_t n, F value)
{
    bool above = false;
    bool below = false;
    for (const auto& [p, alpha] : fs) {
        if (alpha < 2)
            continue;
        const T hi = value(ipow_checked(p, alpha));
        const T lo = value(p);
        above |= hi > lo;
        below |= hi < lo;
    }
    if (above && below)
        throw MixedComparisonError("oracle: mixed comparison for '" + id + "' at " + std::to_string(n));
    return below ? Direction::ge : Direction::le;
}

}  // namespace

BoundCheck brute_force_oracle(AssertionId id, const std::vector<const PrimeKernel*>& prime_kernels,
                              const PrimePowerKernel* pk, std::uint64_t n, const TolerancePolicy& policy)
{
    if (n < 1)
        throw DomainError("oracle: n must be positive");
    if (uses_prime_power_kernels(id) && pk == nullptr)
        throw MisuseError("oracle: prime-power kernel required");
    if (!uses_prime_power_kernels(id) && id != AssertionId::maxord) {
        if (prime_kernels.empty())
            throw MisuseError("oracle: prime kernel required");
        require_hypotheses(id, prime_kernels);
    }

    const auto ps = prime_divisors(n);
    const auto omega = ps.size();

    if (n == 1) {
        switch (id) {
        case AssertionId::a1:
        case AssertionId::a2:
        case AssertionId::a7: return make_check(id, 1, 0.0, 0.0, Direction::le, policy);
        case AssertionId::a5:
        case AssertionId::a5c: return make_check(id, 1, 0.0, 0.0, Direction::ge, policy);
        case AssertionId::a6:
        case AssertionId::a6c: return make_check(id, 1, 1.0, 1.0, Direction::ge, policy);
        case AssertionId::a8:
            if (pk->has_exact())
                return make_exact_check(id, 1, 1, 1, Direction::le);
            return make_check(id, 1, 1.0, 1.0, Direction::le, policy);
        case AssertionId::maxord: throw BelowThresholdError("oracle: n = 1");
        default: return make_check(id, 1, 1.0, 1.0, Direction::le, policy);
        }
    }

    const PrimeKernel* k = prime_kernels.empty() ? nullptr : prime_kernels.front();
    switch (id) {
    case AssertionId::a1: {
        double lhs = 0.0;
        for (auto p : ps)
            lhs += kernel_at(*k, p);
        return make_check(id, n, lhs, real(omega) * sup_over_integers(*k, n, false), Direction::le, policy);
    }
    case AssertionId::a2:
    case AssertionId::a4: {
        const bool product = id == AssertionId::a4;
        double lhs = product ? 1.0 : 0.0;
        for (auto p : ps)
            lhs = product ? lhs * positive_at(*k, p) : lhs + kernel_at(*k, p);
        const auto first = first_primes(omega);
        double rhs = 0.0;
        for (auto p : first)
            rhs += product ? std::log(positive_at(*k, p)) : kernel_at(*k, p);
        auto c = make_check(id, n, lhs, product ? std::exp(rhs) : rhs, Direction::le, policy);
        c.diagnostic = real(first.back()) / std::log(real(n));
        return c;
    }
    case AssertionId::a3: {
        double lhs = 1.0;
        for (auto p : ps)
            lhs *= positive_at(*k, p);
        return make_check(id, n, lhs, std::exp(real(omega) * sup_over_integers(*k, n, true)), Direction::le,
                          policy);
    }
    case AssertionId::a5:
    case AssertionId::a5c:
    case AssertionId::a6:
    case AssertionId::a6c: {
        const bool product = id == AssertionId::a6 || id == AssertionId::a6c;
        std::uint64_t a = 0;
        for (const auto* ki : prime_kernels)
            a = std::max(a, ki->threshold);
        double lhs = product ? 1.0 : 0.0;
        double rhs = product ? 1.0 : 0.0;
        for (const auto* ki : prime_kernels) {
            double part = product ? 1.0 : 0.0;
            for (auto p : ps)
                part = product ? part * kernel_at(*ki, p) : part + kernel_at(*ki, p);
            lhs = product ? lhs * part : lhs + part;
            rhs = product ? rhs * kernel_at(*ki, a) : rhs + kernel_at(*ki, a);
        }
        return make_check(id, n, lhs, rhs, Direction::ge, policy);
    }
    case AssertionId::a7: {
        const auto fs = trial_factor(n);
        const Direction dir =
            oracle_direction<double>(fs, pk->id, n, [&](std::uint64_t m) { return whole_function(*pk, m); });
        double lhs = 0.0;
        for (auto p : ps)
            lhs += whole_function(*pk, p);
        return make_check(id, n, lhs, whole_function(*pk, n), dir, policy);
    }
    case AssertionId::a8: {
        const auto fs = trial_factor(n);
        auto value = [&](std::uint64_t m) {
            const std::uint64_t v = whole_function_exact(*pk, m);
            if (v == 0)
                throw PositivityError("oracle: kernel '" + pk->id + "' vanishes");
            return v;
        };
        const Direction dir = oracle_direction<std::uint64_t>(fs, pk->id, n, value);
        unsigned __int128 lhs = 1;
        for (auto p : ps) {
            lhs *= value(p);
            if (lhs > std::numeric_limits<std::uint64_t>::max())
                throw OverflowError("oracle: product overflows");
        }
        return make_exact_check(id, n, static_cast<std::uint64_t>(lhs), value(n), dir);
    }
    case AssertionId::maxord: {
        if (n < kGronwallThreshold)
            throw BelowThresholdError("oracle: n below Gronwall threshold");
        const double nd = real(n);
        auto c = make_check(id, n, real(divisor_power_sum(n, 1)),
                            std::exp(Constants::euler_gamma) * nd * std::log(std::log(nd)), Direction::le, policy);
        c.tag = "sigma_gronwall";
        return c;
    }
    }
    throw LookupError("oracle: unhandled assertion");
}

}  // namespace extremal
