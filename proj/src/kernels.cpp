#include "extremal/kernels.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "extremal/arith.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

bool satisfies(Positivity need, double v)
{
    switch (need) {
    case Positivity::unrestricted: return true;
    case Positivity::nonnegative: return v >= 0.0;
    case Positivity::positive: return v > 0.0;
    case Positivity::at_least_one: return v >= 1.0;
    case Positivity::greater_than_one: return v > 1.0;
    }
    return false;
}

double to_real(std::uint64_t v) { return static_cast<double>(v); }

std::string sigma_id(unsigned k) { return "sigma_k:" + std::to_string(k); }

}  // namespace

std::string_view to_string(Monotonicity m)
{
    switch (m) {
    case Monotonicity::none: return "none";
    case Monotonicity::increasing_from: return "increasing_from";
    case Monotonicity::decreasing: return "decreasing";
    }
    return "?";
}

std::string_view to_string(Positivity p)
{
    switch (p) {
    case Positivity::unrestricted: return "unrestricted";
    case Positivity::nonnegative: return "nonnegative";
    case Positivity::positive: return "positive";
    case Positivity::at_least_one: return "at_least_one";
    case Positivity::greater_than_one: return "greater_than_one";
    }
    return "?";
}

bool implies(Positivity have, Positivity need)
{
    // Classes form a chain except that positive and at_least_one are both
    // stronger than nonnegative; at_least_one also implies positive.
    auto rank = [](Positivity p) {
        switch (p) {
        case Positivity::unrestricted: return 0;
        case Positivity::nonnegative: return 1;
        case Positivity::positive: return 2;
        case Positivity::at_least_one: return 3;
        case Positivity::greater_than_one: return 4;
        }
        return 0;
    };
    return rank(have) >= rank(need);
}

double PrimeKernel::operator()(std::uint64_t p) const
{
    if (p < p_min)
        throw KernelDomainError("kernel '" + id + "' undefined at p = " + std::to_string(p));
    const double v = eval(p);
    if (!std::isfinite(v))
        throw KernelDomainError("kernel '" + id + "' not finite at p = " + std::to_string(p));
    return v;
}

double PrimeKernel::extend(const Factorization& x) const
{
    if (extension)
        return extension(x);
    if (x.n() < p_min)
        return kMinusInf;
    const double v = eval(x.n());
    return std::isfinite(v) ? v : kMinusInf;
}

double PrimePowerKernel::operator()(std::uint64_t p, unsigned alpha) const
{
    const double v = eval(p, alpha);
    if (!std::isfinite(v))
        throw KernelDomainError("kernel '" + id + "' not finite at " + std::to_string(p) + "^" +
                                std::to_string(alpha));
    return v;
}

void validate_kernel(const PrimeKernel& k, const PrimeTable& table, std::uint64_t validation_limit)
{
    if (!k.eval)
        throw RegistrationError("kernel '" + k.id + "' has no evaluator", 0);
    if (validation_limit > table.limit())
        throw RangeError("validation limit exceeds prime table");
    if (k.p_min > validation_limit || !table.is_prime(k.p_min))
        throw RegistrationError("kernel '" + k.id + "': p_min must be a prime within the validated range",
                                k.p_min);
    if (k.monotonicity == Monotonicity::increasing_from &&
        (k.threshold < k.p_min || k.threshold > validation_limit || !table.is_prime(k.threshold)))
        throw RegistrationError("kernel '" + k.id + "': threshold must be a prime in the domain",
                                k.threshold);

    bool have_prev = false;
    double prev = 0.0;
    for (const std::uint32_t p : table.primes()) {
        if (p < k.p_min)
            continue;
        if (p > validation_limit)
            break;
        const double v = k.eval(p);
        if (!std::isfinite(v))
            throw RegistrationError("kernel '" + k.id + "' is not finite at p = " + std::to_string(p), p);
        if (!satisfies(k.positivity, v))
            throw RegistrationError("kernel '" + k.id + "' violates declared positivity " +
                                        std::string(to_string(k.positivity)) + " at p = " + std::to_string(p),
                                    p);
        switch (k.monotonicity) {
        case Monotonicity::none:
            break;
        case Monotonicity::decreasing:
            if (have_prev && v > prev)
                throw RegistrationError("kernel '" + k.id + "' is not decreasing at p = " + std::to_string(p), p);
            break;
        case Monotonicity::increasing_from:
            if (p > k.threshold && v < prev)
                throw RegistrationError("kernel '" + k.id + "' is not increasing at p = " + std::to_string(p), p);
            break;
        }
        prev = v;
        have_prev = true;
    }
}

std::vector<PrimeKernel> builtin_kernels(unsigned max_sigma_order)
{
    using M = Monotonicity;
    using P = Positivity;
    std::vector<PrimeKernel> ks;

    ks.push_back({"ln_phi", [](std::uint64_t p) { return std::log(to_real(p - 1)); }, 2, M::increasing_from, 2,
                  P::nonnegative, [](const Factorization& x) { return std::log(to_real(euler_phi(x))); }});
    ks.push_back({"ln_sigma", [](std::uint64_t p) { return std::log(to_real(p + 1)); }, 2, M::increasing_from, 2,
                  P::positive, [](const Factorization& x) { return std::log(to_real(sigma_k(x, 1))); }});
    ks.push_back({"n_over_phi", [](std::uint64_t p) { return to_real(p) / to_real(p - 1); }, 2, M::decreasing, 2,
                  P::greater_than_one,
                  [](const Factorization& x) { return to_real(x.n()) / to_real(euler_phi(x)); }});
    ks.push_back({"ln_n_over_phi", [](std::uint64_t p) { return std::log1p(1.0 / to_real(p - 1)); }, 2,
                  M::decreasing, 2, P::positive,
                  [](const Factorization& x) { return std::log(to_real(x.n()) / to_real(euler_phi(x))); }});
    ks.push_back({"ln_tau_over_p", [](std::uint64_t p) { return std::log(2.0 / to_real(p)); }, 2, M::decreasing, 2,
                  P::unrestricted,
                  [](const Factorization& x) { return std::log(to_real(tau(x)) / to_real(x.n())); }});
    ks.push_back({"inv_p_minus_1", [](std::uint64_t p) { return 1.0 / to_real(p - 1); }, 2, M::decreasing, 2,
                  P::positive, {}});
    ks.push_back({"phi", [](std::uint64_t p) { return to_real(p - 1); }, 2, M::increasing_from, 2,
                  P::at_least_one, [](const Factorization& x) { return to_real(euler_phi(x)); }});
    ks.push_back({"sigma2", [](std::uint64_t p) { return to_real(p) * to_real(p) + 1.0; }, 2, M::increasing_from, 2,
                  P::greater_than_one, [](const Factorization& x) { return to_real(sigma_k(x, 2)); }});
    ks.push_back({"ratio1",
                  [](std::uint64_t p) {
                      const double x = to_real(p);
                      return (x * x + x + 1.0) / (x - 1.0);
                  },
                  2, M::increasing_from, 3, P::greater_than_one, {}});
    ks.push_back({"ratio2",
                  [](std::uint64_t p) {
                      const double x = to_real(p);
                      return (x * x + x + 1.0) / (x - 2.0);
                  },
                  3, M::increasing_from, 5, P::greater_than_one, {}});
    ks.push_back({"unit", [](std::uint64_t) { return 1.0; }, 2, M::none, 2, P::positive, {}});
    ks.push_back({"two", [](std::uint64_t) { return 2.0; }, 2, M::decreasing, 2, P::greater_than_one, {}});

    for (unsigned k = 0; k <= max_sigma_order; ++k) {
        ks.push_back({sigma_id(k),
                      [k](std::uint64_t p) { return std::pow(to_real(p), static_cast<double>(k)) + 1.0; }, 2,
                      k >= 1 ? M::increasing_from : M::none, 2, P::greater_than_one,
                      [k](const Factorization& x) { return to_real(sigma_k(x, k)); }});
    }
    return ks;
}

std::vector<PrimePowerKernel> builtin_prime_power_kernels(unsigned max_sigma_order)
{
    std::vector<PrimePowerKernel> ks;
    ks.push_back({"ln_phi",
                  [](std::uint64_t p, unsigned a) { return std::log(to_real(prime_power_phi(p, a))); },
                  {}});
    ks.push_back({"ln_tau_over_id",
                  [](std::uint64_t p, unsigned a) {
                      return std::log(static_cast<double>(a + 1)) - a * std::log(to_real(p));
                  },
                  {}});
    ks.push_back({"phi", [](std::uint64_t p, unsigned a) { return to_real(prime_power_phi(p, a)); },
                  [](std::uint64_t p, unsigned a) { return prime_power_phi(p, a); }});
    ks.push_back({"tau", [](std::uint64_t, unsigned a) { return static_cast<double>(a + 1); },
                  [](std::uint64_t, unsigned a) { return static_cast<std::uint64_t>(a) + 1; }});
    for (unsigned k = 0; k <= max_sigma_order; ++k) {
        ks.push_back({sigma_id(k),
                      [k](std::uint64_t p, unsigned a) { return to_real(prime_power_sigma(p, a, k)); },
                      [k](std::uint64_t p, unsigned a) { return prime_power_sigma(p, a, k); }});
    }
    return ks;
}

unsigned max_sigma_order(const std::vector<std::string>& ids)
{
    constexpr std::string_view prefix = "sigma_k:";
    unsigned best = 0;
    for (const auto& id : ids) {
        if (!id.starts_with(prefix))
            continue;
        unsigned k = 0;
        const char* first = id.data() + prefix.size();
        const char* last = id.data() + id.size();
        const auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec != std::errc{} || ptr != last)
            throw LookupError("malformed kernel id '" + id + "'");
        best = std::max(best, k);
    }
    return best;
}

KernelRegistry::KernelRegistry(const PrimeTable& table, unsigned max_sigma_order,
                               std::uint64_t validation_limit)
    : table_(table), validation_limit_(std::min(validation_limit, table.limit()))
{
    for (auto& k : builtin_kernels(max_sigma_order))
        add(std::move(k));
    for (auto& k : builtin_prime_power_kernels(max_sigma_order))
        add(std::move(k));
}

const PrimeKernel& KernelRegistry::add(PrimeKernel k)
{
    if (prime_.contains(k.id))
        throw RegistrationError("kernel '" + k.id + "' already registered", 0);
    validate_kernel(k, table_, validation_limit_);
    auto id = k.id;
    return prime_.emplace(std::move(id), std::move(k)).first->second;
}

const PrimePowerKernel& KernelRegistry::add(PrimePowerKernel k)
{
    if (!k.eval)
        throw RegistrationError("kernel '" + k.id + "' has no evaluator", 0);
    if (prime_power_.contains(k.id))
        throw RegistrationError("kernel '" + k.id + "' already registered", 0);
    auto id = k.id;
    return prime_power_.emplace(std::move(id), std::move(k)).first->second;
}

const PrimeKernel& KernelRegistry::prime_kernel(std::string_view id) const
{
    const auto it = prime_.find(id);
    if (it == prime_.end())
        throw LookupError("unknown prime kernel '" + std::string(id) + "'");
    return it->second;
}

const PrimePowerKernel& KernelRegistry::prime_power_kernel(std::string_view id) const
{
    const auto it = prime_power_.find(id);
    if (it == prime_power_.end())
        throw LookupError("unknown prime-power kernel '" + std::string(id) + "'");
    return it->second;
}

std::vector<std::string> KernelRegistry::prime_kernel_ids() const
{
    std::vector<std::string> ids;
    for (const auto& [id, k] : prime_)
        ids.push_back(id);
    return ids;
}

std::vector<std::string> KernelRegistry::prime_power_kernel_ids() const
{
    std::vector<std::string> ids;
    for (const auto& [id, k] : prime_power_)
        ids.push_back(id);
    return ids;
}

SupTracker::SupTracker(const PrimeTable& table, Function f)
    : table_(table), f_(std::move(f)), current_sup_(kMinusInf)
{
}

double SupTracker::advance(std::uint64_t n)
{
    if (n < current_n_)
        throw OrderingError("sup tracker is at " + std::to_string(current_n_) + ", cannot rewind to " +
                            std::to_string(n));
    for (std::uint64_t x = std::max<std::uint64_t>(current_n_ + 1, 2); x <= n; ++x)
        current_sup_ = std::max(current_sup_, f_(table_.factorize(x)));
    current_n_ = n;
    return current_sup_;
}

}  // namespace extremal
