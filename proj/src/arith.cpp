#include "extremal/arith.hpp"

#include <limits>
#include <string>

#include "extremal/errors.hpp"

namespace extremal {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in addition");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in multiplication");
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp > 0) {
        if (exp & 1u)
            r = checked_mul(r, base);
        exp >>= 1;
        if (exp > 0)
            base = checked_mul(base, base);
    }
    return r;
}

unsigned omega(const Factorization& f) noexcept
{
    return static_cast<unsigned>(f.size());
}

unsigned big_omega(const Factorization& f) noexcept
{
    unsigned total = 0;
    for (const auto& [p, alpha] : f)
        total += alpha;
    return total;
}

std::uint64_t prime_power_phi(std::uint64_t p, unsigned alpha)
{
    if (alpha == 0)
        return 1;
    return checked_mul(checked_pow(p, alpha - 1), p - 1);
}

std::uint64_t prime_power_sigma(std::uint64_t p, unsigned alpha, unsigned k)
{
    if (k == 0)
        return alpha + 1u;
    // p^((alpha+1)k) fits in 128 bits whenever the result fits in 64.
    using u128 = unsigned __int128;
    const std::uint64_t pk = checked_pow(p, k);
    u128 top = 1;
    constexpr u128 top_limit = ~static_cast<u128>(0) / std::numeric_limits<std::uint64_t>::max();
    for (unsigned i = 0; i <= alpha; ++i) {
        if (top > top_limit)
            throw OverflowError("sigma_k: prime power term overflows");
        top *= pk;
    }
    const u128 value = (top - 1) / (pk - 1);
    if (value > std::numeric_limits<std::uint64_t>::max())
        throw OverflowError("sigma_k(" + std::to_string(p) + "^" + std::to_string(alpha) +
                            ") exceeds 64 bits");
    return static_cast<std::uint64_t>(value);
}

std::uint64_t euler_phi(const Factorization& f)
{
    std::uint64_t r = 1;
    for (const auto& [p, alpha] : f)
        r = checked_mul(r, prime_power_phi(p, alpha));
    return r;
}

std::uint64_t sigma_k(const Factorization& f, unsigned k)
{
    if (k == 0)
        return tau(f);
    std::uint64_t r = 1;
    for (const auto& [p, alpha] : f)
        r = checked_mul(r, prime_power_sigma(p, alpha, k));
    return r;
}

std::uint64_t tau(const Factorization& f)
{
    std::uint64_t r = 1;
    for (const auto& pp : f)
        r = checked_mul(r, pp.alpha + 1u);
    return r;
}

std::uint64_t radical(const Factorization& f)
{
    std::uint64_t r = 1;
    for (const auto& pp : f)
        r = checked_mul(r, pp.p);
    return r;
}

double additive_eval(const PrimePowerKernel& k, const Factorization& f)
{
    double sum = 0.0;
    for (const auto& [p, alpha] : f)
        sum += k(p, alpha);
    return sum;
}

double multiplicative_eval(const PrimePowerKernel& k, const Factorization& f)
{
    double prod = 1.0;
    for (const auto& [p, alpha] : f)
        prod *= k(p, alpha);
    return prod;
}

std::uint64_t multiplicative_eval_exact(const PrimePowerKernel& k, const Factorization& f)
{
    if (!k.has_exact())
        throw MisuseError("kernel '" + k.id + "' has no exact evaluator");
    std::uint64_t prod = 1;
    for (const auto& [p, alpha] : f)
        prod = checked_mul(prod, k.exact(p, alpha));
    return prod;
}

double strongly_additive_eval(const PrimeKernel& k, const Factorization& f)
{
    double sum = 0.0;
    for (const auto& pp : f)
        sum += k(pp.p);
    return sum;
}

double strongly_multiplicative_eval(const PrimeKernel& k, const Factorization& f)
{
    double prod = 1.0;
    for (const auto& pp : f)
        prod *= k(pp.p);
    return prod;
}

}  // namespace extremal
