#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "extremal/primes.hpp"

namespace extremal {

enum class Monotonicity {
    none,
    increasing_from,  // nondecreasing on primes p >= threshold
    decreasing,       // nonincreasing on every prime of the domain
};

enum class Positivity {
    unrestricted,
    nonnegative,       // f >= 0
    positive,          // f > 0
    at_least_one,      // g >= 1
    greater_than_one,  // g > 1
};

std::string_view to_string(Monotonicity m);
std::string_view to_string(Positivity p);

// True when every value admitted by `have` is also admitted by `need`.
bool implies(Positivity have, Positivity need);

// A real-valued function of a prime, together with the analytic facts the
// extremal bounds rely on. The metadata is declared, then checked numerically
// when the kernel is registered.
struct PrimeKernel {
    std::string id;
    std::function<double(std::uint64_t)> eval;
    std::uint64_t p_min = 2;
    Monotonicity monotonicity = Monotonicity::none;
    std::uint64_t threshold = 2;  // the prime a for increasing_from
    Positivity positivity = Positivity::unrestricted;

    // Extension of the kernel to all integers x >= 2, used where a supremum is
    // taken over integers rather than primes. When empty, the prime formula
    // itself is evaluated at x (and x below p_min is excluded).
    std::function<double(const Factorization&)> extension;

    // Throws KernelDomainError below p_min or on a non-finite value.
    double operator()(std::uint64_t p) const;

    // Value of the integer extension at x; -infinity when x is outside it.
    double extend(const Factorization& x) const;
};

// f(p^alpha) for an additive or multiplicative arithmetic function.
struct PrimePowerKernel {
    std::string id;
    std::function<double(std::uint64_t, unsigned)> eval;
    // Integer-valued kernels also provide an exact evaluator, which may throw
    // OverflowError.
    std::function<std::uint64_t(std::uint64_t, unsigned)> exact;

    double operator()(std::uint64_t p, unsigned alpha) const;
    bool has_exact() const noexcept { return static_cast<bool>(exact); }
};

}  // namespace extremal
