#pragma once

// Classical arithmetic functions over a Factorization and the generic
// evaluators for (strongly) additive and (strongly) multiplicative functions.
//
// Integer-valued functions are exact and throw OverflowError instead of
// wrapping. Real-valued evaluators accumulate in double precision.

#include <cstdint>

#include "extremal/kernel.hpp"
#include "extremal/primes.hpp"

namespace extremal {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// Number of distinct prime divisors.
unsigned omega(const Factorization& f) noexcept;

/// Total number of prime factors counted with multiplicity.
unsigned big_omega(const Factorization& f) noexcept;

std::uint64_t prime_power_phi(std::uint64_t p, unsigned alpha);

/// sigma_k(p^alpha) = (p^((alpha+1)k) - 1) / (p^k - 1); alpha + 1 when k = 0.
std::uint64_t prime_power_sigma(std::uint64_t p, unsigned alpha, unsigned k);

std::uint64_t euler_phi(const Factorization& f);
std::uint64_t sigma_k(const Factorization& f, unsigned k);
std::uint64_t tau(const Factorization& f);

/// Product of the distinct primes dividing n.
std::uint64_t radical(const Factorization& f);

double additive_eval(const PrimePowerKernel& k, const Factorization& f);
double multiplicative_eval(const PrimePowerKernel& k, const Factorization& f);

/// multiplicative_eval through the kernel's exact evaluator.
std::uint64_t multiplicative_eval_exact(const PrimePowerKernel& k, const Factorization& f);

double strongly_additive_eval(const PrimeKernel& k, const Factorization& f);
double strongly_multiplicative_eval(const PrimeKernel& k, const Factorization& f);

}  // namespace extremal
