#pragma once

// Kernel registry: the concrete prime and prime-power kernels used by the
// bound calculators, each validated against its declared metadata before it
// can be looked up.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/kernel.hpp"
#include "extremal/primes.hpp"

namespace extremal {

inline constexpr std::uint64_t kDefaultValidationLimit = 1'000'000;

/// Checks a kernel's monotonicity and positivity claims at every prime in
/// [p_min, validation_limit]. Throws RegistrationError carrying the first
/// violating prime.
void validate_kernel(const PrimeKernel& k, const PrimeTable& table, std::uint64_t validation_limit);

/// Every prime kernel used by the worked examples. sigma_k:K is produced for
/// K in [0, max_sigma_order].
std::vector<PrimeKernel> builtin_kernels(unsigned max_sigma_order = 3);

/// ln phi, ln(tau/id), phi, tau and sigma_k:K for K in [0, max_sigma_order].
std::vector<PrimePowerKernel> builtin_prime_power_kernels(unsigned max_sigma_order = 3);

/// Largest K among ids of the form "sigma_k:K" (0 when none).
unsigned max_sigma_order(const std::vector<std::string>& ids);

class KernelRegistry {
public:
    // Registers and validates the builtin kernels.
    KernelRegistry(const PrimeTable& table, unsigned max_sigma_order = 3,
                   std::uint64_t validation_limit = kDefaultValidationLimit);

    const PrimeKernel& add(PrimeKernel k);
    const PrimePowerKernel& add(PrimePowerKernel k);

    /// LookupError for unknown ids.
    const PrimeKernel& prime_kernel(std::string_view id) const;
    const PrimePowerKernel& prime_power_kernel(std::string_view id) const;

    std::vector<std::string> prime_kernel_ids() const;
    std::vector<std::string> prime_power_kernel_ids() const;

private:
    const PrimeTable& table_;
    std::uint64_t validation_limit_;
    std::map<std::string, PrimeKernel, std::less<>> prime_;
    std::map<std::string, PrimePowerKernel, std::less<>> prime_power_;
};

// Running supremum of an integer function over [2, n] for an ascending sweep.
class SupTracker {
public:
    using Function = std::function<double(const Factorization&)>;

    SupTracker(const PrimeTable& table, Function f);

    /// sup over 2 <= x <= n; -infinity while the range is empty.
    double advance(std::uint64_t n);

    std::uint64_t current_n() const noexcept { return current_n_; }
    double current_sup() const noexcept { return current_sup_; }

private:
    const PrimeTable& table_;
    Function f_;
    std::uint64_t current_n_ = 1;
    double current_sup_;
};

}  // namespace extremal
