#pragma once

// One calculator per extremal inequality. Each returns a BoundCheck holding
// both sides of the inequality for a single n, its direction, the signed
// slack and whether it holds under a TolerancePolicy.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "extremal/kernel.hpp"
#include "extremal/primes.hpp"

namespace extremal {

enum class AssertionId { a1, a2, a3, a4, a5, a6, a5c, a6c, a7, a8, maxord };

std::string_view to_string(AssertionId id);
/// LookupError for unknown ids.
AssertionId parse_assertion(std::string_view id);
std::span<const AssertionId> all_assertions();

/// Whether the assertion's kernels come from the prime-power registry.
bool uses_prime_power_kernels(AssertionId id);
/// Whether the assertion takes a list of kernels as one combined bound.
bool takes_kernel_list(AssertionId id);

enum class Direction { le, ge };

std::string_view to_string(Direction d);

struct TolerancePolicy {
    double rel = 1e-12;
    double abs = 1e-12;

    /// Allowed negative slack for a check whose bound side is `rhs`.
    double tolerance(double rhs) const noexcept;

    friend bool operator==(const TolerancePolicy&, const TolerancePolicy&) = default;
};

struct BoundCheck {
    AssertionId assertion = AssertionId::a1;
    std::uint64_t n = 1;
    double lhs = 0.0;
    double rhs = 0.0;
    Direction direction = Direction::le;
    double slack = 0.0;  // rhs - lhs for <=, lhs - rhs for >=
    bool holds = true;
    bool exact = false;  // compared as integers, no rounding involved

    // Extra fields used by some checks.
    std::string_view tag;             // sub-check label for maximal-order checks
    bool report_only = false;         // excluded from pass/fail
    std::optional<double> diagnostic; // a2/a4: p_{omega(n)} / ln n
};

BoundCheck make_check(AssertionId id, std::uint64_t n, double lhs, double rhs, Direction dir,
                      const TolerancePolicy& policy);
BoundCheck make_exact_check(AssertionId id, std::uint64_t n, std::uint64_t lhs, std::uint64_t rhs,
                            Direction dir);

// Euler-Mascheroni constant and zeta(k) for integer k >= 2.
class Constants {
public:
    static constexpr double euler_gamma = 0.57721566490153286060651209;

    explicit Constants(unsigned max_zeta_order = 8);

    /// DomainError for k < 2 or k above the precomputed order.
    double zeta(unsigned k) const;
    unsigned max_zeta_order() const noexcept { return static_cast<unsigned>(zeta_.size()) + 1; }

private:
    std::vector<double> zeta_;  // zeta_[k - 2]
};

/// zeta(k) from partial sums of m^-k with an integral tail bracket of width <= max_tail_width.
double zeta_series(unsigned k, double max_tail_width = 1e-13);

// Throws MisuseError when the kernels' declared metadata does not satisfy the
// hypotheses of the assertion. Used by sweeps before any n is evaluated.
void require_hypotheses(AssertionId id, std::span<const PrimeKernel* const> kernels);

BoundCheck bound_a1(const Factorization& f, const PrimeKernel& k, double sup_value,
                    const TolerancePolicy& policy = {});
BoundCheck bound_a2(const Factorization& f, const PrimeKernel& k, const PrimeTable& table,
                    const TolerancePolicy& policy = {});
BoundCheck bound_a3(const Factorization& f, const PrimeKernel& k, double sup_log_value,
                    const TolerancePolicy& policy = {});
BoundCheck bound_a4(const Factorization& f, const PrimeKernel& k, const PrimeTable& table,
                    const TolerancePolicy& policy = {});
BoundCheck bound_a5(const Factorization& f, const PrimeKernel& k, const TolerancePolicy& policy = {});
BoundCheck bound_a6(const Factorization& f, const PrimeKernel& k, const TolerancePolicy& policy = {});
BoundCheck bound_a5_corollary(const Factorization& f, std::span<const PrimeKernel* const> ks,
                              const TolerancePolicy& policy = {});
BoundCheck bound_a6_corollary(const Factorization& f, std::span<const PrimeKernel* const> ks,
                              const TolerancePolicy& policy = {});
BoundCheck bound_a7(const Factorization& f, const PrimePowerKernel& k, const TolerancePolicy& policy = {});
BoundCheck bound_a8(const Factorization& f, const PrimePowerKernel& k, const TolerancePolicy& policy = {});

/// n above which sigma(n) <= e^gamma n ln ln n participates in pass/fail.
inline constexpr std::uint64_t kGronwallThreshold = 5041;

// Maximal-order comparisons for one n. Only the sigma_gronwall check (n >=
// kGronwallThreshold) counts toward pass/fail; the rest are report_only:
//   sigma_zeta_k2, sigma_zeta_k3  sigma_k(n) <= n^k zeta(k)
//   sigma_gronwall                sigma(n) <= e^gamma n ln ln n
//   tau_max_order                 tau(n) <= n^(ln 2 / ln ln n)
//   phi_min_order                 phi(n) >= n / ln ln n
// n with ln ln n <= 0 yield only the sigma_zeta checks.
std::vector<BoundCheck> maximal_order_checks(const Factorization& f, const Constants& c,
                                             const TolerancePolicy& policy = {});

}  // namespace extremal
