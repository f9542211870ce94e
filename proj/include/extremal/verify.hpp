#pragma once

// Range-sweep harness. A sweep evaluates one (assertion, kernel selection)
// pair for every n in [2, N], splitting the range into contiguous chunks that
// run on separate threads. Chunk reports are merged in chunk order, so the
// result does not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/bounds.hpp"
#include "extremal/kernels.hpp"
#include "extremal/primes.hpp"

namespace extremal {

struct Violation {
    std::uint64_t n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct SlackPoint {
    std::uint64_t n = 0;
    double slack = 0.0;

    friend bool operator==(const SlackPoint&, const SlackPoint&) = default;
};

struct AssertionReport {
    std::string assertion;
    std::vector<std::string> kernels;
    std::uint64_t range_lo = 2;
    std::uint64_t range_hi = 2;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::map<std::string, std::uint64_t> skip_reasons;
    std::vector<Violation> violations;  // first violation_cap, ascending n
    std::uint64_t violation_count = 0;  // exact total
    std::optional<SlackPoint> min_slack;
    std::vector<std::uint64_t> equality_witnesses;  // first witness_cap, ascending n
    std::uint64_t equality_count = 0;
    std::map<std::string, double> diagnostics;

    bool passed() const noexcept { return violation_count == 0; }

    friend bool operator==(const AssertionReport&, const AssertionReport&) = default;
};

struct SweepConfig {
    AssertionId assertion = AssertionId::a1;
    std::vector<std::string> kernels;
    std::uint64_t max_n = 2;
    TolerancePolicy policy;
    unsigned workers = 1;
    std::size_t violation_cap = 100;
    std::size_t witness_cap = 10'000;
};

/// Kernels swept by default for each assertion: the pairings whose hypotheses hold.
std::vector<std::vector<std::string>> default_kernel_selections(AssertionId id);

class Verifier {
public:
    // The table must cover max_n of every sweep; the registry must hold every
    // kernel named in a SweepConfig.
    Verifier(const PrimeTable& table, const KernelRegistry& registry, const Constants& constants);

    /// Resolves kernels and checks hypotheses and table size without sweeping.
    void validate(const SweepConfig& cfg) const;

    /// Throws RangeError if max_n exceeds the table, LookupError for unknown
    /// kernels and MisuseError when the kernels do not meet the hypotheses.
    AssertionReport sweep(const SweepConfig& cfg) const;

    /// Every n in [2, max_n] whose slack is within policy.abs of the minimum
    /// slack, ascending.
    std::vector<std::uint64_t> find_extremal(const SweepConfig& cfg) const;

    using Visitor = std::function<void(std::uint64_t n, std::span<const BoundCheck> checks,
                                       std::string_view skip_reason)>;

    /// Visits every n in [lo, hi] in ascending order on the calling thread.
    void walk(const SweepConfig& cfg, std::uint64_t lo, std::uint64_t hi, const Visitor& visit) const;

    /// Checks for a single n through the fast path. Empty plus a skip reason
    /// when n is outside the hypotheses.
    std::vector<BoundCheck> evaluate(const SweepConfig& cfg, std::uint64_t n, std::string* skip_reason) const;

    const PrimeTable& table() const noexcept { return table_; }
    const KernelRegistry& registry() const noexcept { return registry_; }
    const Constants& constants() const noexcept { return constants_; }

private:
    const PrimeTable& table_;
    const KernelRegistry& registry_;
    const Constants& constants_;
};

// Independent recomputation of a check from first principles: trial-division
// factorization and primality, direct divisor enumeration, inclusion-exclusion
// for phi and direct loops for sums, products and suprema. Shares no code path
// with the sieve, the trackers or the prime-power closed forms. Intended for
// n <= 10^5. Skips are reported by throwing the same NotApplicable subclasses
// as the fast path. For maxord it returns the sigma_gronwall check.
BoundCheck brute_force_oracle(AssertionId id, const std::vector<const PrimeKernel*>& prime_kernels,
                              const PrimePowerKernel* prime_power_kernel, std::uint64_t n,
                              const TolerancePolicy& policy = {});

}  // namespace extremal
