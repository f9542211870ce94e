#pragma once

// Sieve-backed prime infrastructure: smallest-prime-factor table, canonical
// factorization, k-th prime lookup and the Chebyshev theta function.
//
// A PrimeTable is immutable once built and can be shared freely between
// threads.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace extremal {

struct PrimePower {
    std::uint64_t p = 0;
    unsigned alpha = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical decomposition n = p1^a1 ... pt^at with p strictly increasing.
// Storage is inline: no n below 2^64 has more than 15 distinct prime factors.
class Factorization {
public:
    static constexpr std::size_t kMaxDistinct = 15;

    Factorization() = default;  // n = 1

    std::uint64_t n() const noexcept { return n_; }
    std::span<const PrimePower> factors() const noexcept { return {factors_.data(), count_}; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    auto begin() const noexcept { return factors().begin(); }
    auto end() const noexcept { return factors().end(); }

    // Appends p^alpha; p must exceed every prime already present.
    void append(std::uint64_t p, unsigned alpha);

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.n_ == b.n_ && std::ranges::equal(a.factors(), b.factors());
    }

private:
    std::uint64_t n_ = 1;
    std::size_t count_ = 0;
    std::array<PrimePower, kMaxDistinct> factors_{};
};

class PrimeTable {
public:
    // Sieve of Eratosthenes over [2, limit]; throws DomainError for limit < 2.
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    bool is_prime(std::uint64_t m) const;
    std::uint64_t smallest_prime_factor(std::uint64_t m) const;

    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    std::span<const double> theta_prefix() const noexcept { return theta_prefix_; }

    /// k-th prime, 1-indexed. RangeError when k exceeds the table.
    std::uint64_t nth_prime(std::size_t k) const;

    /// theta(x) = sum of ln p over primes p <= x; 0 for x < 2.
    double chebyshev_theta(double x) const;

    /// Canonical decomposition in O(log n). RangeError outside [1, limit].
    Factorization factorize(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
    std::vector<double> theta_prefix_;
};

}  // namespace extremal
