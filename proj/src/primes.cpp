#include "extremal/primes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "extremal/errors.hpp"

namespace extremal {

void Factorization::append(std::uint64_t p, unsigned alpha)
{
    if (count_ == kMaxDistinct)
        throw RangeError("factorization: too many distinct primes");
    if (count_ > 0 && factors_[count_ - 1].p >= p)
        throw DomainError("factorization: primes must be strictly increasing");
    if (alpha == 0)
        throw DomainError("factorization: exponent must be positive");
    factors_[count_++] = {p, alpha};
    for (unsigned i = 0; i < alpha; ++i)
        n_ *= p;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit)
{
    if (limit < 2)
        throw DomainError("prime table limit must be at least 2, got " + std::to_string(limit));
    if (limit > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("prime table limit exceeds 32-bit factor storage");

    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (spf_[i] != 0)
            continue;
        for (std::uint64_t j = i * i; j <= limit; j += i)
            if (spf_[j] == 0)
                spf_[j] = static_cast<std::uint32_t>(i);
    }

    long double running = 0.0L;
    for (std::uint64_t m = 2; m <= limit; ++m) {
        if (spf_[m] != 0)
            continue;
        spf_[m] = static_cast<std::uint32_t>(m);
        primes_.push_back(static_cast<std::uint32_t>(m));
        running += std::log(static_cast<long double>(m));
        theta_prefix_.push_back(static_cast<double>(running));
    }
}

bool PrimeTable::is_prime(std::uint64_t m) const
{
    if (m > limit_)
        throw RangeError("is_prime: " + std::to_string(m) + " exceeds table limit");
    return m >= 2 && spf_[m] == m;
}

std::uint64_t PrimeTable::smallest_prime_factor(std::uint64_t m) const
{
    if (m < 2 || m > limit_)
        throw RangeError("smallest_prime_factor: " + std::to_string(m) + " outside [2, limit]");
    return spf_[m];
}

std::uint64_t PrimeTable::nth_prime(std::size_t k) const
{
    if (k == 0 || k > primes_.size())
        throw RangeError("nth_prime: index " + std::to_string(k) + " outside table of " +
                         std::to_string(primes_.size()) + " primes");
    return primes_[k - 1];
}

double PrimeTable::chebyshev_theta(double x) const
{
    if (std::isnan(x) || x < 0.0)
        throw DomainError("chebyshev_theta: argument must be nonnegative");
    if (x > static_cast<double>(limit_))
        throw RangeError("chebyshev_theta: argument exceeds table limit");
    if (x < 2.0)
        return 0.0;
    const auto bound = static_cast<std::uint32_t>(std::floor(x));
    const auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return theta_prefix_[static_cast<std::size_t>(it - primes_.begin()) - 1];
}

Factorization PrimeTable::factorize(std::uint64_t n) const
{
    if (n < 1 || n > limit_)
        throw RangeError("factorize: " + std::to_string(n) + " outside [1, " +
                         std::to_string(limit_) + "]");
    Factorization f;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        unsigned alpha = 0;
        do {
            n /= p;
            ++alpha;
        } while (n % p == 0);
        f.append(p, alpha);
    }
    return f;
}

}  // namespace extremal
