#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace extremal {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. a sieve limit below 2).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Query outside what a table was built for; the caller must enlarge the table.
class RangeError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// A kernel's declared metadata does not meet the hypotheses of the requested bound.
class MisuseError : public Error {
public:
    using Error::Error;
};

class OrderingError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class RegistrationError : public Error {
public:
    RegistrationError(const std::string& what, std::uint64_t witness)
        : Error(what), witness_(witness) {}

    /// First prime at which the declared metadata fails.
    std::uint64_t witness() const noexcept { return witness_; }

private:
    std::uint64_t witness_;
};

// Raised for a single n that falls outside a bound's hypotheses. Sweeps count
// these as skips keyed by reason() instead of aborting.
class NotApplicable : public Error {
public:
    NotApplicable(std::string_view reason, const std::string& what)
        : Error(what), reason_(reason) {}

    std::string_view reason() const noexcept { return reason_; }

private:
    std::string_view reason_;
};

class KernelDomainError : public NotApplicable {
public:
    explicit KernelDomainError(const std::string& what)
        : NotApplicable("kernel_domain", what) {}
};

class PositivityError : public NotApplicable {
public:
    explicit PositivityError(const std::string& what)
        : NotApplicable("nonpositive_kernel", what) {}
};

class MixedComparisonError : public NotApplicable {
public:
    explicit MixedComparisonError(const std::string& what)
        : NotApplicable("mixed_prime_power_comparison", what) {}
};

class BelowThresholdError : public NotApplicable {
public:
    explicit BelowThresholdError(const std::string& what)
        : NotApplicable("below_threshold", what) {}
};

}  // namespace extremal
