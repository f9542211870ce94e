#include "doctest.h"

#include <cmath>
#include <limits>

#include "extremal/arith.hpp"
#include "extremal/errors.hpp"
#include "extremal/kernels.hpp"
#include "reference.hpp"

using namespace extremal;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(1'000'000);
    return t;
}

const KernelRegistry& registry()
{
    static const KernelRegistry r(table());
    return r;
}

}  // namespace

TEST_CASE("builtin kernel values")
{
    const auto& r = registry();
    CHECK(r.prime_kernel("ln_phi")(2) == 0.0);
    CHECK(r.prime_kernel("ln_phi")(7) == doctest::Approx(std::log(6.0)));
    CHECK(r.prime_kernel("n_over_phi")(2) == 2.0);
    CHECK(r.prime_kernel("n_over_phi")(3) == 1.5);
    CHECK(r.prime_kernel("ratio1")(2) == 7.0);
    CHECK(r.prime_kernel("ratio1")(3) == 6.5);
    CHECK(r.prime_kernel("ratio1")(5) == 7.75);
    CHECK(r.prime_kernel("ratio2")(3) == 13.0);
    CHECK(r.prime_kernel("ratio2")(5) == doctest::Approx(31.0 / 3.0).epsilon(1e-15));
    CHECK(r.prime_kernel("ratio2")(7) == 11.4);
    CHECK(r.prime_kernel("sigma2")(3) == 10.0);
    CHECK(r.prime_kernel("sigma_k:3")(2) == 9.0);
    CHECK(r.prime_kernel("ln_tau_over_p")(2) == 0.0);
    CHECK(r.prime_kernel("ln_tau_over_p")(5) < 0.0);
    CHECK(r.prime_power_kernel("tau").exact(2, 7) == 8);
    CHECK(r.prime_power_kernel("phi").exact(3, 2) == 6);
    CHECK(r.prime_power_kernel("sigma_k:2").exact(2, 2) == 21);
    CHECK(r.prime_power_kernel("ln_tau_over_id")(2, 1) == doctest::Approx(0.0));
}

TEST_CASE("kernel domain is enforced")
{
    const auto& ratio2 = registry().prime_kernel("ratio2");
    CHECK_THROWS_AS(ratio2(2), KernelDomainError);
    CHECK(ratio2.extend(table().factorize(2)) == -std::numeric_limits<double>::infinity());
    try {
        ratio2(2);
    } catch (const NotApplicable& e) {
        CHECK(e.reason() == "kernel_domain");
    }
}

TEST_CASE("integer extensions agree with the arithmetic functions")
{
    const auto& r = registry();
    for (std::uint64_t x = 2; x <= 3000; ++x) {
        const auto f = table().factorize(x);
        REQUIRE(r.prime_kernel("ln_phi").extend(f) == doctest::Approx(std::log(double(ref::phi(x)))));
        REQUIRE(r.prime_kernel("ln_sigma").extend(f) == doctest::Approx(std::log(double(ref::sigma(x, 1)))));
        REQUIRE(r.prime_kernel("phi").extend(f) == double(ref::phi(x)));
        REQUIRE(r.prime_kernel("sigma2").extend(f) == double(ref::sigma(x, 2)));
        REQUIRE(r.prime_kernel("ratio1").extend(f) == r.prime_kernel("ratio1").eval(x));
    }
}

TEST_CASE("registration rejects a false monotonicity claim with a witness")
{
    PrimeTable t(1000);
    KernelRegistry r(t, 3, 1000);
    PrimeKernel fake{"fake_decreasing", [](std::uint64_t p) { return double(p); }, 2, Monotonicity::decreasing, 2,
                     Positivity::positive, {}};
    try {
        r.add(fake);
        FAIL("registration accepted a non-decreasing kernel");
    } catch (const RegistrationError& e) {
        CHECK(e.witness() == 3);
    }
    CHECK_THROWS_AS(r.prime_kernel("fake_decreasing"), LookupError);
}

TEST_CASE("registration rejects false positivity and false increasing claims")
{
    PrimeTable t(1000);
    KernelRegistry r(t, 3, 1000);
    try {
        r.add(PrimeKernel{"neg", [](std::uint64_t p) { return 5.0 - double(p); }, 2, Monotonicity::none, 2,
                          Positivity::nonnegative, {}});
        FAIL("accepted");
    } catch (const RegistrationError& e) {
        CHECK(e.witness() == 7);
    }
    // Dips at 11 after the declared threshold.
    try {
        r.add(PrimeKernel{"dip", [](std::uint64_t p) { return p == 11 ? 0.0 : double(p); }, 2,
                          Monotonicity::increasing_from, 3, Positivity::nonnegative, {}});
        FAIL("accepted");
    } catch (const RegistrationError& e) {
        CHECK(e.witness() == 11);
    }
    // ratio1 is not increasing from 2: ratio1(3) < ratio1(2).
    auto ratio1 = registry().prime_kernel("ratio1");
    ratio1.id = "ratio1_from_2";
    ratio1.threshold = 2;
    try {
        r.add(ratio1);
        FAIL("accepted");
    } catch (const RegistrationError& e) {
        CHECK(e.witness() == 3);
    }
}

TEST_CASE("registration rejects duplicates and bad thresholds")
{
    PrimeTable t(1000);
    KernelRegistry r(t, 3, 1000);
    CHECK_THROWS_AS(r.add(registry().prime_kernel("phi")), RegistrationError);
    CHECK_THROWS_AS(r.add(PrimeKernel{"t4", [](std::uint64_t p) { return double(p); }, 2,
                                      Monotonicity::increasing_from, 4, Positivity::positive, {}}),
                    RegistrationError);
    const auto& ok = r.add(PrimeKernel{"id_p", [](std::uint64_t p) { return double(p); }, 2,
                                       Monotonicity::increasing_from, 2, Positivity::positive, {}});
    CHECK(ok(13) == 13.0);
}

TEST_CASE("lookup of unknown ids")
{
    CHECK_THROWS_AS(registry().prime_kernel("nope"), LookupError);
    CHECK_THROWS_AS(registry().prime_power_kernel("ratio1"), LookupError);
    CHECK_THROWS_AS(registry().prime_kernel("sigma_k:4"), LookupError);
    CHECK(KernelRegistry(table(), 5).prime_kernel("sigma_k:5")(2) == 33.0);
}

TEST_CASE("max_sigma_order")
{
    CHECK(max_sigma_order({}) == 0);
    CHECK(max_sigma_order({"phi", "sigma_k:7", "sigma_k:2"}) == 7);
    CHECK_THROWS_AS(max_sigma_order({"sigma_k:x"}), LookupError);
}

TEST_CASE("sup tracker")
{
    const auto& t = table();
    SupTracker s(t, [](const Factorization& f) { return std::log(double(euler_phi(f))); });
    CHECK(s.advance(1) == -std::numeric_limits<double>::infinity());
    CHECK(s.advance(2) == 0.0);
    CHECK(s.advance(10) == doctest::Approx(std::log(6.0)));
    CHECK(s.advance(10) == doctest::Approx(std::log(6.0)));
    CHECK(s.advance(11) == doctest::Approx(std::log(10.0)));
    CHECK(s.current_n() == 11);
    CHECK_THROWS_AS(s.advance(5), OrderingError);
}

TEST_CASE("sup tracker matches a direct maximum")
{
    const auto& t = table();
    const auto& k = registry().prime_kernel("ln_sigma");
    SupTracker s(t, [&k](const Factorization& f) { return k.extend(f); });
    double brute = -std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        brute = std::max(brute, std::log(double(ref::sigma(n, 1))));
        REQUIRE(s.advance(n) == doctest::Approx(brute).epsilon(1e-15));
    }
}

TEST_CASE("positivity implication chain")
{
    CHECK(implies(Positivity::greater_than_one, Positivity::at_least_one));
    CHECK(implies(Positivity::at_least_one, Positivity::nonnegative));
    CHECK(implies(Positivity::positive, Positivity::nonnegative));
    CHECK_FALSE(implies(Positivity::nonnegative, Positivity::positive));
    CHECK_FALSE(implies(Positivity::unrestricted, Positivity::nonnegative));
}
