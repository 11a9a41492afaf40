#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zifs/height.hpp"

#include <cstdint>
#include <vector>

using namespace zifs;

namespace {

// Independent restatement of the definition: norm divided by the gcd of the
// components, straight from mpz primitives.
mpz_class height_raw(const GaussInt& z) {
    if (z.is_zero()) return 0;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), z.re().get_mpz_t(), z.im().get_mpz_t());
    return z.norm() / g;
}

struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    GaussInt gauss(long bound) { return GaussInt(range(-bound, bound), range(-bound, bound)); }
};

std::vector<GaussInt> canonical_primes_up_to_norm(long cap) {
    std::vector<GaussInt> out;
    for (long a = 0; a * a <= cap; ++a)
        for (long b = 0; a * a + b * b <= cap; ++b) {
            GaussInt z(a, b);
            if (is_prime(z) && is_canonical_associate(z)) out.push_back(z);
        }
    return out;
}

} // namespace

TEST_CASE("height definition and basic values") {
    CHECK(height(GaussInt(0, 0)) == 0);
    CHECK(height(GaussInt(1, 1)) == 2);
    CHECK(height(GaussInt(3, 0)) == 3);
    CHECK(height(GaussInt(2, 1)) == 5);
    CHECK(height(GaussInt(1, 0)) == 1);
    CHECK(height(GaussInt(0, 1)) == 1);
    CHECK(height(GaussInt(4, 6)) == 26); // 52 / gcd(4,6)
    // H(N) = N for rational integers
    for (long n = 1; n <= 50; ++n) CHECK(height(GaussInt(n, 0)) == n);

    Lcg rng(0x9e3779b97f4a7c15ULL);
    for (int it = 0; it < 2000; ++it) {
        GaussInt z = rng.gauss(200);
        mpz_class h = height(z);
        CHECK(h == height_raw(z));
        if (!z.is_zero()) {
            CHECK(h > 0);
            CHECK(z.norm() % h == 0);
            // invariance under unit multiplication
            CHECK(height(GaussInt(0, 1) * z) == h);
            CHECK(height(-z) == h);
            CHECK(height(z.conj()) == h);
        }
    }
}

TEST_CASE("prime-power closed forms match the definition") {
    CHECK(height_prime_power(GaussInt(1, 1), 5) == 8);
    CHECK(height_prime_power(GaussInt(3, 0), 4) == 81);
    CHECK(height_prime_power(GaussInt(2, 1), 3) == 125);
    CHECK_THROWS_AS(height_prime_power(GaussInt(4, 0), 2), domain_error);
    CHECK_THROWS_AS(height_prime_power(GaussInt(0, 0), 1), domain_error);

    for (const GaussInt& g : canonical_primes_up_to_norm(200)) {
        GaussInt pw(1, 0);
        for (unsigned long n = 1; n <= 12; ++n) {
            pw *= g;
            CHECK(height_prime_power(g, n) == height_raw(pw));
        }
    }
    // the closed form is associate-invariant
    CHECK(height_prime_power(GaussInt(-1, -1), 5) == 8);
    CHECK(height_prime_power(GaussInt(0, -3), 4) == 81);
    CHECK(height_prime_power(GaussInt(-1, 2), 3) == 125);
}

TEST_CASE("conjugate-pair closed form matches the definition") {
    CHECK(height_conjugate_pair(GaussInt(2, 1), 3, 1) == 125);
    CHECK(height_conjugate_pair(GaussInt(2, 1), 0, 0) == 1);
    CHECK(height_conjugate_pair(GaussInt(3, 2), 2, 2) == 169);
    CHECK_THROWS_AS(height_conjugate_pair(GaussInt(3, 0), 1, 1), domain_error);
    CHECK_THROWS_AS(height_conjugate_pair(GaussInt(1, 1), 1, 1), domain_error);

    for (const GaussInt& g : canonical_primes_up_to_norm(200)) {
        if (classify(g) != PrimeClass::TypeIII) continue;
        GaussInt xi = canonical_associate(g.conj()).value;
        for (unsigned long n = 0; n <= 6; ++n)
            for (unsigned long m = 0; m <= 6; ++m) {
                GaussInt prod = g.pow(n) * xi.pow(m);
                CHECK(height_conjugate_pair(g, n, m) == height_raw(prod));
            }
    }
}

TEST_CASE("scalar rule and sub-multiplicativity") {
    Lcg rng(0x51ab3cULL);
    // H(a*z) = |a| * H(z) for real or purely imaginary integer a
    for (long a = -50; a <= 50; ++a) {
        for (int it = 0; it < 10; ++it) {
            GaussInt z = rng.gauss(60);
            mpz_class expect = abs(mpz_class(a)) * height(z);
            CHECK(height(GaussInt(a, 0) * z) == expect);
            CHECK(height(GaussInt(0, a) * z) == expect);
        }
    }
    // H(xy) <= H(x)H(y), exhaustively on a small box and on random samples
    for (long a = -7; a <= 7; ++a)
        for (long b = -7; b <= 7; ++b)
            for (long c = -7; c <= 7; ++c)
                for (long d = -7; d <= 7; ++d) {
                    GaussInt x(a, b), y(c, d);
                    CHECK(height(x * y) <= height(x) * height(y));
                }
    for (int it = 0; it < 5000; ++it) {
        GaussInt x = rng.gauss(500), y = rng.gauss(500);
        CHECK(height(x * y) <= height(x) * height(y));
    }
}

TEST_CASE("prime heights are primes and divisibility pattern holds") {
    for (const GaussInt& g : canonical_primes_up_to_norm(10000)) {
        mpz_class h = height(g);
        CHECK(is_prime_integer(h));
        CHECK(divides(g, GaussInt(h, mpz_class(0))));
        unsigned long expect = classify(g) == PrimeClass::TypeII ? 2 : 1;
        CHECK(valuation(g, GaussInt(h, mpz_class(0))) == expect);
    }
}

TEST_CASE("height-N denominators are exactly the divisors of N") {
    // w/g ranges over (1/N)Z[i] for H(g) = N: one inclusion is H(N) = N, the
    // other is that H(g) = N forces g | N, checked here by exhaustion.
    for (long n = 1; n <= 50; ++n) {
        CHECK(height(GaussInt(n, 0)) == n);
        long cap = n * n;
        for (long a = -n; a * a <= cap; ++a)
            for (long b = 0; a * a + b * b <= cap; ++b) {
                GaussInt g(a, b);
                if (g.is_zero() || height(g) != n) continue;
                CHECK(divides(g, GaussInt(n, 0)));
            }
    }
}
