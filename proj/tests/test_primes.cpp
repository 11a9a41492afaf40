#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "zifs/primes.hpp"

using namespace zifs;

namespace {

// Independent irreducibility oracle: z is prime iff norm(z) > 1 and no d with
// 1 < norm(d) < norm(z) divides z. Usable for small norms only.
bool prime_by_trial(const GaussInt& z) {
    mpz_class n = z.norm();
    if (n <= 1) return false;
    long bound = 1;
    while (mpz_class(bound) * bound < n) ++bound; // |d| <= sqrt(norm(z))
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            GaussInt d(x, y);
            mpz_class nd = d.norm();
            if (nd <= 1 || nd >= n) continue;
            if (divides(d, z)) return false;
        }
    return true;
}

// Independent two-squares oracle: enumerate s.
std::pair<mpz_class, mpz_class> two_squares_brute(const mpz_class& p) {
    for (mpz_class s = 1; 2 * s * s <= p; ++s) {
        mpz_class r = p - s * s, t;
        mpz_sqrt(t.get_mpz_t(), r.get_mpz_t());
        if (t * t == r) return {s, t};
    }
    FAIL("no two-squares decomposition found");
    return {0, 0};
}

struct Lcg {
    std::uint64_t s = 0x9d2c5680ca876af5ull;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    long value(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    GaussInt gauss(long bound) { return GaussInt(value(-bound, bound), value(-bound, bound)); }
};

} // namespace

TEST_CASE("primality matches trial division") {
    for (long x = -14; x <= 14; ++x)
        for (long y = -14; y <= 14; ++y) {
            GaussInt z(x, y);
            if (z.norm() > 200) continue;
            CHECK_MESSAGE(is_prime(z) == prime_by_trial(z), "at ", to_string(z));
        }
}

TEST_CASE("classification") {
    CHECK(classify(GaussInt(1, 1)) == PrimeClass::TypeII);
    CHECK(classify(GaussInt(1, -1)) == PrimeClass::TypeII);
    CHECK(classify(GaussInt(3, 0)) == PrimeClass::TypeI);
    CHECK(classify(GaussInt(0, -7)) == PrimeClass::TypeI);
    CHECK(classify(GaussInt(2, 1)) == PrimeClass::TypeIII);
    CHECK(classify(GaussInt(1, 2)) == PrimeClass::TypeIII);
    CHECK(classify(GaussInt(-2, 3)) == PrimeClass::TypeIII);
    CHECK_THROWS_AS(classify(GaussInt(2, 0)), domain_error);
    CHECK_THROWS_AS(classify(GaussInt(5, 0)), domain_error);
    CHECK_THROWS_AS(classify(GaussInt(1, 0)), domain_error);
    CHECK_THROWS_AS(classify(GaussInt(0, 0)), domain_error);
    CHECK_THROWS_AS(classify(GaussInt(4, 2)), domain_error);

    // the three classes exhaust the primes and are mutually exclusive:
    // every prime of norm <= 2000 lands in exactly one class, and the class
    // predicts the norm shape
    for (long x = 0; x <= 45; ++x)
        for (long y = 0; y <= 45; ++y) {
            GaussInt z(x, y);
            if (z.norm() > 2000 || !is_prime(z)) continue;
            PrimeClass c = classify(z);
            mpz_class n = z.norm();
            if (c == PrimeClass::TypeII) CHECK(n == 2);
            if (c == PrimeClass::TypeIII) CHECK(n % 4 == 1);
            if (c == PrimeClass::TypeI) {
                mpz_class s;
                mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
                CHECK(s * s == n);
                CHECK(s % 4 == 3);
            }
        }
}

TEST_CASE("two squares") {
    CHECK(two_squares(5) == std::make_pair(mpz_class(1), mpz_class(2)));
    CHECK(two_squares(13) == std::make_pair(mpz_class(2), mpz_class(3)));
    CHECK(two_squares(17) == std::make_pair(mpz_class(1), mpz_class(4)));
    CHECK_THROWS_AS(two_squares(7), domain_error);  // 3 mod 4
    CHECK_THROWS_AS(two_squares(2), domain_error);
    CHECK_THROWS_AS(two_squares(25), domain_error); // not prime

    // both routes (brute below 1e6, descent above) against the enumeration oracle
    for (long p : {5L, 13L, 17L, 29L, 97L, 10009L, 999961L}) {
        mpz_class mp(p);
        if (mp % 4 != 1 || !is_prime_integer(mp)) continue;
        auto got = two_squares(mp);
        auto want = two_squares_brute(mp);
        CHECK(got == want);
        CHECK(got.first < got.second);
        CHECK(got.first * got.first + got.second * got.second == mp);
    }
    for (long p : {1000037L, 1000081L, 1001593L, 16000057L}) {
        mpz_class mp(p);
        REQUIRE(is_prime_integer(mp));
        REQUIRE(mp % 4 == 1);
        auto got = two_squares(mp); // descent route
        auto want = two_squares_brute(mp);
        CHECK(got == want);
        CHECK(got.first * got.first + got.second * got.second == mp);
    }
}

TEST_CASE("factorization") {
    Factorization f = factor(GaussInt(10, 0));
    CHECK(f.unit == GaussInt(-1, 0));
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].prime == GaussInt(1, 1));
    CHECK(f.factors[0].exp == 2);
    CHECK(f.factors[1].prime == GaussInt(1, 2));
    CHECK(f.factors[1].exp == 1);
    CHECK(f.factors[2].prime == GaussInt(2, 1));
    CHECK(f.factors[2].exp == 1);
    CHECK(f.value() == GaussInt(10, 0));

    // units factor as themselves with an empty list
    for (GaussInt u : {GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1)}) {
        Factorization fu = factor(u);
        CHECK(fu.unit == u);
        CHECK(fu.factors.empty());
    }
    CHECK_THROWS_AS(factor(GaussInt(0, 0)), domain_error);

    // a factor beyond the trial-division bound exercises the splitting path
    Factorization big = factor(GaussInt(1000003, 0) * GaussInt(1, 2));
    REQUIRE(big.factors.size() == 2);
    CHECK(big.factors[0].prime == GaussInt(1, 2));
    CHECK(big.factors[1].prime == GaussInt(1000003, 0));
    CHECK(big.value() == GaussInt(1000003, 0) * GaussInt(1, 2));

    // norm beyond 2^128 is rejected, not attempted
    mpz_class huge = (mpz_class(1) << 70) + 1;
    CHECK_THROWS_AS(factor(GaussInt(huge, huge)), resource_error);

    Lcg rng;
    int done = 0;
    for (int k = 0; done < 150; ++k) {
        GaussInt z = rng.gauss(600);
        if (z.is_zero()) continue;
        ++done;
        Factorization fz = factor(z);
        CHECK(fz.value() == z);
        CHECK(fz.unit.is_unit());
        mpz_class prev_norm = 0;
        for (std::size_t j = 0; j < fz.factors.size(); ++j) {
            const PrimeFactor& pf = fz.factors[j];
            CHECK(is_prime(pf.prime));
            CHECK(is_canonical_associate(pf.prime));
            CHECK(pf.exp >= 1);
            if (j > 0) CHECK(norm_lex_less(fz.factors[j - 1].prime, pf.prime));
            for (std::size_t l = j + 1; l < fz.factors.size(); ++l)
                CHECK(fz.factors[j].prime != fz.factors[l].prime);
        }
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(GaussInt(1, 1), GaussInt(4, 0)) == 4);
    CHECK(valuation(GaussInt(1, 2), GaussInt(15, 0)) == 1);
    CHECK(valuation(GaussInt(3, 0), GaussInt(9, 0)) == 2);
    CHECK(valuation(GaussInt(3, 0), GaussInt(5, 0)) == 0);
    CHECK(valuation(GaussInt(1, 1), GaussInt(-1024, 0)) == 20);
    CHECK_THROWS_AS(valuation(GaussInt(4, 0), GaussInt(8, 0)), domain_error);
    CHECK_THROWS_AS(valuation(GaussInt(1, 1), GaussInt(0, 0)), domain_error);

    // additivity over products
    Lcg rng;
    for (GaussInt g : {GaussInt(1, 1), GaussInt(2, 1), GaussInt(3, 0)}) {
        for (int k = 0; k < 60; ++k) {
            GaussInt a = rng.gauss(200), b = rng.gauss(200);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(valuation(g, a * b) == valuation(g, a) + valuation(g, b));
        }
    }
}

TEST_CASE("integer factg helpers") {
    CHECK(is_prime_integer(2));
    CHECK(is_prime_integer(1000003));
    CHECK_FALSE(is_prime_integer(1));
    CHECK_FALSE(is_prime_integer(1000001)); // 101 * 9901
    auto f = factor_integer(720);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair(mpz_class(2), 4ul));
    CHECK(f[1] == std::make_pair(mpz_class(3), 2ul));
    CHECK(f[2] == std::make_pair(mpz_class(5), 1ul));
    CHECK(factor_integer(1).empty());
    // two co-large factors force the rho path
    mpz_class n = mpz_class(1000003) * 1000033;
    auto g = factor_integer(n);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == 1000003);
    CHECK(g[1].first == 1000033);
}

TEST_CASE("prime families") {
    PrimeFamily fam = make_family({GaussInt(1, 1), GaussInt(2, 1), GaussInt(1, 2), GaussInt(3, 0)});
    REQUIRE(fam.gamma2.has_value());
    CHECK(*fam.gamma2 == GaussInt(1, 1));
    REQUIRE(fam.pairs.size() == 1);
    CHECK(fam.pairs[0].first == GaussInt(2, 1));
    CHECK(fam.pairs[0].second == GaussInt(1, 2));
    REQUIRE(fam.singles.size() == 1);
    CHECK(fam.singles[0] == GaussInt(3, 0));

    // a lone TypeIII prime is a single
    PrimeFamily solo = make_family({GaussInt(2, 1)});
    CHECK(solo.pairs.empty());
    REQUIRE(solo.singles.size() == 1);
    CHECK(solo.singles[0] == GaussInt(2, 1));

    // non-canonical input normalizes; associates are rejected
    PrimeFamily norm = make_family({GaussInt(1, -1)});
    CHECK(*norm.gamma2 == GaussInt(1, 1));
    CHECK_THROWS_AS(make_family({GaussInt(1, 1), GaussInt(1, -1)}), domain_error);
    CHECK_THROWS_AS(make_family({GaussInt(2, 1), GaussInt(-1, -2), GaussInt(1, 2)}), domain_error);
    CHECK_THROWS_AS(make_family({GaussInt(4, 0)}), domain_error); // not prime

    // the empty family is valid and spans only the trivial denominator
    PrimeFamily empty = make_family({});
    CHECK_FALSE(empty.gamma2.has_value());
    CHECK(empty.pairs.empty());
    CHECK(empty.singles.empty());
}
