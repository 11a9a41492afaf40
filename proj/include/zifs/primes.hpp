#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zifs/gauss.hpp"

namespace zifs {

// TypeI: associate of a rational prime p = 3 (mod 4).
// TypeII: associate of 1+i (the ramified prime).
// TypeIII: norm is a rational prime p = 1 (mod 4).
enum class PrimeClass { TypeI, TypeII, TypeIII };

struct PrimeFactor {
    GaussInt prime; // canonical associate
    unsigned long exp;
};

struct Factorization {
    GaussInt unit;
    std::vector<PrimeFactor> factors; // distinct canonical primes, norm-lex sorted
    GaussInt value() const;
};

bool is_prime(const GaussInt& z);
PrimeClass classify(const GaussInt& z); // domain error if z is not prime

// For a rational prime p = 1 (mod 4): the unique s < t with s^2 + t^2 = p.
// Brute force below 10^6, Cornacchia-style descent above.
std::pair<mpz_class, mpz_class> two_squares(const mpz_class& p);

Factorization factor(const GaussInt& z); // z != 0

// Exponent of the prime gamma in alpha (alpha != 0).
unsigned long valuation(const GaussInt& gamma, const GaussInt& alpha);

// Rational-integer helpers backing the Gaussian routines.
bool is_prime_integer(const mpz_class& n);
// n >= 1; trial division to 10^6, then deterministic Pollard-Brent splitting.
// Inputs beyond 2^128 are rejected with a resource error.
std::vector<std::pair<mpz_class, unsigned long>> factor_integer(const mpz_class& n);

// A family of pairwise non-associate canonical primes, grouped by class:
// at most one ramified prime, conjugate TypeIII pairs (eta, xi), and
// TypeI/TypeIII singles with pairwise distinct heights.
struct PrimeFamily {
    std::optional<GaussInt> gamma2;
    std::vector<std::pair<GaussInt, GaussInt>> pairs;
    std::vector<GaussInt> singles;

    std::vector<GaussInt> all_primes() const;
};

// Groups and validates a prime list (same-norm TypeIII primes pair up as
// conjugates; a repeated associate is a domain error).
PrimeFamily make_family(const std::vector<GaussInt>& primes);

} // namespace zifs
