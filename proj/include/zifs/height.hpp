#pragma once

#include "zifs/gauss.hpp"
#include "zifs/primes.hpp"

namespace zifs {

// Denominator height H(a+bi) = (a^2+b^2)/gcd(a,b), with H(0) = 0.  H(z) is a
// positive integer dividing norm(z) for z != 0, invariant under unit
// multiplication, and is the natural common denominator of w/z: for any w,
// w/z lies in the lattice (1/H(z))*Z[i].
mpz_class height(const GaussInt& z);

// H(gamma^n) computed by closed form, without expanding the power:
//   |gamma|^n      for an inert rational prime (TypeI),
//   2^(n - n/2)    for an associate of 1+i (TypeII),
//   norm(gamma)^n  for a split prime (TypeIII).
// Throws domain_error if gamma is not prime.
mpz_class height_prime_power(const GaussInt& gamma, unsigned long n);

// H(alpha^n * xi^m) where alpha is a split (TypeIII) prime and xi is the
// associate of conj(alpha): equals H(alpha)^max(n, m).  The conjugate factor
// is supplied internally; callers never pass the second prime.  Throws
// domain_error if alpha is not a split prime.
mpz_class height_conjugate_pair(const GaussInt& alpha, unsigned long n, unsigned long m);

} // namespace zifs
