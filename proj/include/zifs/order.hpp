#pragma once

#include "zifs/gauss.hpp"
#include "zifs/height.hpp"
#include "zifs/primes.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace zifs {

// Euclidean remainder of x modulo a nonzero m.  Because the division rounding
// is a fixed function, the remainder is a canonical class representative:
// x == y (mod m) iff reduce(x, m) == reduce(y, m).
GaussInt reduce(const GaussInt& x, const GaussInt& m);

// A residue class modulo a fixed nonzero modulus, stored by its Euclidean
// remainder.  Two residues with the same modulus are equal iff the modulus
// divides the difference of their representatives.
struct Residue {
    GaussInt rep;
    GaussInt modulus;

    Residue(const GaussInt& value, const GaussInt& mod);
    bool operator==(const Residue& o) const;
    bool operator!=(const Residue& o) const { return !(*this == o); }
    Residue operator*(const Residue& o) const;
    bool is_one() const;
};

// base^e modulo m (binary exponentiation over the exact exponent), e >= 0.
GaussInt modpow(const GaussInt& base, const mpz_class& e, const GaussInt& m);

// Order of the unit group of Z[i]/(g): multiplicative over coprime factors,
// and norm(p)^k - norm(p)^(k-1) on a prime power p^k.  g must be nonzero;
// units give 1.
mpz_class euler_phi_zi(const GaussInt& g);

// Multiplicative order of alpha modulo g: the least k >= 1 with alpha^k == 1
// (mod g), computed by divisor descent from euler_phi_zi(g).  Requires
// gcd(alpha, g) to be a unit; ord(alpha, unit) == 1 by convention.
mpz_class ord(const GaussInt& alpha, const GaussInt& g);

// Data allowing ord(alpha; gamma^n) to be read off for every n >= 1 without
// exponentiation at level n, for a prime gamma not dividing alpha.
//
//   d = ord(alpha; gamma), and m = nu_gamma(alpha^d - 1), infinite (nullopt)
//   when alpha^d == 1 exactly (only units can do this; the order is then d
//   at every level).
//
// For an inert or split gamma (odd height p), the order is d up to level m
// and multiplies by p each level past m.
//
// For the ramified prime (associate of 1+i) the base order is d = 1, and the
// orders are read from the valuation chain v_j = nu_gamma(alpha^(2^j) - 1):
// ord(alpha; gamma^n) = 2^(least j with v_j >= n).  The chain is stored up to
// the first entry >= 3, after which it provably advances by exactly 2 per
// step; `chain_ends_one` marks the case where the next squaring hits 1
// exactly (v = infinity from there on).
struct OrderLiftData {
    GaussInt alpha;
    GaussInt gamma; // canonical associate
    PrimeClass cls{};
    mpz_class d;
    std::optional<unsigned long> m;
    std::vector<unsigned long> chain; // ramified case only: v_0, v_1, ...
    bool chain_ends_one = false;      // ramified case: alpha^(2^chain.size()) == 1
};

OrderLiftData make_order_lift_data(const GaussInt& alpha, const GaussInt& gamma);

// ord(alpha; gamma^n) from precomputed lift data, n >= 1.
mpz_class order_lift(const OrderLiftData& data, unsigned long n);

// ord(alpha, g) for composite g as the lcm of the prime-power orders obtained
// through order_lift; agrees with ord computed directly.
mpz_class crt_order(const GaussInt& alpha, const GaussInt& g);

// Exact number of the form rat * sqrt(2)^root with root in {0, 1}; closed
// under multiplication and exactly comparable by squaring.  Represents bound
// values that scale by half-integer powers of 2.
class SqrtTwoRational {
public:
    SqrtTwoRational() : rat_(1), root_(0) {}
    static SqrtTwoRational pow2_half(long e); // 2^(e/2)

    SqrtTwoRational& operator*=(const mpq_class& r);
    SqrtTwoRational& operator*=(const SqrtTwoRational& o);

    const mpq_class& rational_part() const { return rat_; }
    int root_part() const { return root_; }
    mpq_class squared() const;
    double to_double() const;

private:
    mpq_class rat_; // > 0
    int root_;      // 0 or 1
};

inline SqrtTwoRational operator*(SqrtTwoRational a, const SqrtTwoRational& b) { return a *= b; }
bool operator<=(const SqrtTwoRational& a, const mpz_class& n);

// Precomputed per-prime lift data for a denominator family, together with
// the constants of the effective order lower bound:
//
//   Q  = product over the pair and single members tau of H(tau)^(m_tau),
//   c2 = min over n >= 1 of ord(alpha; g2^n) * 2^(-n/2) for the ramified
//        member g2 (an exact power of sqrt(2), attained within the stored
//        valuation chain); 1 when the family has no ramified member,
//   c3 = c2 / Q.
//
// For exponents (h, r_1, s_1, ..., r_q, s_q, n_1, ..., n_k) in family order,
// the certified bound
//
//   c3 * 2^(h/2) * prod_i H(eta_i)^max(r_i, s_i) * prod_j H(beta_j)^(n_j)
//
// never exceeds ord(alpha; g2^h * prod eta_i^(r_i) xi_i^(s_i) * prod
// beta_j^(n_j)).  Construction validates the hypotheses: alpha nonzero and
// not a unit, all members prime, pairwise non-associate, none dividing
// alpha, pair members conjugate with equal heights, single heights pairwise
// distinct.
struct LowerBoundCertificate {
    GaussInt alpha;
    std::optional<OrderLiftData> ramified;
    std::vector<std::pair<OrderLiftData, OrderLiftData>> pairs;
    std::vector<OrderLiftData> singles;
    mpz_class Q;
    SqrtTwoRational c2;
    SqrtTwoRational c3;

    std::size_t exponent_count() const {
        return (ramified ? 1 : 0) + 2 * pairs.size() + singles.size();
    }
};

LowerBoundCertificate make_certificate(const GaussInt& alpha, const PrimeFamily& family);

// The certified lower bound for one exponent tuple (see above).
SqrtTwoRational order_lower_bound(const LowerBoundCertificate& cert,
                                  const std::vector<unsigned long>& exponents);

// The modulus the tuple describes: the product of the family members raised
// to the given exponents.
GaussInt certificate_modulus(const LowerBoundCertificate& cert,
                             const std::vector<unsigned long>& exponents);

} // namespace zifs
