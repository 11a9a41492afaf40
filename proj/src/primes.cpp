#include "zifs/primes.hpp"

#include <algorithm>
#include <map>

namespace zifs {

GaussInt Factorization::value() const {
    GaussInt v = unit;
    for (const PrimeFactor& f : factors) v *= f.prime.pow(f.exp);
    return v;
}

bool is_prime_integer(const mpz_class& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

constexpr unsigned long kTrialBound = 1000000;

// Brent-cycle Pollard rho with a deterministic parameter sequence.
// n must be odd, composite and > 1; returns a nontrivial factor.
mpz_class pollard_brent(const mpz_class& n) {
    const unsigned long m = 128;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, d = 1, q = 1, x0, ys;
        unsigned long r = 1;
        while (d == 1) {
            x0 = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && d == 1; k += m) {
                ys = y;
                const unsigned long steps = std::min(m, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    mpz_class diff = x0 - y;
                    if (diff < 0) diff += n;
                    q = q * diff % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            do {
                ys = (ys * ys + c) % n;
                mpz_class diff = x0 - ys;
                if (diff < 0) diff += n;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

} // namespace

std::vector<std::pair<mpz_class, unsigned long>> factor_integer(const mpz_class& n) {
    if (n < 1) throw domain_error("factor_integer requires n >= 1");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128)
        throw resource_error("factorization input exceeds the 2^128 cap");
    std::map<mpz_class, unsigned long> acc;
    mpz_class m = n;
    for (unsigned long d = 2; d <= kTrialBound && mpz_class(d) * d <= m; d = (d == 2 ? 3 : d + 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            ++acc[mpz_class(d)];
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        }
    }
    std::vector<mpz_class> stack;
    if (m > 1) stack.push_back(m);
    while (!stack.empty()) {
        mpz_class x = stack.back();
        stack.pop_back();
        if (is_prime_integer(x)) {
            ++acc[x];
            continue;
        }
        mpz_class f = pollard_brent(x);
        stack.push_back(f);
        stack.push_back(x / f);
    }
    return {acc.begin(), acc.end()};
}

std::pair<mpz_class, mpz_class> two_squares(const mpz_class& p) {
    if (p % 4 != 1 || !is_prime_integer(p))
        throw domain_error("two_squares requires a prime = 1 (mod 4)");
    if (p < kTrialBound) {
        for (mpz_class s = 1; 2 * s * s <= p; ++s) {
            mpz_class r = p - s * s, t;
            mpz_sqrt(t.get_mpz_t(), r.get_mpz_t());
            if (t * t == r) return {s, t};
        }
        throw domain_error("two_squares: no decomposition found"); // unreachable for primes
    }
    // Find x with x^2 = -1 (mod p) from the quartic power of a non-residue,
    // then run the Euclidean descent until the first remainder below sqrt(p).
    mpz_class e = (p - 1) / 4;
    for (unsigned long a = 2;; ++a) {
        mpz_class x, base(a);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if ((x * x + 1) % p != 0) continue;
        mpz_class r0 = p, r1 = x;
        while (r1 * r1 > p) {
            mpz_class r2 = r0 % r1;
            r0 = r1;
            r1 = r2;
        }
        mpz_class rem = p - r1 * r1, t;
        mpz_sqrt(t.get_mpz_t(), rem.get_mpz_t());
        if (t * t != rem) continue; // defensive; does not happen for prime p
        mpz_class s = r1;
        if (s > t) std::swap(s, t);
        return {s, t};
    }
}

bool is_prime(const GaussInt& z) {
    mpz_class n = z.norm();
    if (n <= 1) return false;
    if (is_prime_integer(n)) return true; // norm 2 or a split prime = 1 (mod 4)
    if (z.re() != 0 && z.im() != 0) return false;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s * s == n && s % 4 == 3 && is_prime_integer(s);
}

PrimeClass classify(const GaussInt& z) {
    if (!is_prime(z)) throw domain_error("classify requires a Gaussian prime, got " + to_string(z));
    mpz_class n = z.norm();
    if (n == 2) return PrimeClass::TypeII;
    if (is_prime_integer(n)) return PrimeClass::TypeIII;
    return PrimeClass::TypeI;
}

Factorization factor(const GaussInt& z) {
    if (z.is_zero()) throw domain_error("factor(0) is undefined");
    Factorization out;
    out.unit = GaussInt(1, 0);
    mpz_class n = z.norm();
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128)
        throw resource_error("factorization input exceeds the 2^128 cap");
    GaussInt rem = z;
    for (const auto& [p, pe] : factor_integer(n)) {
        std::vector<GaussInt> candidates;
        if (p == 2) {
            candidates.push_back(GaussInt(1, 1));
        } else if (p % 4 == 3) {
            candidates.push_back(GaussInt(p, mpz_class(0)));
        } else {
            auto [s, t] = two_squares(p);
            candidates.push_back(canonical_associate(GaussInt(s, t)).value);
            candidates.push_back(canonical_associate(GaussInt(s, -t)).value);
        }
        for (const GaussInt& pi : candidates) {
            unsigned long k = 0;
            while (divides(pi, rem)) {
                rem = div_exact(rem, pi);
                ++k;
            }
            if (k > 0) out.factors.push_back({pi, k});
        }
    }
    if (!rem.is_unit()) throw domain_error("factor: nontrivial cofactor remained");
    out.unit = rem;
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimeFactor& a, const PrimeFactor& b) {
                  return norm_lex_less(a.prime, b.prime);
              });
    return out;
}

unsigned long valuation(const GaussInt& gamma, const GaussInt& alpha) {
    if (!is_prime(gamma))
        throw domain_error("valuation requires a Gaussian prime, got " + to_string(gamma));
    if (alpha.is_zero()) throw domain_error("valuation of 0 is +infinity");
    unsigned long v = 0;
    GaussInt a = alpha;
    while (divides(gamma, a)) {
        a = div_exact(a, gamma);
        ++v;
    }
    return v;
}

std::vector<GaussInt> PrimeFamily::all_primes() const {
    std::vector<GaussInt> out;
    if (gamma2) out.push_back(*gamma2);
    for (const auto& [eta, xi] : pairs) {
        out.push_back(eta);
        out.push_back(xi);
    }
    for (const GaussInt& b : singles) out.push_back(b);
    return out;
}

PrimeFamily make_family(const std::vector<GaussInt>& primes) {
    PrimeFamily fam;
    std::vector<GaussInt> canon;
    for (const GaussInt& p : primes) {
        GaussInt c = canonical_associate(p).value;
        if (!is_prime(c)) throw domain_error("family member is not prime: " + to_string(p));
        for (const GaussInt& q : canon)
            if (q == c) throw domain_error("family repeats an associate class: " + to_string(p));
        canon.push_back(c);
    }
    std::map<mpz_class, std::vector<GaussInt>> type3_by_norm;
    for (const GaussInt& c : canon) {
        switch (classify(c)) {
            case PrimeClass::TypeII:
                fam.gamma2 = c;
                break;
            case PrimeClass::TypeI:
                fam.singles.push_back(c);
                break;
            case PrimeClass::TypeIII:
                type3_by_norm[c.norm()].push_back(c);
                break;
        }
    }
    for (const auto& [nm, group] : type3_by_norm) {
        if (group.size() == 1) {
            fam.singles.push_back(group[0]);
        } else {
            // two non-associate primes over the same split norm are conjugates
            fam.pairs.emplace_back(group[0], group[1]);
        }
    }
    return fam;
}

} // namespace zifs
