#include "zifs/order.hpp"

#include <algorithm>
#include <cmath>

namespace zifs {

GaussInt reduce(const GaussInt& x, const GaussInt& m) { return euclid_divmod(x, m).r; }

Residue::Residue(const GaussInt& value, const GaussInt& mod)
    : rep(reduce(value, mod)), modulus(mod) {}

bool Residue::operator==(const Residue& o) const {
    return modulus == o.modulus && divides(modulus, rep - o.rep);
}

Residue Residue::operator*(const Residue& o) const {
    if (modulus != o.modulus) throw domain_error("residue modulus mismatch");
    return Residue(rep * o.rep, modulus);
}

bool Residue::is_one() const { return divides(modulus, rep - GaussInt(1, 0)); }

GaussInt modpow(const GaussInt& base, const mpz_class& e, const GaussInt& m) {
    if (e < 0) throw domain_error("modpow requires a nonnegative exponent");
    GaussInt result = reduce(GaussInt(1, 0), m);
    GaussInt b = reduce(base, m);
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        result = reduce(result * result, m);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            result = reduce(result * b, m);
    }
    return result;
}

mpz_class euler_phi_zi(const GaussInt& g) {
    if (g.is_zero()) throw domain_error("euler_phi_zi requires a nonzero modulus");
    mpz_class out = 1;
    for (const PrimeFactor& f : factor(g).factors) {
        mpz_class n = f.prime.norm(), pk, pk1;
        mpz_pow_ui(pk.get_mpz_t(), n.get_mpz_t(), f.exp);
        mpz_pow_ui(pk1.get_mpz_t(), n.get_mpz_t(), f.exp - 1);
        out *= pk - pk1;
    }
    return out;
}

mpz_class ord(const GaussInt& alpha, const GaussInt& g) {
    if (g.is_zero()) throw domain_error("ord requires a nonzero modulus");
    if (g.is_unit()) return 1;
    if (!gauss_gcd(alpha, g).is_unit())
        throw domain_error("ord requires gcd(alpha, modulus) to be a unit");
    mpz_class e = euler_phi_zi(g);
    for (const auto& [p, k] : factor_integer(e)) {
        for (unsigned long i = 0; i < k; ++i) {
            mpz_class candidate = e / p;
            if (reduce(modpow(alpha, candidate, g) - GaussInt(1, 0), g).is_zero())
                e = candidate;
            else
                break;
        }
    }
    return e;
}

namespace {

GaussInt exact_pow(const GaussInt& base, const mpz_class& e) {
    GaussInt result(1, 0);
    GaussInt b = base;
    for (mp_bitcnt_t i = 0, n = mpz_sizeinbase(e.get_mpz_t(), 2); i < n; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result *= b;
        if (i + 1 < n) b *= b;
    }
    return e == 0 ? GaussInt(1, 0) : result;
}

} // namespace

OrderLiftData make_order_lift_data(const GaussInt& alpha, const GaussInt& gamma) {
    GaussInt g = canonical_associate(gamma).value;
    if (!is_prime(g)) throw domain_error("order lifting requires a prime, got " + to_string(gamma));
    if (divides(g, alpha)) throw domain_error("order lifting requires the prime not to divide alpha");

    OrderLiftData data;
    data.alpha = alpha;
    data.gamma = g;
    data.cls = classify(g);
    data.d = ord(alpha, g);

    GaussInt ad = exact_pow(alpha, data.d);
    if (ad == GaussInt(1, 0)) {
        data.m = std::nullopt; // alpha is a root of unity: order d at every level
        return data;
    }
    data.m = valuation(g, ad - GaussInt(1, 0));

    if (data.cls == PrimeClass::TypeII) {
        // base order is always 1 here: every unit residue class is 1
        if (data.d != 1) throw domain_error("inconsistent base order at the ramified prime");
        data.chain.push_back(*data.m);
        GaussInt x = ad;
        while (data.chain.back() < 3) {
            x *= x;
            if (x == GaussInt(1, 0)) {
                data.chain_ends_one = true;
                break;
            }
            data.chain.push_back(valuation(g, x - GaussInt(1, 0)));
        }
    }
    return data;
}

mpz_class order_lift(const OrderLiftData& data, unsigned long n) {
    if (n == 0) throw domain_error("order_lift requires n >= 1");
    if (data.d < 1 || !is_prime(data.gamma) || (data.m && *data.m < 1))
        throw domain_error("invalid order lift data");
    if (!data.m) return data.d;
    unsigned long m = *data.m;

    if (data.cls != PrimeClass::TypeII) {
        if (n <= m) return data.d;
        mpz_class p = height(data.gamma), pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), n - m);
        return data.d * pw;
    }

    if (data.d != 1 || data.chain.empty() || data.chain[0] != m)
        throw domain_error("invalid order lift data");
    for (std::size_t j = 0; j < data.chain.size(); ++j)
        if (data.chain[j] >= n) return mpz_class(1) << j;
    if (data.chain_ends_one) return mpz_class(1) << data.chain.size();
    // stabilized tail: the valuation advances by exactly 2 per squaring
    unsigned long last = data.chain.back();
    unsigned long extra = (n - last + 1) / 2;
    return mpz_class(1) << (data.chain.size() - 1 + extra);
}

mpz_class crt_order(const GaussInt& alpha, const GaussInt& g) {
    if (g.is_zero()) throw domain_error("crt_order requires a nonzero modulus");
    if (g.is_unit()) return 1;
    if (!gauss_gcd(alpha, g).is_unit())
        throw domain_error("crt_order requires gcd(alpha, modulus) to be a unit");
    mpz_class out = 1;
    for (const PrimeFactor& f : factor(g).factors) {
        mpz_class o = order_lift(make_order_lift_data(alpha, f.prime), f.exp);
        mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), o.get_mpz_t());
    }
    return out;
}

SqrtTwoRational SqrtTwoRational::pow2_half(long e) {
    SqrtTwoRational v;
    long r = ((e % 2) + 2) % 2;
    long k = (e - r) / 2;
    if (k >= 0)
        v.rat_ = mpz_class(1) << k;
    else
        v.rat_ = mpq_class(mpz_class(1), mpz_class(1) << (-k));
    v.root_ = static_cast<int>(r);
    return v;
}

SqrtTwoRational& SqrtTwoRational::operator*=(const mpq_class& r) {
    rat_ *= r;
    return *this;
}

SqrtTwoRational& SqrtTwoRational::operator*=(const SqrtTwoRational& o) {
    rat_ *= o.rat_;
    root_ += o.root_;
    if (root_ == 2) {
        rat_ *= 2;
        root_ = 0;
    }
    return *this;
}

mpq_class SqrtTwoRational::squared() const {
    mpq_class s = rat_ * rat_;
    if (root_) s *= 2;
    return s;
}

double SqrtTwoRational::to_double() const {
    return rat_.get_d() * (root_ ? std::sqrt(2.0) : 1.0);
}

bool operator<=(const SqrtTwoRational& a, const mpz_class& n) {
    if (n < 0) return false;
    return a.squared() <= mpq_class(n) * mpq_class(n);
}

LowerBoundCertificate make_certificate(const GaussInt& alpha, const PrimeFamily& family) {
    if (alpha.is_zero()) throw domain_error("certificate requires nonzero alpha");
    if (alpha.is_unit())
        throw domain_error("certificate requires alpha that is not a root of unity");

    std::vector<GaussInt> seen;
    auto check_member = [&](const GaussInt& p) {
        GaussInt c = canonical_associate(p).value;
        if (!is_prime(c)) throw domain_error("family member is not prime: " + to_string(p));
        if (divides(c, alpha)) throw domain_error("family member divides alpha: " + to_string(p));
        for (const GaussInt& q : seen)
            if (q == c) throw domain_error("family repeats an associate class: " + to_string(p));
        seen.push_back(c);
        return c;
    };

    LowerBoundCertificate cert;
    cert.alpha = alpha;

    if (family.gamma2) {
        GaussInt g = check_member(*family.gamma2);
        if (classify(g) != PrimeClass::TypeII)
            throw domain_error("the dedicated ramified slot must hold an associate of 1+i");
        cert.ramified = make_order_lift_data(alpha, g);
    }
    for (const auto& [eta, xi] : family.pairs) {
        GaussInt e = check_member(eta), x = check_member(xi);
        if (classify(e) != PrimeClass::TypeIII || classify(x) != PrimeClass::TypeIII ||
            canonical_associate(e.conj()).value != x)
            throw domain_error("pair members must be conjugate split primes");
        cert.pairs.emplace_back(make_order_lift_data(alpha, e), make_order_lift_data(alpha, x));
    }
    std::vector<mpz_class> single_heights;
    for (const GaussInt& b : family.singles) {
        GaussInt c = check_member(b);
        if (classify(c) == PrimeClass::TypeII)
            throw domain_error("the ramified prime cannot be a single family member");
        mpz_class h = height(c);
        if (std::find(single_heights.begin(), single_heights.end(), h) != single_heights.end())
            throw domain_error("single family members must have distinct heights");
        single_heights.push_back(h);
        cert.singles.push_back(make_order_lift_data(alpha, c));
    }

    cert.Q = 1;
    auto fold_q = [&](const OrderLiftData& d) {
        // alpha is not a unit, so the first-level valuation is finite
        mpz_class h = height(d.gamma), pw;
        mpz_pow_ui(pw.get_mpz_t(), h.get_mpz_t(), *d.m);
        cert.Q *= pw;
    };
    for (const auto& pr : cert.pairs) {
        fold_q(pr.first);
        fold_q(pr.second);
    }
    for (const auto& s : cert.singles) fold_q(s);

    if (cert.ramified) {
        const auto& chain = cert.ramified->chain;
        long best = 0;
        for (std::size_t j = 0; j < chain.size(); ++j)
            best = std::min(best, 2 * static_cast<long>(j) - static_cast<long>(chain[j]));
        cert.c2 = SqrtTwoRational::pow2_half(best);
    }
    cert.c3 = cert.c2;
    cert.c3 *= mpq_class(mpz_class(1), cert.Q);
    return cert;
}

SqrtTwoRational order_lower_bound(const LowerBoundCertificate& cert,
                                  const std::vector<unsigned long>& exponents) {
    if (exponents.size() != cert.exponent_count())
        throw domain_error("exponent tuple does not match the certificate family");
    SqrtTwoRational bound = cert.c3;
    std::size_t idx = 0;
    if (cert.ramified) bound *= SqrtTwoRational::pow2_half(static_cast<long>(exponents[idx++]));
    auto fold_height_power = [&bound](const GaussInt& prime, unsigned long e) {
        mpz_class h = height(prime), pw;
        mpz_pow_ui(pw.get_mpz_t(), h.get_mpz_t(), e);
        bound *= mpq_class(pw);
    };
    for (const auto& pr : cert.pairs) {
        unsigned long r = exponents[idx++], s = exponents[idx++];
        fold_height_power(pr.first.gamma, std::max(r, s));
    }
    for (const auto& sl : cert.singles) fold_height_power(sl.gamma, exponents[idx++]);
    return bound;
}

GaussInt certificate_modulus(const LowerBoundCertificate& cert,
                             const std::vector<unsigned long>& exponents) {
    if (exponents.size() != cert.exponent_count())
        throw domain_error("exponent tuple does not match the certificate family");
    GaussInt out(1, 0);
    std::size_t idx = 0;
    if (cert.ramified) out *= cert.ramified->gamma.pow(exponents[idx++]);
    for (const auto& pr : cert.pairs) {
        out *= pr.first.gamma.pow(exponents[idx++]);
        out *= pr.second.gamma.pow(exponents[idx++]);
    }
    for (const auto& sl : cert.singles) out *= sl.gamma.pow(exponents[idx++]);
    return out;
}

} // namespace zifs
