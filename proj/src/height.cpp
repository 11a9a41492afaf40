#include "zifs/height.hpp"

namespace zifs {

mpz_class height(const GaussInt& z) {
    if (z.is_zero()) return 0;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), z.re().get_mpz_t(), z.im().get_mpz_t());
    return z.norm() / g;
}

mpz_class height_prime_power(const GaussInt& gamma, unsigned long n) {
    mpz_class out;
    switch (classify(gamma)) {
        case PrimeClass::TypeI: {
            mpz_class p;
            mpz_sqrt(p.get_mpz_t(), gamma.norm().get_mpz_t());
            mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), n);
            break;
        }
        case PrimeClass::TypeII:
            out = mpz_class(1) << (n - n / 2);
            break;
        case PrimeClass::TypeIII:
            mpz_pow_ui(out.get_mpz_t(), gamma.norm().get_mpz_t(), n);
            break;
    }
    return out;
}

mpz_class height_conjugate_pair(const GaussInt& alpha, unsigned long n, unsigned long m) {
    if (classify(alpha) != PrimeClass::TypeIII)
        throw domain_error("height_conjugate_pair requires a split prime, got " + to_string(alpha));
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), alpha.norm().get_mpz_t(), std::max(n, m));
    return out;
}

} // namespace zifs
