#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "zifs/errors.hpp"

namespace zifs {

// A Gaussian integer a + bi with arbitrary-precision components.
class GaussInt {
public:
    GaussInt() : re_(0), im_(0) {}
    GaussInt(long re, long im = 0) : re_(re), im_(im) {}
    GaussInt(mpz_class re, mpz_class im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit GaussInt(mpz_class re) : re_(std::move(re)), im_(0) {}

    const mpz_class& re() const { return re_; }
    const mpz_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_unit() const { return norm() == 1; }

    mpz_class norm() const { return re_ * re_ + im_ * im_; }
    GaussInt conj() const { return GaussInt(re_, -im_); }

    GaussInt operator-() const { return GaussInt(-re_, -im_); }
    GaussInt& operator+=(const GaussInt& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussInt& operator-=(const GaussInt& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussInt& operator*=(const GaussInt& o);

    friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
    friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
    friend GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
    friend bool operator==(const GaussInt& a, const GaussInt& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

    GaussInt pow(unsigned long e) const;

private:
    mpz_class re_, im_;
};

// Total order used wherever deterministic output requires one: by norm,
// then real part, then imaginary part.
bool norm_lex_less(const GaussInt& a, const GaussInt& b);

std::size_t hash_value(const GaussInt& z);
struct GaussIntHash {
    std::size_t operator()(const GaussInt& z) const { return hash_value(z); }
};

// The canonical associate of z: the unique unit multiple with re > 0 and
// im >= 0 (z = 0 maps to 0). `unit` satisfies value == unit * z.
struct Associate {
    GaussInt unit;
    GaussInt value;
};
Associate canonical_associate(const GaussInt& z);
bool is_canonical_associate(const GaussInt& z);

struct DivMod {
    GaussInt q, r;
};

// Euclidean division: a = q*b + r with norm(r) < norm(b). Quotient components
// are the nearest integers to a*conj(b)/norm(b); halves round toward +infinity.
DivMod euclid_divmod(const GaussInt& a, const GaussInt& b);

// Canonical-associate gcd via the Euclidean algorithm. gcd(0, 0) is a domain error.
GaussInt gauss_gcd(const GaussInt& a, const GaussInt& b);

bool divides(const GaussInt& d, const GaussInt& a); // d != 0
GaussInt div_exact(const GaussInt& a, const GaussInt& d); // requires d | a

// A Gaussian rational in canonical form: gcd(num, den) is a unit and den is
// the canonical associate of itself. Zero is 0/1.
class GaussRat {
public:
    GaussRat() : num_(0, 0), den_(1, 0) {}
    GaussRat(GaussInt num, GaussInt den); // normalizes; den == 0 is a domain error
    explicit GaussRat(GaussInt num) : num_(std::move(num)), den_(1, 0) {}

    const GaussInt& num() const { return num_; }
    const GaussInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    // |z|^2 as an exact rational.
    mpq_class norm_q() const;

    GaussRat operator-() const { return GaussRat(-num_, den_); }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b); // b != 0
    friend GaussRat operator*(const GaussInt& a, const GaussRat& b);
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

private:
    GaussInt num_, den_;
};

std::size_t hash_value(const GaussRat& z);
struct GaussRatHash {
    std::size_t operator()(const GaussRat& z) const { return hash_value(z); }
};

bool norm_lex_less(const GaussRat& a, const GaussRat& b);

// Literal grammar: integer [('+'|'-') integer? 'i'], plus the pure-imaginary
// forms "i", "-i", "7i". Rationals are "num/den" where either side may be
// parenthesized: "(1+2i)/5", "3/4", "i/2". Errors carry byte positions.
GaussInt parse_gauss_int(const std::string& text);
GaussRat parse_gauss_rat(const std::string& text);

// Minimal literal forms: "0", "i", "-2+i", "3", "2i", "(1+2i)/3", "(-2+i)/(1+i)".
std::string to_string(const GaussInt& z);
std::string to_string(const GaussRat& z);

std::ostream& operator<<(std::ostream& os, const GaussInt& z);
std::ostream& operator<<(std::ostream& os, const GaussRat& z);

} // namespace zifs
