#include "zifs/gauss.hpp"

#include <ostream>

namespace zifs {

GaussInt& GaussInt::operator*=(const GaussInt& o) {
    mpz_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
}

GaussInt GaussInt::pow(unsigned long e) const {
    GaussInt acc(1, 0), base = *this;
    while (e != 0) {
        if (e & 1ul) acc *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return acc;
}

bool norm_lex_less(const GaussInt& a, const GaussInt& b) {
    mpz_class na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void hash_mpz(std::size_t& h, const mpz_class& v) {
    const mpz_srcptr p = v.get_mpz_t();
    h = mix64(h ^ static_cast<std::uint64_t>(mpz_sgn(p) + 2));
    const std::size_t n = mpz_size(p);
    for (std::size_t k = 0; k < n; ++k)
        h = mix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(p, k)));
}

} // namespace

std::size_t hash_value(const GaussInt& z) {
    std::size_t h = 0x51a0b2c3d4e5f607ull;
    hash_mpz(h, z.re());
    hash_mpz(h, z.im());
    return h;
}

std::size_t hash_value(const GaussRat& z) {
    std::size_t h = hash_value(z.num());
    return mix64(h ^ hash_value(z.den()));
}

bool norm_lex_less(const GaussRat& a, const GaussRat& b) {
    if (a.den() != b.den()) {
        if (norm_lex_less(a.den(), b.den())) return true;
        if (norm_lex_less(b.den(), a.den())) return false;
    }
    return norm_lex_less(a.num(), b.num());
}

bool is_canonical_associate(const GaussInt& z) {
    if (z.is_zero()) return true;
    return z.re() > 0 && z.im() >= 0;
}

Associate canonical_associate(const GaussInt& z) {
    if (z.is_zero()) return {GaussInt(1, 0), GaussInt(0, 0)};
    static const GaussInt units[4] = {GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0),
                                      GaussInt(0, -1)};
    for (const GaussInt& u : units) {
        GaussInt c = u * z;
        if (c.re() > 0 && c.im() >= 0) return {u, c};
    }
    // unreachable: the four rotations of a nonzero point visit every quadrant
    throw domain_error("canonical_associate: no canonical rotation found");
}

namespace {

// Nearest integer to n/d for d > 0; exact halves round toward +infinity.
mpz_class round_half_up(const mpz_class& n, const mpz_class& d) {
    mpz_class q;
    mpz_class num = 2 * n + d;
    mpz_class den = 2 * d;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace

DivMod euclid_divmod(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw domain_error("euclid_divmod: division by zero");
    mpz_class n = b.norm();
    GaussInt p = a * b.conj();
    GaussInt q(round_half_up(p.re(), n), round_half_up(p.im(), n));
    return {q, a - q * b};
}

GaussInt gauss_gcd(const GaussInt& a, const GaussInt& b) {
    if (a.is_zero() && b.is_zero()) throw domain_error("gcd(0, 0) is undefined");
    GaussInt x = a, y = b;
    while (!y.is_zero()) {
        GaussInt r = euclid_divmod(x, y).r;
        x = y;
        y = r;
    }
    return canonical_associate(x).value;
}

bool divides(const GaussInt& d, const GaussInt& a) {
    if (d.is_zero()) throw domain_error("divisibility by zero");
    mpz_class n = d.norm();
    GaussInt p = a * d.conj();
    return mpz_divisible_p(p.re().get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(p.im().get_mpz_t(), n.get_mpz_t());
}

GaussInt div_exact(const GaussInt& a, const GaussInt& d) {
    if (d.is_zero()) throw domain_error("division by zero");
    mpz_class n = d.norm();
    GaussInt p = a * d.conj();
    mpz_class re, im;
    mpz_divexact(re.get_mpz_t(), p.re().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(im.get_mpz_t(), p.im().get_mpz_t(), n.get_mpz_t());
    return GaussInt(re, im);
}

GaussRat::GaussRat(GaussInt num, GaussInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw domain_error("rational with zero denominator");
    if (num_.is_zero()) {
        den_ = GaussInt(1, 0);
        return;
    }
    GaussInt g = gauss_gcd(num_, den_);
    num_ = div_exact(num_, g);
    den_ = div_exact(den_, g);
    Associate a = canonical_associate(den_);
    den_ = a.value;
    num_ = a.unit * num_;
}

mpq_class GaussRat::norm_q() const {
    mpq_class q(num_.norm(), den_.norm());
    q.canonicalize();
    return q;
}

GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.num_ * b.num_, a.den_ * b.den_);
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    if (b.is_zero()) throw domain_error("division by zero rational");
    return GaussRat(a.num_ * b.den_, a.den_ * b.num_);
}

GaussRat operator*(const GaussInt& a, const GaussRat& b) {
    return GaussRat(a * b.num_, b.den_);
}

// ---------------------------------------------------------------------------
// Literals

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos); }
};

mpz_class parse_digits(Cursor& c) {
    std::size_t start = c.pos;
    while (!c.done() && c.peek() >= '0' && c.peek() <= '9') ++c.pos;
    if (c.pos == start) c.fail("expected digits");
    return mpz_class(c.s.substr(start, c.pos - start), 10);
}

// integer [('+'|'-') integer? 'i'] plus pure-imaginary forms ("i", "-i", "7i")
GaussInt parse_literal(Cursor& c) {
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
        if (c.peek() == '-') sign = -1;
        ++c.pos;
    }
    mpz_class first;
    bool first_imag = false;
    if (c.peek() == 'i') {
        ++c.pos;
        first = sign;
        first_imag = true;
    } else {
        first = sign * parse_digits(c);
        if (c.peek() == 'i') {
            ++c.pos;
            first_imag = true;
        }
    }
    if (first_imag) return GaussInt(mpz_class(0), first);
    if (c.peek() == '+' || c.peek() == '-') {
        int sign2 = c.peek() == '-' ? -1 : 1;
        ++c.pos;
        mpz_class second;
        if (c.peek() == 'i') {
            second = sign2;
        } else {
            second = sign2 * parse_digits(c);
        }
        if (c.peek() != 'i') c.fail("expected 'i' after imaginary part");
        ++c.pos;
        return GaussInt(first, second);
    }
    return GaussInt(first);
}

GaussInt parse_side(Cursor& c) {
    if (c.peek() == '(') {
        ++c.pos;
        GaussInt z = parse_literal(c);
        if (c.peek() != ')') c.fail("expected ')'");
        ++c.pos;
        return z;
    }
    return parse_literal(c);
}

} // namespace

GaussInt parse_gauss_int(const std::string& text) {
    Cursor c{text};
    GaussInt z = parse_literal(c);
    if (!c.done()) c.fail("unexpected trailing input");
    return z;
}

GaussRat parse_gauss_rat(const std::string& text) {
    Cursor c{text};
    GaussInt num = parse_side(c);
    GaussInt den(1, 0);
    if (c.peek() == '/') {
        ++c.pos;
        den = parse_side(c);
    }
    if (!c.done()) c.fail("unexpected trailing input");
    return GaussRat(num, den);
}

std::string to_string(const GaussInt& z) {
    if (z.is_zero()) return "0";
    if (z.im() == 0) return z.re().get_str();
    std::string imag;
    if (z.im() == 1)
        imag = "i";
    else if (z.im() == -1)
        imag = "-i";
    else
        imag = z.im().get_str() + "i";
    if (z.re() == 0) return imag;
    if (z.im() > 0) return z.re().get_str() + "+" + imag;
    return z.re().get_str() + imag;
}

namespace {

std::string part_string(const GaussInt& z) {
    std::string s = to_string(z);
    if (z.re() != 0 && z.im() != 0) return "(" + s + ")";
    return s;
}

} // namespace

std::string to_string(const GaussRat& z) {
    if (z.den().is_one()) return to_string(z.num());
    return part_string(z.num()) + "/" + part_string(z.den());
}

std::ostream& operator<<(std::ostream& os, const GaussInt& z) { return os << to_string(z); }
std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << to_string(z); }

} // namespace zifs
