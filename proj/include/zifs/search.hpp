#pragma once

// Exhaustive extraction of the Gaussian rationals inside an attractor whose
// reduced denominators are supported on a fixed prime family, plus the
// lattice-counting harness:
//
//   * denominators gamma2^h * prod eta_i^{r_i} xi_i^{s_i} * prod beta_j^{n_j}
//     streamed by height,
//   * per-denominator member extraction through the live state graph
//     (exhaustive and exact for each denominator),
//   * cap-bounded union with growth curve and stabilization heuristic,
//   * R_N / Q_N lattice counts with empirical constant fits,
//   * the period/order report juxtaposing minimized coding periods with
//     multiplicative orders and their certified lower bounds.

#include <zifs/ifs.hpp>
#include <zifs/order.hpp>

#include <gmpxx.h>

#include <string>
#include <vector>

namespace zifs {

// One denominator from the family stream: the canonical product, the
// exponent tuple (family order: ramified power, then each pair's (r, s),
// then the singles), and its exact height.
struct Denominator {
    GaussInt value;
    std::vector<unsigned long> exponents;
    mpz_class height;
};

// Every family product with height <= cap, each exactly once, ordered by
// height with ties broken by lexicographic exponent tuple. Heights come from
// the closed forms: 2^ceil(h/2) for the ramified member, H^max(r,s) per
// conjugate pair, H^n per single. cap < 1 or an inconsistent family is a
// domain error.
std::vector<Denominator> enumerate_denominators(const PrimeFamily& family, const mpz_class& cap);

// A member of the attractor found by the search.
struct FoundRational {
    GaussRat value;
    // Family valuations of the reduced denominator, in family order; empty
    // when produced without family context (members_with_denominator).
    std::vector<unsigned long> exponents;
    mpz_class height;       // height of the reduced denominator
    Coding coding;          // minimized; evaluates back to value exactly
    unsigned long period_length = 0;  // = coding.period.size()
    bool integral = false;  // true when the reduced denominator is 1
};

// Every member whose reduced denominator divides gamma * Gamma: the live
// nodes of the state graph for gamma, each with its minimized coding.
// Sorted by (height, norm-lex value). Exponents are left empty.
std::vector<FoundRational> members_with_denominator(const IfsSpec& spec, const GaussInt& gamma);

struct GrowthPoint {
    mpz_class cap;
    unsigned long count = 0;
};

struct SearchReport {
    IfsSpec spec;
    PrimeFamily family;
    mpz_class cap;
    std::vector<FoundRational> found;  // sorted by (height, norm-lex value)
    std::vector<GrowthPoint> growth;   // caps 1, 2, 4, ..., cap
    // Both counting conventions: with and without the integer members.
    unsigned long count_all = 0;
    unsigned long count_nonintegral = 0;
    bool stabilized = false;           // nothing new in the final doubling
    double dimension = 0.0;            // similarity dimension s
    bool dimension_warning = false;    // no composition depth pushed s_n below 1
    double fitted_constant = 0.0;      // max over growth caps of count / cap^s
    std::string note;                  // completeness statement
};

// Union of members_with_denominator over every enumerated denominator (only
// componentwise-maximal exponent tuples need graphs: smaller tuples divide
// them), deduplicated by exact value. Domain errors: cap < 1, inconsistent
// family, or a family member dividing the base.
SearchReport finiteness_search(const IfsSpec& spec, const PrimeFamily& family,
                               const mpz_class& cap);

// Counts of attractor points on the (1/N)-lattice: Q_N counts members of the
// form (p + q i)/N; R_N, the count of members representable with a
// denominator of height exactly N, equals Q_N through the lattice identity
// { w/g : H(g) = N } = (1/N) Z[i].
struct LatticeCount {
    unsigned long r_n = 0;
    unsigned long q_n = 0;
};
LatticeCount count_lattice(const IfsSpec& spec, unsigned long n);

struct CountRow {
    unsigned long n = 0;
    unsigned long r_n = 0;
    unsigned long r_star = 0;  // cumulative: sum of r_q for q <= n
};

// Empirical constants for the counting laws R_N <= C N^s and
// R*_N <= C* N^min(2s, s+1), fitted as maxima of the observed ratios over
// n_min..n_max. Report-only: no asymptotic claim is asserted.
struct CountingFit {
    double s = 0.0;
    double star_exponent = 0.0;  // min(2s, s + 1)
    double c = 0.0;
    double c_star = 0.0;
    std::vector<CountRow> rows;
};
CountingFit counting_fit(const IfsSpec& spec, unsigned long n_min, unsigned long n_max);

// One row of the period/order squeeze: for a found value with reduced
// denominator q, upsilon strips the digit-denominator contribution
// (exponent max(0, v_tau(q) - v_tau(Gamma)) per family member tau), and the
// multiplicative order of the base modulo upsilon must divide the minimized
// coding period.
struct PeriodHeightRow {
    GaussRat value;
    mpz_class height;
    unsigned long period = 0;
    GaussInt upsilon;
    std::vector<unsigned long> upsilon_exponents;
    mpz_class order;                  // ord(beta; upsilon)
    bool order_divides_period = false;
    double lower_bound = 0.0;  // certified lower bound on the order at these exponents
};

struct PeriodHeightReport {
    SearchReport search;
    std::vector<PeriodHeightRow> rows;
};
PeriodHeightReport period_height_report(const IfsSpec& spec, const PrimeFamily& family,
                                        const mpz_class& cap);

} // namespace zifs
