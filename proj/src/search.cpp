#include "zifs/search.hpp"

#include "zifs/errors.hpp"
#include "zifs/height.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace zifs {

namespace {

// Rejects hand-assembled families: regrouping the flattened member list
// through make_family must reproduce exactly the same shape (canonical
// members, conjugate pairs matched by norm, singles in insertion-then-norm
// order). make_family itself rejects non-primes and repeated associates.
void require_grouped(const PrimeFamily& family) {
    PrimeFamily rebuilt = make_family(family.all_primes());
    if (rebuilt.gamma2 != family.gamma2 || rebuilt.pairs != family.pairs ||
        rebuilt.singles != family.singles)
        throw domain_error("prime family is not in canonical grouped form");
}

// Family valuations of q in the exponent layout used everywhere: the
// ramified power first, then (r_i, s_i) per conjugate pair, then the singles.
std::vector<unsigned long> family_valuations(const PrimeFamily& family, const GaussInt& q) {
    std::vector<unsigned long> v;
    if (family.gamma2) v.push_back(valuation(*family.gamma2, q));
    for (const auto& [eta, xi] : family.pairs) {
        v.push_back(valuation(eta, q));
        v.push_back(valuation(xi, q));
    }
    for (const GaussInt& b : family.singles) v.push_back(valuation(b, q));
    return v;
}

void sort_found(std::vector<FoundRational>& rows) {
    std::sort(rows.begin(), rows.end(), [](const FoundRational& a, const FoundRational& b) {
        if (a.height != b.height) return a.height < b.height;
        return norm_lex_less(a.value, b.value);
    });
}

// Every live node of the graph, with its minimized coding and exact height.
std::vector<FoundRational> members_of_live(const StateGraph& live) {
    std::vector<FoundRational> out;
    out.reserve(live.node_count());
    for (std::uint32_t i = 0; i < live.node_count(); ++i) {
        FoundRational f;
        f.value = live.node_value(i);
        f.coding = minimize_coding(coding_from_graph(live, i));
        f.period_length = static_cast<unsigned long>(f.coding.period.size());
        f.height = height(f.value.den());
        f.integral = f.value.den() == GaussInt(1);
        out.push_back(std::move(f));
    }
    sort_found(out);
    return out;
}

} // namespace

std::vector<Denominator> enumerate_denominators(const PrimeFamily& family, const mpz_class& cap) {
    if (cap < 1) throw domain_error("height cap must be at least 1");
    require_grouped(family);

    struct Group {
        enum Kind { Ramified, Pair, Single } kind;
        GaussInt first;
        GaussInt second;  // pair partner, unused otherwise
    };
    std::vector<Group> groups;
    if (family.gamma2) groups.push_back({Group::Ramified, *family.gamma2, GaussInt()});
    for (const auto& [eta, xi] : family.pairs) groups.push_back({Group::Pair, eta, xi});
    for (const GaussInt& b : family.singles) groups.push_back({Group::Single, b, GaussInt()});

    std::vector<Denominator> out;
    std::vector<unsigned long> exps;

    // Depth-first over the groups. Heights are exactly multiplicative across
    // the family, so the exponent range of each group is cut off as soon as
    // its closed-form contribution pushes the running product past the cap;
    // contributions are non-decreasing in each exponent, which makes every
    // cutoff exhaustive.
    std::function<void(std::size_t, const mpz_class&, const GaussInt&)> walk =
        [&](std::size_t gi, const mpz_class& running, const GaussInt& product) {
            if (gi == groups.size()) {
                out.push_back({canonical_associate(product).value, exps, running});
                return;
            }
            const Group& g = groups[gi];
            if (g.kind == Group::Ramified || g.kind == Group::Single) {
                GaussInt power(1, 0);
                for (unsigned long e = 0;; ++e) {
                    mpz_class contrib = height_prime_power(g.first, e);
                    if (running * contrib > cap) break;
                    exps.push_back(e);
                    walk(gi + 1, running * contrib, product * power);
                    exps.pop_back();
                    power *= g.first;
                }
            } else {
                GaussInt eta_pow(1, 0);
                for (unsigned long r = 0;; ++r) {
                    if (running * height_conjugate_pair(g.first, r, 0) > cap) break;
                    GaussInt xi_pow(1, 0);
                    for (unsigned long s = 0;; ++s) {
                        mpz_class contrib = height_conjugate_pair(g.first, r, s);
                        if (running * contrib > cap) break;
                        exps.push_back(r);
                        exps.push_back(s);
                        walk(gi + 1, running * contrib, product * eta_pow * xi_pow);
                        exps.pop_back();
                        exps.pop_back();
                        xi_pow *= g.second;
                    }
                    eta_pow *= g.first;
                }
            }
        };
    walk(0, 1, GaussInt(1, 0));

    std::sort(out.begin(), out.end(), [](const Denominator& a, const Denominator& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.exponents < b.exponents;
    });
    return out;
}

std::vector<FoundRational> members_with_denominator(const IfsSpec& spec, const GaussInt& gamma) {
    return members_of_live(live_graph(spec, gamma));
}

SearchReport finiteness_search(const IfsSpec& spec, const PrimeFamily& family,
                               const mpz_class& cap) {
    if (cap < 1) throw domain_error("height cap must be at least 1");
    require_grouped(family);
    for (const GaussInt& t : family.all_primes())
        if (divides(t, spec.beta))
            throw domain_error("family member " + to_string(t) + " divides the base " +
                               to_string(spec.beta));

    SearchReport rep;
    rep.spec = spec;
    rep.family = family;
    rep.cap = cap;
    rep.dimension = similarity_dimension(spec);

    // Finitely many rational members are plausible only below dimension one;
    // a composed depth with fewer distinct maps can still certify that when
    // the depth-1 dimension does not.
    rep.dimension_warning = rep.dimension >= 1.0;
    if (rep.dimension_warning) {
        for (unsigned long depth : {2ul, 3ul, 4ul, 6ul, 8ul}) {
            try {
                if (compose_depth(spec, depth).s_n < 1.0) {
                    rep.dimension_warning = false;
                    break;
                }
            } catch (const resource_error&) {
                break;  // deeper compositions only grow; keep the warning
            }
        }
    }

    const std::vector<Denominator> denoms = enumerate_denominators(family, cap);

    // Only componentwise-maximal exponent tuples need graphs: every smaller
    // tuple's product divides a maximal product, so its members already
    // appear among the live nodes of the larger graph.
    std::vector<const Denominator*> maximal;
    for (const Denominator& d : denoms) {
        bool dominated = false;
        for (const Denominator& e : denoms) {
            if (&e == &d) continue;
            bool covers = true;
            for (std::size_t i = 0; i < d.exponents.size() && covers; ++i)
                covers = e.exponents[i] >= d.exponents[i];
            if (covers) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(&d);
    }

    // Graphs keyed by the canonical associate of gamma * Gamma: associate
    // denominators define the same lattice and therefore the same graph.
    std::unordered_map<GaussInt, std::vector<FoundRational>, GaussIntHash> cache;
    std::unordered_map<GaussRat, FoundRational, GaussRatHash> merged;
    for (const Denominator* d : maximal) {
        const GaussInt key = canonical_associate(d->value * spec.Gamma).value;
        auto it = cache.find(key);
        if (it == cache.end()) {
            try {
                it = cache.emplace(key, members_with_denominator(spec, d->value)).first;
            } catch (const resource_error& e) {
                throw resource_error("denominator " + to_string(d->value) + ": " + e.what());
            }
        }
        for (const FoundRational& f : it->second) merged.emplace(f.value, f);
    }

    rep.found.reserve(merged.size());
    for (const auto& [value, f] : merged) {
        FoundRational g = f;
        g.exponents = family_valuations(family, g.value.den());
        rep.found.push_back(std::move(g));
    }
    sort_found(rep.found);

    rep.count_all = static_cast<unsigned long>(rep.found.size());
    for (const FoundRational& f : rep.found)
        if (!f.integral) ++rep.count_nonintegral;

    std::vector<mpz_class> heights;
    heights.reserve(rep.found.size());
    for (const FoundRational& f : rep.found) heights.push_back(f.height);
    std::sort(heights.begin(), heights.end());
    auto count_up_to = [&heights](const mpz_class& c) {
        return static_cast<unsigned long>(
            std::upper_bound(heights.begin(), heights.end(), c) - heights.begin());
    };

    mpz_class rung = 1;
    rep.growth.push_back({rung, count_up_to(rung)});
    while (rung * 2 <= cap) {
        rung *= 2;
        rep.growth.push_back({rung, count_up_to(rung)});
    }
    if (rep.growth.back().cap != cap) rep.growth.push_back({cap, count_up_to(cap)});

    rep.stabilized = count_up_to(cap) == count_up_to(cap / 2);

    for (const GrowthPoint& gp : rep.growth)
        if (gp.count > 0)
            rep.fitted_constant = std::max(
                rep.fitted_constant,
                static_cast<double>(gp.count) / std::pow(gp.cap.get_d(), rep.dimension));

    rep.note =
        "Exhaustive and exact for every denominator of height at most the cap; coverage of "
        "all larger exponent vectors is heuristic (growth-curve stabilization), not certified.";
    return rep;
}

LatticeCount count_lattice(const IfsSpec& spec, unsigned long n) {
    if (n == 0) throw domain_error("lattice denominator must be at least 1");
    const GaussInt modulus(mpz_class(n), mpz_class(0));
    StateGraph live = live_graph(spec, modulus);
    LatticeCount out;
    for (std::uint32_t i = 0; i < live.node_count(); ++i)
        if (divides(live.node_value(i).den(), modulus)) ++out.q_n;
    // Denominators of height exactly N cover, over all of them, precisely the
    // (1/N)-lattice, so both counts coincide.
    out.r_n = out.q_n;
    return out;
}

CountingFit counting_fit(const IfsSpec& spec, unsigned long n_min, unsigned long n_max) {
    if (n_min < 1 || n_max < n_min) throw domain_error("invalid lattice range");
    CountingFit fit;
    fit.s = similarity_dimension(spec);
    fit.star_exponent = std::min(2 * fit.s, fit.s + 1);
    fit.rows.reserve(n_max - n_min + 1);
    unsigned long cumulative = 0;
    for (unsigned long n = 1; n <= n_max; ++n) {
        const unsigned long r = count_lattice(spec, n).r_n;
        cumulative += r;
        if (n < n_min) continue;
        fit.rows.push_back({n, r, cumulative});
        fit.c = std::max(fit.c, static_cast<double>(r) / std::pow(static_cast<double>(n), fit.s));
        fit.c_star = std::max(fit.c_star, static_cast<double>(cumulative) /
                                              std::pow(static_cast<double>(n), fit.star_exponent));
    }
    return fit;
}

PeriodHeightReport period_height_report(const IfsSpec& spec, const PrimeFamily& family,
                                        const mpz_class& cap) {
    PeriodHeightReport rep;
    rep.search = finiteness_search(spec, family, cap);
    const LowerBoundCertificate cert = make_certificate(spec.beta, family);
    const std::vector<GaussInt> members = family.all_primes();
    const std::vector<unsigned long> gamma_vals = family_valuations(family, spec.Gamma);

    rep.rows.reserve(rep.search.found.size());
    for (const FoundRational& f : rep.search.found) {
        PeriodHeightRow row;
        row.value = f.value;
        row.height = f.height;
        row.period = f.period_length;

        // Strip the digit-denominator contribution: only the part of the
        // reduced denominator beyond Gamma constrains the expansion period.
        const std::vector<unsigned long> q_vals = family_valuations(family, f.value.den());
        GaussInt upsilon(1, 0);
        row.upsilon_exponents.resize(members.size(), 0);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const unsigned long e = q_vals[i] > gamma_vals[i] ? q_vals[i] - gamma_vals[i] : 0;
            row.upsilon_exponents[i] = e;
            for (unsigned long k = 0; k < e; ++k) upsilon *= members[i];
        }
        row.upsilon = canonical_associate(upsilon).value;
        row.order = ord(spec.beta, row.upsilon);
        row.order_divides_period = mpz_class(row.period) % row.order == 0;
        row.lower_bound = order_lower_bound(cert, row.upsilon_exponents).to_double();
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace zifs
