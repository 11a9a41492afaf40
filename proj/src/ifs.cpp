#include "zifs/ifs.hpp"

#include "zifs/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace zifs {

namespace {

mpz_class floor_q(const mpq_class& x) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

mpz_class isqrt(const mpz_class& x) {
    mpz_class out;
    mpz_sqrt(out.get_mpz_t(), x.get_mpz_t());
    return out;
}

// Integer range [lo, hi] of the a with |a - p/q| <= 1/2 (q > 0):
// lo = ceil((2p - q) / 2q), hi = floor((2p + q) / 2q).
void half_window(const mpz_class& p, const mpz_class& q, mpz_class& lo, mpz_class& hi) {
    mpz_class two_q = 2 * q;
    mpz_class lo_num = 2 * p - q;
    mpz_class hi_num = 2 * p + q;
    mpz_cdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), two_q.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), two_q.get_mpz_t());
}

// Digit translations cleared of denominators: u_j = Gamma * t_j in Z[i].
std::vector<GaussInt> scaled_digits(const IfsSpec& spec, const GaussInt& scale) {
    std::vector<GaussInt> out;
    out.reserve(spec.digits.size());
    for (const GaussRat& t : spec.digits) {
        GaussRat scaled = scale * t;
        if (scaled.den() != GaussInt(1))
            throw domain_error("digit denominator does not divide the common denominator");
        out.push_back(scaled.num());
    }
    return out;
}

[[noreturn]] void throw_cap(const char* what, unsigned long cap) {
    throw resource_error(std::string(what) + " cap of " + std::to_string(cap) +
                         " exceeded (set ZIFS_NODE_CAP to adjust)");
}

// Distinct depth-n prefix sums S = sum_v beta^(n-v) * u_{i_v} over all digit
// words, built level by level with exact deduplication. S equals Gamma times
// the depth-n translation constant of the composed map.
std::vector<GaussInt> level_sums(const IfsSpec& spec, unsigned long depth, unsigned long cap) {
    std::vector<GaussInt> us = scaled_digits(spec, spec.Gamma);
    std::vector<GaussInt> cur{GaussInt(0)};
    for (unsigned long v = 0; v < depth; ++v) {
        std::vector<GaussInt> next;
        std::unordered_set<GaussInt, GaussIntHash> seen;
        next.reserve(std::min(cur.size() * us.size(), static_cast<std::size_t>(cap) + 1));
        for (const GaussInt& s : cur) {
            GaussInt scaled = spec.beta * s;
            for (const GaussInt& u : us) {
                GaussInt w = scaled + u;
                if (seen.insert(w).second) {
                    if (seen.size() > cap) throw_cap("composition working set", cap);
                    next.push_back(std::move(w));
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Packs a deduplicated numerator list into a graph: sorts for determinism,
// indexes, and wires every edge w -> beta*w - M*t_j that stays in the set.
StateGraph assemble(const IfsSpec& spec, const GaussInt& m, std::vector<GaussInt> nodes,
                    unsigned long cap) {
    std::sort(nodes.begin(), nodes.end(),
              [](const GaussInt& a, const GaussInt& b) { return norm_lex_less(a, b); });
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() > cap) throw_cap("state graph node", cap);
    if (nodes.size() >= std::numeric_limits<std::uint32_t>::max())
        throw_cap("state graph node", cap);

    StateGraph g;
    g.spec = spec;
    g.denominator = m;
    g.numerators = std::move(nodes);
    g.index.reserve(g.numerators.size());
    for (std::uint32_t i = 0; i < g.numerators.size(); ++i) g.index.emplace(g.numerators[i], i);

    std::vector<GaussInt> offs = scaled_digits(spec, m);
    g.edge_offsets.assign(g.numerators.size() + 1, 0);
    for (std::uint32_t i = 0; i < g.numerators.size(); ++i) {
        GaussInt scaled = spec.beta * g.numerators[i];
        for (std::size_t j = 0; j < offs.size(); ++j) {
            auto it = g.index.find(scaled - offs[j]);
            if (it != g.index.end()) {
                g.edge_target.push_back(it->second);
                g.edge_digit.push_back(static_cast<std::uint16_t>(j + 1));
            }
        }
        g.edge_offsets[i + 1] = g.edge_target.size();
    }
    return g;
}

GaussInt lattice_denominator(const IfsSpec& spec, const GaussInt& gamma) {
    if (gamma == GaussInt(0)) throw domain_error("state graph denominator must be nonzero");
    return canonical_associate(gamma * spec.Gamma).value;
}

}  // namespace

IfsSpec make_ifs_spec(GaussInt beta, std::vector<GaussRat> digits) {
    if (beta.norm() < 2) throw domain_error("base must have norm at least 2");
    if (digits.empty()) throw domain_error("digit set must be nonempty");
    if (digits.size() > 65535) throw domain_error("digit set is too large");
    std::unordered_set<GaussRat, GaussRatHash> seen;
    for (const GaussRat& t : digits)
        if (!seen.insert(t).second)
            throw domain_error("digit set must not contain duplicates, got " + to_string(t) +
                               " twice");
    GaussInt lcm(1);
    for (const GaussRat& t : digits) {
        const GaussInt& d = t.den();
        lcm = div_exact(lcm * d, gauss_gcd(lcm, d));
    }
    IfsSpec spec;
    spec.beta = std::move(beta);
    spec.digits = std::move(digits);
    spec.Gamma = canonical_associate(lcm).value;
    return spec;
}

double similarity_dimension(const IfsSpec& spec) {
    return 2.0 * std::log(static_cast<double>(spec.digits.size())) /
           std::log(spec.beta.norm().get_d());
}

mpq_class bounding_radius_sq(const IfsSpec& spec) {
    mpq_class t2 = 0;
    for (const GaussRat& t : spec.digits) t2 = std::max(t2, t.norm_q());
    if (t2 == 0) return mpq_class(0);
    // r = (floor(sqrt(norm(beta) * 10^12)) - 10^6) / 10^6, a positive rational
    // lower bound on sqrt(norm(beta)) - 1 with 6 decimal digits kept.
    mpz_class scale("1000000");
    mpz_class root = isqrt(spec.beta.norm() * scale * scale);
    mpq_class r(root - scale, scale);
    r.canonicalize();
    mpq_class out = t2 / (r * r);
    out.canonicalize();
    return out;
}

DimensionReport compose_depth(const IfsSpec& spec, unsigned long depth) {
    if (depth == 0) throw domain_error("composition depth must be at least 1");
    std::vector<GaussInt> sums = level_sums(spec, depth, node_cap());
    DimensionReport rep;
    rep.depth = depth;
    rep.distinct_maps = static_cast<unsigned long>(sums.size());
    rep.s = similarity_dimension(spec);
    rep.s_n = 2.0 * std::log(static_cast<double>(rep.distinct_maps)) /
              (static_cast<double>(depth) * std::log(spec.beta.norm().get_d()));
    return rep;
}

BoxCover box_cover_count(const IfsSpec& spec, unsigned long depth) {
    BoxCover cover;
    cover.depth = depth;
    cover.count = static_cast<unsigned long>(level_sums(spec, depth, node_cap()).size());
    double radius = std::sqrt(bounding_radius_sq(spec).get_d());
    cover.radius = radius * std::pow(spec.beta.norm().get_d(), -static_cast<double>(depth) / 2.0);
    return cover;
}

namespace detail {

StateGraph build_state_graph_ball(const IfsSpec& spec, const GaussInt& gamma,
                                  const mpq_class& ball_sq) {
    GaussInt m = lattice_denominator(spec, gamma);
    mpq_class b2 = ball_sq * mpq_class(m.norm());
    b2.canonicalize();
    unsigned long cap = node_cap();

    std::vector<GaussInt> nodes;
    mpz_class amax = isqrt(floor_q(b2));
    for (mpz_class a = -amax; a <= amax; ++a) {
        mpq_class rem = b2 - mpq_class(a * a);
        mpz_class bmax = isqrt(floor_q(rem));
        for (mpz_class b = -bmax; b <= bmax; ++b) {
            if (nodes.size() >= cap) throw_cap("state graph node", cap);
            nodes.emplace_back(a, b);
        }
    }
    return assemble(spec, m, std::move(nodes), cap);
}

StateGraph live_graph_seeded(const IfsSpec& spec, const GaussInt& gamma) {
    GaussInt m = lattice_denominator(spec, gamma);
    mpq_class b2 = bounding_radius_sq(spec) * mpq_class(m.norm());
    b2.canonicalize();
    unsigned long cap = node_cap();

    // Smallest depth k with norm(beta)^k >= 4 * B2: then every point of the
    // attractor lattice lies within half a lattice step of some depth-k
    // cylinder center, so at most four integer candidates per center.
    mpz_class nb = spec.beta.norm();
    mpz_class nbk = nb;
    unsigned long k = 1;
    while (mpq_class(nbk) < 4 * b2) {
        nbk *= nb;
        ++k;
    }

    std::vector<GaussInt> sums = level_sums(spec, k, cap);
    GaussInt g2 = div_exact(m, spec.Gamma);
    GaussInt betak = spec.beta.pow(k);
    GaussInt conjk = betak.conj();

    std::unordered_set<GaussInt, GaussIntHash> cand;
    mpz_class lo_re, hi_re, lo_im, hi_im;
    for (const GaussInt& s : sums) {
        GaussInt center = g2 * s;  // = M * (depth-k translation constant)
        GaussInt wnum = center * conjk;  // center / beta^k = wnum / norm(beta)^k
        half_window(wnum.re(), nbk, lo_re, hi_re);
        half_window(wnum.im(), nbk, lo_im, hi_im);
        for (mpz_class a = lo_re; a <= hi_re; ++a) {
            for (mpz_class b = lo_im; b <= hi_im; ++b) {
                GaussInt w(a, b);
                if (mpq_class(w.norm()) > b2) continue;  // outside the bounding ball
                GaussInt diff = w * betak - center;
                if (mpq_class(diff.norm()) > b2) continue;  // outside this cylinder's window
                if (cand.insert(w).second && cand.size() > cap)
                    throw_cap("state graph node", cap);
            }
        }
    }
    std::vector<GaussInt> nodes(cand.begin(), cand.end());
    return prune_to_live(assemble(spec, m, std::move(nodes), cap));
}

}  // namespace detail

StateGraph build_state_graph(const IfsSpec& spec, const GaussInt& gamma) {
    return detail::build_state_graph_ball(spec, gamma, bounding_radius_sq(spec));
}

StateGraph prune_to_live(const StateGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<std::uint64_t> outdeg(n);
    for (std::size_t i = 0; i < n; ++i) outdeg[i] = graph.out_degree(static_cast<std::uint32_t>(i));

    // Reverse adjacency, one entry per edge.
    std::vector<std::uint64_t> in_off(n + 1, 0);
    for (std::uint32_t t : graph.edge_target) ++in_off[t + 1];
    for (std::size_t i = 0; i < n; ++i) in_off[i + 1] += in_off[i];
    std::vector<std::uint32_t> in_src(graph.edge_count());
    {
        std::vector<std::uint64_t> fill = in_off;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint64_t e = graph.edge_offsets[i]; e < graph.edge_offsets[i + 1]; ++e)
                in_src[fill[graph.edge_target[e]]++] = i;
    }

    std::vector<char> alive(n, 1);
    std::vector<std::uint32_t> dead;
    for (std::uint32_t i = 0; i < n; ++i)
        if (outdeg[i] == 0) {
            alive[i] = 0;
            dead.push_back(i);
        }
    while (!dead.empty()) {
        std::uint32_t u = dead.back();
        dead.pop_back();
        for (std::uint64_t e = in_off[u]; e < in_off[u + 1]; ++e) {
            std::uint32_t s = in_src[e];
            if (alive[s] && --outdeg[s] == 0) {
                alive[s] = 0;
                dead.push_back(s);
            }
        }
    }

    StateGraph out;
    out.spec = graph.spec;
    out.denominator = graph.denominator;
    std::vector<std::uint32_t> remap(n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        if (alive[i]) {
            remap[i] = static_cast<std::uint32_t>(out.numerators.size());
            out.numerators.push_back(graph.numerators[i]);
        }
    out.index.reserve(out.numerators.size());
    for (std::uint32_t i = 0; i < out.numerators.size(); ++i) out.index.emplace(out.numerators[i], i);
    out.edge_offsets.assign(out.numerators.size() + 1, 0);
    std::uint32_t next_id = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (std::uint64_t e = graph.edge_offsets[i]; e < graph.edge_offsets[i + 1]; ++e) {
            if (!alive[graph.edge_target[e]]) continue;
            out.edge_target.push_back(remap[graph.edge_target[e]]);
            out.edge_digit.push_back(graph.edge_digit[e]);
        }
        out.edge_offsets[++next_id] = out.edge_target.size();
    }
    return out;
}

StateGraph live_graph(const IfsSpec& spec, const GaussInt& gamma) {
    GaussInt m = lattice_denominator(spec, gamma);
    mpq_class b2 = bounding_radius_sq(spec) * mpq_class(m.norm());
    if (b2 <= 20000) return prune_to_live(build_state_graph(spec, gamma));
    return detail::live_graph_seeded(spec, gamma);
}

std::optional<std::uint32_t> StateGraph::find_numerator(const GaussInt& w) const {
    auto it = index.find(w);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> StateGraph::find_value(const GaussRat& z) const {
    if (!divides(z.den(), denominator)) return std::nullopt;
    return find_numerator(z.num() * div_exact(denominator, z.den()));
}

bool is_member(const IfsSpec& spec, const GaussRat& z) {
    if (z.norm_q() > bounding_radius_sq(spec)) return false;
    return live_graph(spec, z.den()).find_value(z).has_value();
}

Coding coding_from_graph(const StateGraph& live, std::uint32_t start) {
    if (start >= live.node_count()) throw domain_error("coding walk start is not a node");
    std::vector<std::int64_t> pos(live.node_count(), -1);
    std::vector<unsigned> digits;
    std::uint32_t cur = start;
    while (pos[cur] < 0) {
        pos[cur] = static_cast<std::int64_t>(digits.size());
        if (live.out_degree(cur) == 0)
            throw domain_error("coding walk reached a node with no successor; prune the graph first");
        std::uint64_t e = live.edge_offsets[cur];
        digits.push_back(live.edge_digit[e]);  // edges are digit-sorted: smallest live digit
        cur = live.edge_target[e];
    }
    Coding c;
    const auto split = static_cast<std::size_t>(pos[cur]);
    c.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(split));
    c.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(split), digits.end());
    return c;
}

Coding coding_of(const IfsSpec& spec, const GaussRat& z) {
    if (z.norm_q() > bounding_radius_sq(spec))
        throw domain_error(to_string(z) + " is not a member of the attractor");
    StateGraph live = live_graph(spec, z.den());
    std::optional<std::uint32_t> node = live.find_value(z);
    if (!node) throw domain_error(to_string(z) + " is not a member of the attractor");
    return coding_from_graph(live, *node);
}

GaussRat eval_coding(const IfsSpec& spec, const Coding& c) {
    if (c.period.empty()) throw domain_error("coding period must be nonempty");
    const auto l = static_cast<unsigned>(spec.digits.size());
    for (unsigned j : c.preperiod)
        if (j < 1 || j > l) throw domain_error("coding digit index out of range");
    for (unsigned j : c.period)
        if (j < 1 || j > l) throw domain_error("coding digit index out of range");

    // Value y of the purely periodic tail: y = (y + tail digits...) cycled,
    // i.e. y = (sum_v t_{j_v} beta^(n-v)) / (beta^n - 1).
    GaussRat acc{GaussInt(0)};
    for (unsigned j : c.period) acc = spec.beta * acc + spec.digits[j - 1];
    GaussInt bn = spec.beta.pow(static_cast<unsigned long>(c.period.size()));
    GaussRat y = acc / GaussRat(bn - GaussInt(1));

    // Peel the preperiod from the right: z = phi_{j_1}(phi_{j_2}(... (y))).
    for (auto it = c.preperiod.rbegin(); it != c.preperiod.rend(); ++it)
        y = (y + spec.digits[*it - 1]) / GaussRat(spec.beta);
    return y;
}

Coding minimize_coding(const Coding& c) {
    if (c.period.empty()) throw domain_error("coding period must be nonempty");
    Coding out = c;

    // Divide the period down to its primitive root.
    const std::size_t n = out.period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i)
            repeats = out.period[i] == out.period[i % d];
        if (repeats) {
            out.period.resize(d);
            break;
        }
    }

    // Absorb a preperiod tail that already matches the cycle, rotating the
    // period so the value is unchanged.
    while (!out.preperiod.empty() && out.preperiod.back() == out.period.back()) {
        out.preperiod.pop_back();
        out.period.insert(out.period.begin(), out.period.back());
        out.period.pop_back();
    }
    return out;
}

std::string graph_to_dot(const StateGraph& graph) {
    std::string dot = "digraph state_graph {\n";
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
        dot += "  n" + std::to_string(i) + " [label=\"" + to_string(graph.node_value(i)) +
               "\"];\n";
    }
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
        for (std::uint64_t e = graph.edge_offsets[i]; e < graph.edge_offsets[i + 1]; ++e) {
            dot += "  n" + std::to_string(i) + " -> n" + std::to_string(graph.edge_target[e]) +
                   " [label=\"" + std::to_string(graph.edge_digit[e]) + "\"];\n";
        }
    }
    dot += "}\n";
    return dot;
}

unsigned long node_cap() {
    const char* env = std::getenv("ZIFS_NODE_CAP");
    if (env && *env != '\0' && *env != '-') {
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (errno == 0 && end != nullptr && *end == '\0' && v > 0 &&
            v <= std::numeric_limits<unsigned long>::max())
            return static_cast<unsigned long>(v);
    }
    return 5000000UL;
}

}  // namespace zifs
