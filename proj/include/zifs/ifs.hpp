#pragma once

// Self-similar sets K attached to an expanding Gaussian integer base beta and
// a finite digit set D of Gaussian rationals:
//
//     K = the attractor of the maps  phi_j(z) = (z + t_j) / beta,  t_j in D,
//       = { sum_{v >= 1} t_{j_v} beta^{-v} : every j_v in {1..l} }.
//
// This module provides:
//   * spec validation and the common digit denominator Gamma,
//   * the similarity dimension and depth-n composition/dedup reports,
//   * a rational bounding ball for K,
//   * finite state graphs deciding membership of Gaussian rationals in K,
//   * extraction and evaluation of eventually periodic digit codings.
//
// All arithmetic on set members is exact (GaussInt / GaussRat / mpq_class).

#include <zifs/gauss.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace zifs {

// An iterated function system z -> (z + t_j)/beta with norm(beta) >= 2 and
// pairwise distinct digits t_1..t_l (1-based indexing throughout). Gamma is
// the canonical least common multiple of the digit denominators, so that
// Gamma * t_j is a Gaussian integer for every digit.
struct IfsSpec {
    GaussInt beta;
    std::vector<GaussRat> digits;
    GaussInt Gamma;
};

// Validates and assembles a spec. Throws domain_error when norm(beta) < 2,
// when the digit list is empty, or when two digits coincide.
IfsSpec make_ifs_spec(GaussInt beta, std::vector<GaussRat> digits);

// An eventually periodic digit sequence j_1 j_2 ...: the first |preperiod|
// entries, followed by the period repeated forever. Entries are 1-based digit
// indices into IfsSpec::digits. The period must be nonempty.
struct Coding {
    std::vector<unsigned> preperiod;
    std::vector<unsigned> period;

    friend bool operator==(const Coding& a, const Coding& b) {
        return a.preperiod == b.preperiod && a.period == b.period;
    }
    friend bool operator!=(const Coding& a, const Coding& b) { return !(a == b); }
};

// Per-depth composition report: distinct_maps counts the distinct depth-n
// compositions of the defining maps (translation constants deduplicated
// exactly); s_n = 2 ln(distinct_maps) / (n ln norm(beta)) is the resulting
// upper bound on the box dimension, and s is the depth-1 similarity
// dimension. Always s_n <= s.
struct DimensionReport {
    unsigned long depth = 0;
    unsigned long distinct_maps = 0;
    double s_n = 0.0;
    double s = 0.0;
};

// A cover of K at depth n by `count` balls of the given common radius.
struct BoxCover {
    unsigned long depth = 0;
    unsigned long count = 0;
    double radius = 0.0;
};

// The finite orbit graph on one denominator lattice. Nodes are the Gaussian
// rationals w / denominator (w = numerators[i]) lying in the bounding ball
// |z|^2 <= bounding_radius_sq(spec); there is an edge i --j--> k exactly when
// beta * value(i) - t_j = value(k) and k is a node. Edges are stored in
// compressed sparse rows ordered by increasing digit index, so the first edge
// out of a node is the one coding_of follows.
struct StateGraph {
    IfsSpec spec;
    GaussInt denominator;                 // canonical; every node is w / denominator
    std::vector<GaussInt> numerators;     // sorted by norm_lex_less, duplicate-free
    std::vector<std::uint64_t> edge_offsets;  // size node_count() + 1
    std::vector<std::uint32_t> edge_target;
    std::vector<std::uint16_t> edge_digit;    // 1-based digit indices
    std::unordered_map<GaussInt, std::uint32_t, GaussIntHash> index;

    std::size_t node_count() const { return numerators.size(); }
    std::size_t edge_count() const { return edge_target.size(); }
    std::uint64_t out_degree(std::uint32_t i) const {
        return edge_offsets[i + 1] - edge_offsets[i];
    }
    GaussRat node_value(std::uint32_t i) const {
        return GaussRat(numerators[i], denominator);
    }
    // Node id of the numerator w, if w / denominator is a node.
    std::optional<std::uint32_t> find_numerator(const GaussInt& w) const;
    // Node id of the exact rational z, if z is a node (z's reduced
    // denominator must divide `denominator`; otherwise nullopt).
    std::optional<std::uint32_t> find_value(const GaussRat& z) const;
};

// s = 2 ln(l) / ln(norm(beta)): the similarity dimension of an l-map system
// whose maps all contract by 1/|beta|.
double similarity_dimension(const IfsSpec& spec);

// A rational R'^2 with K contained in { |z|^2 <= R'^2 }. Computed as T^2/r^2
// where T^2 = max_j |t_j|^2 and r is a rational lower bound on
// sqrt(norm(beta)) - 1 obtained by flooring the square root to 6 decimal
// digits. For the all-zero digit set this is 0.
mpq_class bounding_radius_sq(const IfsSpec& spec);

// Composes the system with itself to depth n >= 1 (n = 0 is a domain error),
// deduplicating the depth-n translation constants exactly, and reports the
// dimension bound obtained from the surviving count. Throws resource_error
// when a working set would exceed node_cap().
DimensionReport compose_depth(const IfsSpec& spec, unsigned long depth);

// Counts the distinct depth-n cylinders; K is covered by `count` balls of
// radius R' * norm(beta)^{-n/2}. Depth 0 reports the single bounding ball.
// Throws resource_error when a working set would exceed node_cap().
BoxCover box_cover_count(const IfsSpec& spec, unsigned long depth);

// Builds the full state graph on the lattice (1/(gamma*Gamma)) Z[i]: all
// lattice points in the bounding ball, with all admissible edges. gamma = 0
// is a domain error. Throws resource_error when the node count would exceed
// node_cap().
StateGraph build_state_graph(const IfsSpec& spec, const GaussInt& gamma);

// Repeatedly deletes nodes of out-degree 0 until none remain. The survivors
// are exactly the members of K whose denominator divides gamma*Gamma: a point
// belongs to K if and only if it starts an infinite orbit that stays in the
// bounding ball.
StateGraph prune_to_live(const StateGraph& graph);

// The pruned graph for the lattice (1/(gamma*Gamma)) Z[i]. Equivalent to
// prune_to_live(build_state_graph(spec, gamma)) but switches to a
// cylinder-seeded candidate construction when the full lattice ball is large,
// so denominators of norm ~1e10 stay cheap.
StateGraph live_graph(const IfsSpec& spec, const GaussInt& gamma);

// True iff z belongs to K. Decided exactly: immediately false when
// |z|^2 > R'^2, otherwise z must survive pruning in the graph built for
// gamma = denominator(z).
bool is_member(const IfsSpec& spec, const GaussRat& z);

// Walks the live graph from z, always following the smallest live digit
// index, until a node repeats; the walk before the repeat is the preperiod
// and the cycle is the period. eval_coding inverts this exactly. Non-members
// raise domain_error. The period length is at most the live node count.
Coding coding_of(const IfsSpec& spec, const GaussRat& z);

// The same walk starting from node `start` of an already pruned graph.
Coding coding_from_graph(const StateGraph& live, std::uint32_t start);

// Exact value of an eventually periodic coding with preperiod length m and
// period length n:
//   sum_{i=1}^{m} t_{j_i} beta^{-i}
//     + (beta^n / (beta^n - 1)) * sum_{i=m+1}^{m+n} t_{j_i} beta^{-i}.
// Indices outside 1..l or an empty period raise domain_error.
GaussRat eval_coding(const IfsSpec& spec, const Coding& c);

// Canonical form of a coding with the same value: the period is divided down
// to its primitive root, then the preperiod is shortened (rotating the period)
// while its last entry matches the period's last entry.
Coding minimize_coding(const Coding& c);

// GraphViz DOT rendering; node labels are canonical rational literals and
// edge labels are 1-based digit indices.
std::string graph_to_dot(const StateGraph& graph);

// Node budget for graph construction and composition working sets: the value
// of the environment variable ZIFS_NODE_CAP when it parses as a positive
// integer, otherwise 5,000,000.
unsigned long node_cap();

namespace detail {

// Test hook: the full graph restricted to an arbitrary ball |z|^2 <= ball_sq
// instead of bounding_radius_sq(spec).
StateGraph build_state_graph_ball(const IfsSpec& spec, const GaussInt& gamma,
                                  const mpq_class& ball_sq);

// The cylinder-seeded construction behind live_graph, exposed so tests can
// compare it against prune_to_live(build_state_graph(...)) directly.
StateGraph live_graph_seeded(const IfsSpec& spec, const GaussInt& gamma);

} // namespace detail

} // namespace zifs
