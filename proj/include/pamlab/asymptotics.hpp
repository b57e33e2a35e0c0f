#pragma once

#include "pamlab/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pamlab {

// Vertices 1..k, edges as unordered pairs; multi-edges allowed.
struct Diagram {
    int k = 0;
    std::vector<std::pair<int, int>> edges;
};

struct DiagramProfile {
    std::vector<int> d;     // d[j-1]: edges {j,v} with v > j
    std::vector<int> ell;   // ell[j-1]: edges crossing the cut after j
};

struct AsymptoticOrder {
    Rational n_exponent;
    int log_exponent = 0;

    friend bool operator==(const AsymptoticOrder&, const AsymptoticOrder&) = default;
    // Lexicographic on (n_exponent, log_exponent).
    friend bool operator<(const AsymptoticOrder& a, const AsymptoticOrder& b)
    {
        if (a.n_exponent != b.n_exponent) return a.n_exponent < b.n_exponent;
        return a.log_exponent < b.log_exponent;
    }
};

void validate_diagram(const Diagram& dg);
DiagramProfile profile(const Diagram& dg);
std::vector<Rational> exponents(const DiagramProfile& p, const Rational& beta);

// Order of sum_{i_1<...<i_k<=n} prod i_j^{-a_j}, accumulated from the innermost index outward.
AsymptoticOrder evaluate_F(const std::vector<Rational>& a);

// Literal backward recursion on suffix sums with t = max{i : a_i+...+a_k <= k-i+1}.
// Kept for comparison; it overstates the order when a log tail follows a growing prefix.
AsymptoticOrder evaluate_F_backward(const std::vector<Rational>& a);

Rational beta_of(int m, const Rational& delta);
AsymptoticOrder subgraph_mean_order(const Diagram& dg, int m, const Rational& delta);

// All relabelings of the vertex set, deduplicated as multisets of edges.
std::vector<Diagram> enumerate_embeddings(const Diagram& dg);
// Maximum order over all embeddings.
AsymptoticOrder subgraph_order_max(const Diagram& dg, int m, const Rational& delta);

// Exact partial sums F_k(n) for every n in ns (ascending), O(k * max(ns)).
std::vector<double> numeric_F(const std::vector<double>& a, const std::vector<std::int64_t>& ns);
double numeric_F(const std::vector<double>& a, std::int64_t n);

Diagram cycle_diagram(int k);
Diagram clique_diagram(int k);

}  // namespace pamlab
