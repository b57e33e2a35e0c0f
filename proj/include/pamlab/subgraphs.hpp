#pragma once

#include "pamlab/environment.hpp"
#include "pamlab/simulator.hpp"

#include <cstdint>
#include <vector>

namespace pamlab {

struct TriangleCounts {
    std::uint64_t total = 0;                 // label-multiplicity count
    std::uint64_t simple = 0;                // distinct vertex triples
    std::vector<std::uint64_t> by_oldest;    // index i = oldest vertex, 1..cap
};

// cap < 0 keeps every oldest-vertex count, cap = 0 keeps none.
TriangleCounts count_triangles(const PamGraph& g, std::int64_t cap = 0);

struct SubgraphCount {
    std::uint64_t simple = 0;     // distinct vertex sets (cycles: distinct cyclic orders)
    std::uint64_t weighted = 0;   // product of edge multiplicities
};

SubgraphCount count_cycles(const PamGraph& g, int len);
SubgraphCount count_cliques(const PamGraph& g, int len);

struct DecompositionTerms {
    double delta_n = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double total = 0.0;
    double residual = 0.0;
};

// T = m^2(m-1) Delta + m(m-1) t1 + m t2 + t3 for a graph sampled on env.
DecompositionTerms decomposition_terms(const Environment& env, const PamGraph& g);

// Same terms by direct summation over all vertex triples, O(n^3). Limited to n <= 1000.
DecompositionTerms decomposition_terms_direct(const Environment& env, const PamGraph& g);

}  // namespace pamlab
