#pragma once

#include "pamlab/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pamlab {

struct RgivParams {
    double lambda = 1.0;
    double t = 1.0;

    RgivParams(double lambda, double t);
    double theta() const { return t / lambda; }
    // "poisson_edge" when lambda t^3 is of order one, "gaussian" when it is large and t <= lambda.
    std::string regime() const;
};

double h_theta(double u, double v, double theta);
// H(theta) = E h(U1, U2) = (2/theta^2)(1 - theta + theta^2/2 - e^{-theta}).
double big_H(double theta);
// g(u) = E h(U, u) = u - (1 - e^{-theta u})/theta + (1 - u)(1 - e^{-theta u}).
double g_theta(double u, double theta);

// Vertices are stored in increasing order of U, so h(U_i, U_j) = p_i for i < j.
struct RgivSample {
    std::int64_t N = 0;
    std::vector<double> U;                                   // ascending
    std::vector<std::pair<std::int32_t, std::int32_t>> edges; // (i, j), i < j, 0-based
    std::vector<std::vector<std::int32_t>> adj;              // sorted neighbor lists

    std::uint64_t edge_count() const { return edges.size(); }
};

// N ~ Poisson(lambda t) unless forced_N is given. Guard: lambda t <= 10^4.
RgivSample sample_rgiv(const RgivParams& params, Rng& rng, std::optional<std::int64_t> forced_N = std::nullopt);

std::uint64_t count_triangles(const RgivSample& s);

struct RgivEdgeTerms {
    double E = 0.0;
    double mu = 0.0;
    double S = 0.0;
    double L = 0.0;
    double D = 0.0;
    double R1 = 0.0;
    double R2 = 0.0;
    double residual = 0.0;   // (E - mu) - (S + L + D + R1 + R2)
};

struct RgivTriangleTerms {
    double T = 0.0;
    double Delta = 0.0;
    double T1 = 0.0;
    double T2 = 0.0;
    double T3 = 0.0;
    double residual = 0.0;   // T - (Delta + T1 + T2 + T3)
};

RgivEdgeTerms edge_decomposition(const RgivSample& s, const RgivParams& params);
RgivTriangleTerms triangle_decomposition(const RgivSample& s, const RgivParams& params);

// Direct summation over all pairs and triples; N <= 400.
RgivEdgeTerms edge_decomposition_direct(const RgivSample& s, const RgivParams& params);
RgivTriangleTerms triangle_decomposition_direct(const RgivSample& s, const RgivParams& params);

}  // namespace pamlab
