#include "pamlab/rgiv.hpp"

#include "pamlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pamlab {

RgivParams::RgivParams(double lambda_, double t_) : lambda(lambda_), t(t_)
{
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive");
    require(std::isfinite(t) && t > 0.0, "t must be positive");
}

std::string RgivParams::regime() const
{
    const double x = lambda * t * t * t;
    if (x <= 10.0) return "poisson_edge";
    if (t <= lambda) return "gaussian";
    return "dense";
}

double h_theta(double u, double v, double theta)
{
    return -std::expm1(-theta * std::min(u, v));
}

double big_H(double theta)
{
    require(theta >= 0.0, "theta must be nonnegative");
    if (theta < 0.5) {
        // 2 sum_{k>=3} (-1)^{k+1} theta^{k-2} / k!
        double term = 2.0 * theta / 6.0;
        double s = 0.0;
        for (int k = 3; k < 30; ++k) {
            s += term;
            term *= -theta / (k + 1);
        }
        return s;
    }
    return 2.0 / (theta * theta) * (1.0 - theta + 0.5 * theta * theta - std::exp(-theta));
}

double g_theta(double u, double theta)
{
    require(u >= 0.0 && u <= 1.0 && theta >= 0.0, "g_theta needs u in [0,1] and theta >= 0");
    const double x = theta * u;
    const double tail = -(1.0 - u) * std::expm1(-x);
    double head;   // int_0^u (1 - e^{-theta v}) dv
    if (x < 0.5) {
        // u * sum_{k>=2} (-1)^k x^{k-1} / k!
        double term = x / 2.0;
        double s = 0.0;
        for (int k = 2; k < 30; ++k) {
            s += term;
            term *= -x / (k + 1);
        }
        head = u * s;
    } else {
        head = u + std::expm1(-x) / theta;
    }
    return head + tail;
}

RgivSample sample_rgiv(const RgivParams& params, Rng& rng, std::optional<std::int64_t> forced_N)
{
    const double lt = params.lambda * params.t;
    guard(lt <= 1e4, "RGIV sampling is limited to lambda t <= 10^4");
    RgivSample s;
    if (forced_N) {
        require(*forced_N >= 0, "forced N must be nonnegative");
        guard(*forced_N <= 20000, "forced N is limited to 2 * 10^4");
        s.N = *forced_N;
    } else {
        s.N = static_cast<std::int64_t>(rng.poisson(lt));
    }
    const std::size_t N = static_cast<std::size_t>(s.N);
    s.U.resize(N);
    for (auto& u : s.U) u = rng.uniform();
    std::sort(s.U.begin(), s.U.end());
    s.adj.assign(N, {});
    const double theta = params.theta();
    // For i < j the edge is present with probability 1 - e^{-theta U_i}; skip over
    // absent partners with geometric gaps of rate theta U_i.
    for (std::size_t i = 0; i + 1 < N; ++i) {
        const double rate = theta * s.U[i];
        if (rate <= 0.0) continue;
        double j = static_cast<double>(i);
        for (;;) {
            j += 1.0 + std::floor(rng.exponential() / rate);
            if (j >= static_cast<double>(N)) break;
            const auto jj = static_cast<std::int32_t>(j);
            s.edges.emplace_back(static_cast<std::int32_t>(i), jj);
            s.adj[i].push_back(jj);
            s.adj[static_cast<std::size_t>(jj)].push_back(static_cast<std::int32_t>(i));
        }
    }
    return s;
}

std::uint64_t count_triangles(const RgivSample& s)
{
    std::uint64_t count = 0;
    for (auto [i, j] : s.edges) {
        const auto& a = s.adj[static_cast<std::size_t>(i)];
        const auto& b = s.adj[static_cast<std::size_t>(j)];
        auto x = std::upper_bound(a.begin(), a.end(), j);
        auto y = std::upper_bound(b.begin(), b.end(), j);
        while (x != a.end() && y != b.end()) {
            if (*x < *y)
                ++x;
            else if (*y < *x)
                ++y;
            else {
                ++count;
                ++x;
                ++y;
            }
        }
    }
    return count;
}

namespace {

std::vector<double> edge_probs(const RgivSample& s, double theta)
{
    std::vector<double> p(s.U.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = -std::expm1(-theta * s.U[i]);
    return p;
}

}  // namespace

RgivEdgeTerms edge_decomposition(const RgivSample& s, const RgivParams& params)
{
    const double theta = params.theta();
    const double H = big_H(theta);
    const double lt = params.lambda * params.t;
    const auto p = edge_probs(s, theta);
    const long double N = static_cast<long double>(s.N);
    long double M = 0.0L, sum_g = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
        M += static_cast<long double>(p[i]) * (N - 1.0L - static_cast<long double>(i));
        sum_g += g_theta(s.U[i], theta);
    }
    RgivEdgeTerms r;
    const long double E = static_cast<long double>(s.edges.size());
    const long double mu = 0.5L * lt * lt * H;
    r.E = static_cast<double>(E);
    r.mu = static_cast<double>(mu);
    r.S = static_cast<double>(E - M);
    r.L = static_cast<double>((N - 1.0L) * (sum_g - N * H));
    r.D = static_cast<double>(lt * H * (N - lt));
    r.R1 = static_cast<double>(M - (N - 1.0L) * sum_g + 0.5L * N * (N - 1.0L) * H);
    r.R2 = static_cast<double>(0.5L * H * ((N - lt) * (N - lt) - N));
    r.residual = static_cast<double>((E - mu) - (static_cast<long double>(r.S) + r.L + r.D + r.R1 + r.R2));
    return r;
}

RgivTriangleTerms triangle_decomposition(const RgivSample& s, const RgivParams& params)
{
    const auto p = edge_probs(s, params.theta());
    const std::size_t N = p.size();
    std::vector<long double> p2(N + 1, 0.0L), ps(N + 1, 0.0L), tail(N + 1, 0.0L);
    for (std::size_t i = 0; i < N; ++i) {
        p2[i + 1] = p2[i] + static_cast<long double>(p[i]) * p[i];
        ps[i + 1] = ps[i] + p[i];
    }
    // tail[j] = sum_{j' >= j} p_j' (N - 1 - j')
    for (std::size_t j = N; j-- > 0;) tail[j] = tail[j + 1] + static_cast<long double>(p[j]) * static_cast<long double>(N - 1 - j);

    long double delta = 0.0L;
    for (std::size_t i = 0; i < N; ++i) delta += static_cast<long double>(p[i]) * p[i] * tail[i + 1];

    // C = sum over edges of c_ij = sum_{k != i,j} h_ik h_jk.
    long double C = 0.0L;
    for (auto [i32, j32] : s.edges) {
        const std::size_t i = static_cast<std::size_t>(i32), j = static_cast<std::size_t>(j32);
        C += p2[i] + static_cast<long double>(p[i]) * (ps[j] - ps[i + 1]) +
             static_cast<long double>(p[i]) * p[j] * static_cast<long double>(N - 1 - j);
    }
    // W = sum over realized wedges of h between the two ends.
    long double W = 0.0L;
    for (const auto& nb : s.adj) {
        const std::size_t d = nb.size();
        for (std::size_t r = 0; r < d; ++r) W += static_cast<long double>(p[static_cast<std::size_t>(nb[r])]) * static_cast<long double>(d - 1 - r);
    }
    const long double T = static_cast<long double>(count_triangles(s));
    RgivTriangleTerms out;
    out.T = static_cast<double>(T);
    out.Delta = static_cast<double>(delta);
    out.T1 = static_cast<double>(C - 3.0L * delta);
    out.T2 = static_cast<double>(W - 2.0L * C + 3.0L * delta);
    out.T3 = static_cast<double>(T - W + C - delta);
    out.residual = static_cast<double>(T - (static_cast<long double>(out.Delta) + out.T1 + out.T2 + out.T3));
    return out;
}

namespace {

std::vector<std::uint8_t> dense_adjacency(const RgivSample& s)
{
    const std::size_t N = static_cast<std::size_t>(s.N);
    std::vector<std::uint8_t> w(N * N, 0);
    for (auto [i, j] : s.edges) {
        w[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)] = 1;
        w[static_cast<std::size_t>(j) * N + static_cast<std::size_t>(i)] = 1;
    }
    return w;
}

}  // namespace

RgivEdgeTerms edge_decomposition_direct(const RgivSample& s, const RgivParams& params)
{
    guard(s.N <= 400, "direct RGIV decomposition is limited to N <= 400");
    const double theta = params.theta();
    const double H = big_H(theta);
    const double lt = params.lambda * params.t;
    const std::size_t N = static_cast<std::size_t>(s.N);
    const auto w = dense_adjacency(s);
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i) g[i] = g_theta(s.U[i], theta);
    long double S = 0.0L, R1 = 0.0L, sum_g = 0.0L, E = 0.0L;
    for (std::size_t i = 0; i < N; ++i) {
        sum_g += g[i];
        for (std::size_t j = i + 1; j < N; ++j) {
            const double h = h_theta(s.U[i], s.U[j], theta);
            E += w[i * N + j];
            S += w[i * N + j] - h;
            R1 += h - g[i] - g[j] + H;
        }
    }
    const long double n = static_cast<long double>(N);
    RgivEdgeTerms r;
    r.E = static_cast<double>(E);
    r.mu = static_cast<double>(0.5L * lt * lt * H);
    r.S = static_cast<double>(S);
    r.L = static_cast<double>((n - 1.0L) * (sum_g - n * H));
    r.D = static_cast<double>(lt * H * (n - lt));
    r.R1 = static_cast<double>(R1);
    r.R2 = static_cast<double>(0.5L * H * ((n - lt) * (n - lt) - n));
    r.residual = static_cast<double>((E - r.mu) - (static_cast<long double>(r.S) + r.L + r.D + r.R1 + r.R2));
    return r;
}

RgivTriangleTerms triangle_decomposition_direct(const RgivSample& s, const RgivParams& params)
{
    guard(s.N <= 400, "direct RGIV decomposition is limited to N <= 400");
    const double theta = params.theta();
    const std::size_t N = static_cast<std::size_t>(s.N);
    const auto w = dense_adjacency(s);
    auto h = [&](std::size_t i, std::size_t j) { return static_cast<long double>(h_theta(s.U[i], s.U[j], theta)); };
    long double T = 0.0L, D = 0.0L, T1 = 0.0L, T2 = 0.0L, T3 = 0.0L;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            const long double hij = h(i, j), wij = w[i * N + j], cij = wij - hij;
            for (std::size_t k = j + 1; k < N; ++k) {
                const long double hik = h(i, k), hjk = h(j, k);
                const long double wik = w[i * N + k], wjk = w[j * N + k];
                const long double cik = wik - hik, cjk = wjk - hjk;
                T += wij * wik * wjk;
                D += hij * hik * hjk;
                T1 += cij * hik * hjk + cik * hij * hjk + cjk * hij * hik;
                T2 += hij * cik * cjk + hik * cij * cjk + hjk * cij * cik;
                T3 += cij * cik * cjk;
            }
        }
    RgivTriangleTerms out;
    out.T = static_cast<double>(T);
    out.Delta = static_cast<double>(D);
    out.T1 = static_cast<double>(T1);
    out.T2 = static_cast<double>(T2);
    out.T3 = static_cast<double>(T3);
    out.residual = static_cast<double>(T - (D + T1 + T2 + T3));
    return out;
}

}  // namespace pamlab
