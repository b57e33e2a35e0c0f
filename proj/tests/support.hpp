#pragma once

#include "pamlab/asymptotics.hpp"
#include "pamlab/rng.hpp"
#include "pamlab/simulator.hpp"
#include "pamlab/stats.hpp"
#include "pamlab/subgraphs.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace pamlab::testing {

// E T_n by enumerating every target sequence of vertices 3..n under the sequential rule
// P(edge l+1 of k -> v) = (deg^{(l)}(v) + delta) / (2m(k-2) + l + (k-1) delta).
inline double enumerate_mean(int m, double delta, int n)
{
    PamGraph g;
    g.n = n;
    g.m = m;
    g.targets.assign(static_cast<std::size_t>((n + 1) * m), 0);
    for (int l = 0; l < m; ++l) g.targets[static_cast<std::size_t>(2 * m + l)] = 1;
    std::vector<double> deg(static_cast<std::size_t>(n + 1), 0.0);
    deg[1] = deg[2] = m;
    double total = 0.0;
    std::function<void(int, int, double)> rec = [&](int k, int l, double prob) {
        if (k > n) {
            total += prob * static_cast<double>(count_triangles(g).total);
            return;
        }
        if (l == m) {
            deg[static_cast<std::size_t>(k)] += m;
            rec(k + 1, 0, prob);
            deg[static_cast<std::size_t>(k)] -= m;
            return;
        }
        const double denom = 2.0 * m * (k - 2) + l + (k - 1) * delta;
        for (int v = 1; v < k; ++v) {
            const double p = (deg[static_cast<std::size_t>(v)] + delta) / denom;
            g.targets[static_cast<std::size_t>(k * m + l)] = v;
            deg[static_cast<std::size_t>(v)] += 1;
            rec(k, l + 1, prob * p);
            deg[static_cast<std::size_t>(v)] -= 1;
        }
    };
    rec(3, 0, 1.0);
    return total;
}

// Random connected multigraph: random spanning tree plus up to `extra` additional edges.
inline Diagram random_diagram(Rng& rng, int k, int extra)
{
    Diagram d{k, {}};
    for (int v = 2; v <= k; ++v) {
        const int u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(v - 1)));
        d.edges.emplace_back(u, v);
    }
    const int more = static_cast<int>(rng.below(static_cast<std::uint64_t>(extra + 1)));
    for (int e = 0; e < more && k >= 2; ++e) {
        int u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
        if (v >= u) ++v;
        d.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return d;
}

struct FittedOrder {
    double n_exponent = 0.0;
    double log_exponent = 0.0;
};

// Least squares of y on {u, log u, 1}.
inline FittedOrder fit_log_basis(const std::vector<double>& us, const std::vector<double>& ys)
{
    const Eigen::Index r = static_cast<Eigen::Index>(us.size());
    Eigen::MatrixXd X(r, 3);
    Eigen::VectorXd y(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        const double u = us[static_cast<std::size_t>(i)];
        X(i, 0) = u;
        X(i, 1) = std::log(u);
        X(i, 2) = 1.0;
        y(i) = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd b = X.colPivHouseholderQr().solve(y);
    return {b(0), b(1)};
}

// Regression of log F_k(n) on {log n, log log n} over n = 2^12..2^20 at quarter-octave steps.
inline FittedOrder fit_numeric_order(const std::vector<Rational>& a)
{
    std::vector<double> ad;
    for (const auto& r : a) ad.push_back(r.to_double());
    std::vector<std::int64_t> ns;
    for (int s = 48; s <= 80; ++s) ns.push_back(static_cast<std::int64_t>(std::llround(std::pow(2.0, s / 4.0))));
    const std::vector<double> F = numeric_F(ad, ns);
    std::vector<double> xs(ns.begin(), ns.end());
    const GrowthFit f = fit_growth(xs, F, term_log_n | term_loglog_n);
    return {f.log_n, f.loglog_n};
}

// Same regression far beyond the exact range: exact prefix sums up to n0, then the
// continuum recursion dG_j/du = e^{(1-a_j)u} G_{j-1} in u = log x, carried in log G by RK4.
// Samples u in [u_max/2, u_max], where power-law corrections have died out.
inline FittedOrder fit_extended_order(const std::vector<Rational>& a, std::int64_t n0 = 1 << 16, double u_max = 400.0)
{
    const std::size_t k = a.size();
    std::vector<double> ad;
    for (const auto& r : a) ad.push_back(r.to_double());
    std::vector<long double> G(k + 1, 0.0L);
    G[0] = 1.0L;
    for (std::int64_t i = 1; i <= n0; ++i) {
        const long double li = std::log(static_cast<long double>(i));
        for (std::size_t j = k; j >= 1; --j) G[j] += std::exp(-static_cast<long double>(ad[j - 1]) * li) * G[j - 1];
    }
    std::vector<double> H(k + 1);
    for (std::size_t j = 0; j <= k; ++j) H[j] = static_cast<double>(std::log(G[j]));
    auto rhs = [&](double u, const std::vector<double>& y) {
        std::vector<double> d(k + 1, 0.0);
        for (std::size_t j = 1; j <= k; ++j) d[j] = std::exp((1.0 - ad[j - 1]) * u + y[j - 1] - y[j]);
        return d;
    };
    const double h = 0.01;
    double u = std::log(static_cast<double>(n0));
    std::vector<double> us, hs;
    const int steps = static_cast<int>(std::ceil((u_max - u) / h));
    for (int s = 0; s < steps; ++s) {
        std::vector<double> y(k + 1);
        const auto k1 = rhs(u, H);
        for (std::size_t j = 0; j <= k; ++j) y[j] = H[j] + 0.5 * h * k1[j];
        const auto k2 = rhs(u + 0.5 * h, y);
        for (std::size_t j = 0; j <= k; ++j) y[j] = H[j] + 0.5 * h * k2[j];
        const auto k3 = rhs(u + 0.5 * h, y);
        for (std::size_t j = 0; j <= k; ++j) y[j] = H[j] + h * k3[j];
        const auto k4 = rhs(u + h, y);
        for (std::size_t j = 0; j <= k; ++j) H[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        u += h;
        if (s % 500 == 0 && u >= u_max / 2) {
            us.push_back(u);
            hs.push_back(H[k]);
        }
    }
    return fit_log_basis(us, hs);
}

}  // namespace pamlab::testing
