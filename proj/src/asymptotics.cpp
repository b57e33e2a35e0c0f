#include "pamlab/asymptotics.hpp"

#include "pamlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace pamlab {

void validate_diagram(const Diagram& dg)
{
    require(dg.k >= 1, "diagram needs at least one vertex");
    require(dg.k <= 12, "diagram too large");
    std::vector<int> parent(static_cast<std::size_t>(dg.k + 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (auto [u, v] : dg.edges) {
        require(u >= 1 && u <= dg.k && v >= 1 && v <= dg.k, "edge endpoint out of range");
        require(u != v, "self-loops are not allowed");
        parent[static_cast<std::size_t>(find(u))] = find(v);
    }
    for (int v = 2; v <= dg.k; ++v) require(find(v) == find(1), "diagram must be connected");
}

DiagramProfile profile(const Diagram& dg)
{
    validate_diagram(dg);
    DiagramProfile p;
    p.d.assign(static_cast<std::size_t>(dg.k), 0);
    p.ell.assign(static_cast<std::size_t>(dg.k), 0);
    for (auto [u, v] : dg.edges) {
        int lo = std::min(u, v), hi = std::max(u, v);
        p.d[static_cast<std::size_t>(lo - 1)] += 1;
        for (int j = lo; j < hi; ++j) p.ell[static_cast<std::size_t>(j - 1)] += 1;
    }
    return p;
}

std::vector<Rational> exponents(const DiagramProfile& p, const Rational& beta)
{
    std::vector<Rational> a;
    int prev = 0;
    for (std::size_t j = 0; j < p.d.size(); ++j) {
        a.push_back(Rational(p.d[j]) - beta * Rational(p.ell[j] - prev));
        prev = p.ell[j];
    }
    return a;
}

AsymptoticOrder evaluate_F(const std::vector<Rational>& a)
{
    // Inner sum of order x^p (log x)^q; each new index multiplies by i^{-a_j} and sums.
    Rational p(0);
    int q = 0;
    const Rational minus_one(-1);
    for (const Rational& aj : a) {
        Rational e = p - aj;
        if (e > minus_one) {
            p = e + Rational(1);
        } else if (e == minus_one) {
            p = Rational(0);
            q += 1;
        } else {
            p = Rational(0);
            q = 0;
        }
    }
    return AsymptoticOrder{p, q};
}

AsymptoticOrder evaluate_F_backward(const std::vector<Rational>& a)
{
    AsymptoticOrder out{Rational(0), 0};
    std::size_t k = a.size();
    while (k > 0) {
        Rational suffix(0);
        std::size_t t = 0;
        Rational t_sum(0);
        for (std::size_t i = k; i >= 1; --i) {
            suffix += a[i - 1];
            if (suffix <= Rational(static_cast<std::int64_t>(k - i + 1))) {
                t = i;
                t_sum = suffix;
                break;
            }
        }
        if (t == 0) break;
        const Rational width(static_cast<std::int64_t>(k - t + 1));
        if (t_sum < width)
            out.n_exponent += width - t_sum;
        else
            out.log_exponent += 1;
        k = t - 1;
    }
    return out;
}

Rational beta_of(int m, const Rational& delta)
{
    require(m >= 2, "m must be at least 2");
    require(delta > Rational(-m), "delta must exceed -m");
    return (Rational(m) + delta) / (Rational(2 * m) + delta);
}

AsymptoticOrder subgraph_mean_order(const Diagram& dg, int m, const Rational& delta)
{
    return evaluate_F(exponents(profile(dg), beta_of(m, delta)));
}

std::vector<Diagram> enumerate_embeddings(const Diagram& dg)
{
    validate_diagram(dg);
    require(dg.k <= 6, "embedding enumeration is limited to k <= 6");
    std::vector<int> perm(static_cast<std::size_t>(dg.k));
    std::iota(perm.begin(), perm.end(), 1);
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<Diagram> out;
    do {
        std::vector<std::pair<int, int>> e;
        for (auto [u, v] : dg.edges) {
            int pu = perm[static_cast<std::size_t>(u - 1)], pv = perm[static_cast<std::size_t>(v - 1)];
            e.emplace_back(std::min(pu, pv), std::max(pu, pv));
        }
        std::sort(e.begin(), e.end());
        if (seen.insert(e).second) out.push_back(Diagram{dg.k, e});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

AsymptoticOrder subgraph_order_max(const Diagram& dg, int m, const Rational& delta)
{
    AsymptoticOrder best{Rational(0), 0};
    for (const Diagram& e : enumerate_embeddings(dg)) best = std::max(best, subgraph_mean_order(e, m, delta));
    return best;
}

std::vector<double> numeric_F(const std::vector<double>& a, const std::vector<std::int64_t>& ns)
{
    require(!a.empty() && a.size() <= 8, "numeric_F supports 1 <= k <= 8");
    require(std::is_sorted(ns.begin(), ns.end()), "n values must be ascending");
    guard(ns.empty() || ns.back() <= (std::int64_t{1} << 24), "numeric_F is limited to n <= 2^24");
    const std::size_t k = a.size();
    // G[j] = sum over i_1 < ... < i_j <= x of the product, G[0] = 1.
    std::vector<long double> G(k + 1, 0.0L);
    G[0] = 1.0L;
    std::vector<double> out;
    out.reserve(ns.size());
    std::size_t next = 0;
    const std::int64_t n_max = ns.empty() ? 0 : ns.back();
    for (std::int64_t i = 1; i <= n_max; ++i) {
        const long double li = std::log(static_cast<long double>(i));
        for (std::size_t j = k; j >= 1; --j) G[j] += std::exp(-static_cast<long double>(a[j - 1]) * li) * G[j - 1];
        while (next < ns.size() && ns[next] == i) {
            out.push_back(static_cast<double>(G[k]));
            ++next;
        }
    }
    while (next < ns.size()) {
        out.push_back(0.0);
        ++next;
    }
    return out;
}

double numeric_F(const std::vector<double>& a, std::int64_t n)
{
    return numeric_F(a, std::vector<std::int64_t>{n}).front();
}

Diagram cycle_diagram(int k)
{
    require(k >= 3, "cycles need at least 3 vertices");
    Diagram d{k, {}};
    for (int i = 1; i < k; ++i) d.edges.emplace_back(i, i + 1);
    d.edges.emplace_back(1, k);
    return d;
}

Diagram clique_diagram(int k)
{
    require(k >= 2, "cliques need at least 2 vertices");
    Diagram d{k, {}};
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) d.edges.emplace_back(i, j);
    return d;
}

}  // namespace pamlab
