#include "pamlab/subgraphs.hpp"

#include "pamlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pamlab {

namespace {

int count_in_row(const PamGraph& g, std::int64_t j, std::int32_t i)
{
    int c = 0;
    for (std::int32_t t : g.row(j)) c += (t == i);
    return c;
}

// Distinct targets of vertex k with multiplicities, ascending.
void distinct_targets(const PamGraph& g, std::int64_t k, std::vector<std::pair<std::int32_t, int>>& out)
{
    out.clear();
    for (std::int32_t t : g.row(k)) {
        auto it = std::find_if(out.begin(), out.end(), [t](const auto& p) { return p.first == t; });
        if (it == out.end())
            out.emplace_back(t, 1);
        else
            ++it->second;
    }
    std::sort(out.begin(), out.end());
}

struct WeightedAdjacency {
    std::vector<std::vector<std::pair<std::int32_t, std::uint64_t>>> nbr;   // sorted by neighbour

    explicit WeightedAdjacency(const PamGraph& g) : nbr(static_cast<std::size_t>(g.n + 1))
    {
        for (std::int64_t k = 2; k <= g.n; ++k)
            for (std::int32_t t : g.row(k)) {
                nbr[static_cast<std::size_t>(k)].emplace_back(t, 1);
                nbr[static_cast<std::size_t>(t)].emplace_back(static_cast<std::int32_t>(k), 1);
            }
        for (auto& list : nbr) {
            std::sort(list.begin(), list.end());
            std::size_t w = 0;
            for (std::size_t r = 0; r < list.size(); ++r) {
                if (w > 0 && list[w - 1].first == list[r].first)
                    list[w - 1].second += 1;
                else
                    list[w++] = list[r];
            }
            list.resize(w);
        }
    }

    std::uint64_t weight(std::int32_t u, std::int32_t v) const
    {
        const auto& list = nbr[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(v, std::uint64_t{0}));
        return (it != list.end() && it->first == v) ? it->second : 0;
    }
};

void check_small_subgraph_request(const PamGraph& g, int len)
{
    require(len >= 3 && len <= 6, "subgraph size must be between 3 and 6");
    guard(g.n <= 10000, "cycle and clique counts are limited to n <= 10^4");
}

}  // namespace

TriangleCounts count_triangles(const PamGraph& g, std::int64_t cap)
{
    TriangleCounts tc;
    const std::int64_t keep = cap < 0 ? g.n : std::min(cap, g.n);
    tc.by_oldest.assign(static_cast<std::size_t>(keep + 1), 0);
    std::vector<std::pair<std::int32_t, int>> tg;
    for (std::int64_t k = 3; k <= g.n; ++k) {
        distinct_targets(g, k, tg);
        for (std::size_t a = 0; a < tg.size(); ++a)
            for (std::size_t b = a + 1; b < tg.size(); ++b) {
                const std::int32_t i = tg[a].first;
                const std::int32_t j = tg[b].first;
                const int mji = count_in_row(g, j, i);
                if (mji == 0) continue;
                const std::uint64_t c = static_cast<std::uint64_t>(tg[a].second) * tg[b].second * mji;
                tc.total += c;
                tc.simple += 1;
                if (i <= keep) tc.by_oldest[static_cast<std::size_t>(i)] += c;
            }
    }
    return tc;
}

SubgraphCount count_cycles(const PamGraph& g, int len)
{
    check_small_subgraph_request(g, len);
    WeightedAdjacency adj(g);
    SubgraphCount out;
    std::vector<std::int32_t> path;
    std::vector<char> on_path(static_cast<std::size_t>(g.n + 1), 0);

    // Paths start at the smallest vertex of the cycle; each cycle is met in both directions.
    auto dfs = [&](auto&& self, std::int32_t s, std::int32_t v, int depth, std::uint64_t w) -> void {
        if (depth == len) {
            std::uint64_t back = adj.weight(v, s);
            if (back > 0) {
                out.simple += 1;
                out.weighted += w * back;
            }
            return;
        }
        for (const auto& [u, wu] : adj.nbr[static_cast<std::size_t>(v)]) {
            if (u <= s || on_path[static_cast<std::size_t>(u)]) continue;
            on_path[static_cast<std::size_t>(u)] = 1;
            self(self, s, u, depth + 1, w * wu);
            on_path[static_cast<std::size_t>(u)] = 0;
        }
    };
    for (std::int32_t s = 1; s <= g.n; ++s) {
        on_path[static_cast<std::size_t>(s)] = 1;
        dfs(dfs, s, s, 1, 1);
        on_path[static_cast<std::size_t>(s)] = 0;
    }
    out.simple /= 2;
    out.weighted /= 2;
    return out;
}

SubgraphCount count_cliques(const PamGraph& g, int len)
{
    check_small_subgraph_request(g, len);
    WeightedAdjacency adj(g);
    SubgraphCount out;
    std::vector<std::int32_t> members;

    auto extend = [&](auto&& self, const std::vector<std::int32_t>& cand, std::uint64_t w) -> void {
        if (static_cast<int>(members.size()) == len) {
            out.simple += 1;
            out.weighted += w;
            return;
        }
        for (std::size_t a = 0; a < cand.size(); ++a) {
            const std::int32_t v = cand[a];
            std::uint64_t wv = w;
            for (std::int32_t u : members) wv *= adj.weight(u, v);
            std::vector<std::int32_t> next;
            for (std::size_t b = a + 1; b < cand.size(); ++b)
                if (adj.weight(v, cand[b]) > 0) next.push_back(cand[b]);
            members.push_back(v);
            self(self, next, wv);
            members.pop_back();
        }
    };
    for (std::int32_t v = 1; v <= g.n; ++v) {
        std::vector<std::int32_t> cand;
        for (const auto& [u, wu] : adj.nbr[static_cast<std::size_t>(v)])
            if (u > v) cand.push_back(u);
        members.assign(1, v);
        extend(extend, cand, 1);
    }
    return out;
}

DecompositionTerms decomposition_terms(const Environment& env, const PamGraph& g)
{
    const std::int64_t n = env.n();
    require(g.n == n, "environment and graph sizes differ");
    const int m = g.m;
    const std::size_t sz = static_cast<std::size_t>(n + 2);

    // theta_ij = a_i r_j with a_i = psi_i / R_i and r_j = R_{j-1}.
    std::vector<double> a(sz, 0.0), r(sz, 0.0);
    for (std::int64_t i = 1; i <= n; ++i) {
        a[i] = env.psi[i] * std::exp(-env.log_R[i]);
        r[i] = i >= 2 ? std::exp(env.log_R[i - 1]) : 1.0;
    }
    std::vector<long double> p_a2(sz, 0.0L), p_ar(sz, 0.0L), s_r2(sz, 0.0L);
    for (std::int64_t i = 1; i <= n; ++i) {
        p_a2[i + 1] = p_a2[i] + static_cast<long double>(a[i]) * a[i];      // sum_{c <= i} a_c^2 at index i+1
        p_ar[i] = p_ar[i - 1] + static_cast<long double>(a[i]) * r[i];      // sum_{c <= i} a_c r_c
    }
    for (std::int64_t i = n; i >= 1; --i) s_r2[i - 1] = s_r2[i] + static_cast<long double>(r[i]) * r[i];
    // p_a2[i] = sum_{c < i} a_c^2, s_r2[i] = sum_{c > i} r_c^2.

    long double delta = 0.0L;
    for (std::int64_t j = 2; j < n; ++j) delta += p_a2[j] * a[j] * r[j] * s_r2[j];

    auto coef = [&](std::int64_t lo, std::int64_t hi) -> long double {
        return static_cast<long double>(r[lo]) * r[hi] * p_a2[lo] +
               static_cast<long double>(a[lo]) * r[hi] * (p_ar[hi - 1] - p_ar[lo]) +
               static_cast<long double>(a[lo]) * a[hi] * s_r2[hi];
    };

    // Children lists in ascending order (CSR).
    std::vector<std::int64_t> start(sz + 1, 0);
    for (std::int64_t k = 2; k <= n; ++k)
        for (std::int32_t t : g.row(k)) ++start[static_cast<std::size_t>(t) + 1];
    for (std::size_t i = 1; i <= sz; ++i) start[i] += start[i - 1];
    std::vector<std::int32_t> child(static_cast<std::size_t>(start[sz]));
    {
        std::vector<std::int64_t> fill(start.begin(), start.end());
        for (std::int64_t k = 2; k <= n; ++k)
            for (std::int32_t t : g.row(k)) child[static_cast<std::size_t>(fill[static_cast<std::size_t>(t)]++)] = static_cast<std::int32_t>(k);
    }

    long double e1 = 0.0L, qa = 0.0L, qb = 0.0L, qc = 0.0L;
    for (std::int64_t k = 2; k <= n; ++k) {
        auto row = g.row(k);
        long double out_a = 0.0L;
        for (int l = 0; l < m; ++l) {
            const std::int32_t t = row[static_cast<std::size_t>(l)];
            e1 += coef(t, k);
            out_a += a[t];
            for (int l2 = l + 1; l2 < m; ++l2) {
                const std::int32_t t2 = row[static_cast<std::size_t>(l2)];
                if (t2 == t) continue;
                qc += static_cast<long double>(a[std::min(t, t2)]) * r[std::max(t, t2)];
            }
        }
        long double in_r = 0.0L;
        for (std::int64_t e = start[static_cast<std::size_t>(k)]; e < start[static_cast<std::size_t>(k) + 1]; ++e)
            in_r += r[child[static_cast<std::size_t>(e)]];
        qb += out_a * in_r;
    }
    for (std::int64_t i = 1; i <= n; ++i) {
        long double before = 0.0L;   // sum of a_j over children strictly older than the current group
        std::int64_t e = start[static_cast<std::size_t>(i)];
        const std::int64_t end = start[static_cast<std::size_t>(i) + 1];
        while (e < end) {
            const std::int32_t c = child[static_cast<std::size_t>(e)];
            int mult = 0;
            while (e < end && child[static_cast<std::size_t>(e)] == c) {
                ++mult;
                ++e;
            }
            qa += mult * r[c] * before;
            before += static_cast<long double>(mult) * a[c];
        }
    }

    const long double T = static_cast<long double>(count_triangles(g).total);
    const long double mm = m;
    const long double c0 = mm * mm * (mm - 1.0L);
    const long double L = mm * (mm - 1.0L) * e1;
    const long double Q = (mm - 1.0L) * qa + (mm - 1.0L) * qb + mm * qc;

    DecompositionTerms d;
    const long double t1 = e1 - 3.0L * mm * delta;
    const long double t2 = (Q - 2.0L * L + 3.0L * c0 * delta) / mm;
    const long double t3 = T - Q + L - c0 * delta;
    d.delta_n = static_cast<double>(delta);
    d.t1 = static_cast<double>(t1);
    d.t2 = static_cast<double>(t2);
    d.t3 = static_cast<double>(t3);
    d.total = static_cast<double>(T);
    d.residual = static_cast<double>(T - (c0 * static_cast<long double>(d.delta_n) + mm * (mm - 1.0L) * d.t1 + mm * d.t2 + d.t3));
    return d;
}

DecompositionTerms decomposition_terms_direct(const Environment& env, const PamGraph& g)
{
    const std::int64_t n = env.n();
    require(g.n == n, "environment and graph sizes differ");
    guard(n <= 1000, "direct decomposition is limited to n <= 1000");
    const int m = g.m;
    const std::size_t sz = static_cast<std::size_t>(n + 1);
    std::vector<std::int32_t> mult(sz * sz, 0);   // mult[j*sz+i]: edges j -> i
    for (std::int64_t k = 2; k <= n; ++k)
        for (std::int32_t t : g.row(k)) ++mult[static_cast<std::size_t>(k) * sz + static_cast<std::size_t>(t)];
    auto M = [&](std::int64_t lo, std::int64_t hi) { return static_cast<long double>(mult[static_cast<std::size_t>(hi) * sz + static_cast<std::size_t>(lo)]); };
    std::vector<long double> th(sz * sz, 0.0L);
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j = i + 1; j <= n; ++j) th[static_cast<std::size_t>(i) * sz + static_cast<std::size_t>(j)] = theta(env, i, j);
    auto T = [&](std::int64_t lo, std::int64_t hi) { return th[static_cast<std::size_t>(lo) * sz + static_cast<std::size_t>(hi)]; };

    const long double mm = m;
    long double delta = 0.0L, t1 = 0.0L, quad = 0.0L, t3 = 0.0L, tri = 0.0L;
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j = i + 1; j <= n; ++j) {
            const long double tij = T(i, j), a = M(i, j) - mm * tij;
            for (std::int64_t k = j + 1; k <= n; ++k) {
                const long double tik = T(i, k), tjk = T(j, k);
                const long double b = M(i, k) - mm * tik, c = M(j, k) - mm * tjk;
                // Sum over distinct labels l2 != l3 of vertex k's centered indicators.
                const long double same = -tjk * M(i, k) - tik * M(j, k) + mm * tik * tjk;
                const long double x = b * c - same;
                delta += tij * tik * tjk;
                t1 += a * tik * tjk + b * tij * tjk + c * tij * tik;
                quad += (mm - 1.0L) * (tjk * a * b + tik * a * c) + mm * tij * x;
                t3 += a * x;
                tri += M(i, j) * M(i, k) * M(j, k);
            }
        }
    DecompositionTerms d;
    d.delta_n = static_cast<double>(delta);
    d.t1 = static_cast<double>(t1);
    d.t2 = static_cast<double>(quad / mm);
    d.t3 = static_cast<double>(t3);
    d.total = static_cast<double>(tri);
    d.residual = static_cast<double>(tri - (mm * mm * (mm - 1.0L) * delta + mm * (mm - 1.0L) * t1 + quad + t3));
    return d;
}

}  // namespace pamlab
