#include "pamlab/errors.hpp"
#include "pamlab/simulator.hpp"
#include "pamlab/subgraphs.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace pamlab;

namespace {

ModelParams constant(int m, const char* delta, Variant v = Variant::sequential_urn)
{
    return ModelParams(m, DeltaSpec::constant_of(Rational::parse(delta)), v);
}

// Triangle count by enumerating every label triple.
std::uint64_t label_enumeration(const PamGraph& g)
{
    std::uint64_t t = 0;
    for (std::int64_t i = 1; i <= g.n; ++i)
        for (std::int64_t j = i + 1; j <= g.n; ++j)
            for (std::int64_t k = j + 1; k <= g.n; ++k)
                for (int l1 = 0; l1 < g.m; ++l1)
                    for (int l2 = 0; l2 < g.m; ++l2)
                        for (int l3 = 0; l3 < g.m; ++l3)
                            if (l2 != l3 && g.target(j, l1) == i && g.target(k, l2) == i && g.target(k, l3) == j) ++t;
    return t;
}

std::vector<std::vector<std::uint64_t>> multiplicity_matrix(const PamGraph& g)
{
    std::vector<std::vector<std::uint64_t>> a(static_cast<std::size_t>(g.n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(g.n + 1), 0));
    for (std::int64_t k = 2; k <= g.n; ++k)
        for (auto t : g.row(k)) {
            ++a[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
            ++a[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
        }
    return a;
}

// Brute-force cycles: every vertex subset, every cyclic order starting at its minimum.
SubgraphCount brute_cycles(const PamGraph& g, int len)
{
    const auto a = multiplicity_matrix(g);
    SubgraphCount out;
    std::vector<int> sel(static_cast<std::size_t>(g.n), 0);
    std::fill(sel.begin(), sel.begin() + len, 1);
    do {
        std::vector<int> vs;
        for (std::int64_t v = 0; v < g.n; ++v)
            if (sel[static_cast<std::size_t>(v)]) vs.push_back(static_cast<int>(v + 1));
        std::vector<int> rest(vs.begin() + 1, vs.end());
        std::sort(rest.begin(), rest.end());
        do {
            std::uint64_t w = 1;
            int prev = vs[0];
            for (int v : rest) {
                w *= a[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
                prev = v;
            }
            w *= a[static_cast<std::size_t>(prev)][static_cast<std::size_t>(vs[0])];
            if (w > 0) {
                out.simple += 1;
                out.weighted += w;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
    } while (std::prev_permutation(sel.begin(), sel.end()));
    out.simple /= 2;
    out.weighted /= 2;
    return out;
}

SubgraphCount brute_cliques(const PamGraph& g, int len)
{
    const auto a = multiplicity_matrix(g);
    SubgraphCount out;
    std::vector<int> sel(static_cast<std::size_t>(g.n), 0);
    std::fill(sel.begin(), sel.begin() + len, 1);
    do {
        std::vector<int> vs;
        for (std::int64_t v = 0; v < g.n; ++v)
            if (sel[static_cast<std::size_t>(v)]) vs.push_back(static_cast<int>(v + 1));
        std::uint64_t w = 1;
        for (std::size_t x = 0; x < vs.size(); ++x)
            for (std::size_t y = x + 1; y < vs.size(); ++y) w *= a[static_cast<std::size_t>(vs[x])][static_cast<std::size_t>(vs[y])];
        if (w > 0) {
            out.simple += 1;
            out.weighted += w;
        }
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return out;
}

// Terms from their definitions, label by label.
DecompositionTerms label_oracle(const Environment& env, const PamGraph& g)
{
    const int m = g.m;
    long double delta = 0, t1 = 0, quad = 0, t3 = 0;
    auto w = [&](std::int64_t lo, std::int64_t hi, int l) -> long double { return g.target(hi, l) == lo ? 1.0L : 0.0L; };
    for (std::int64_t i = 1; i <= g.n; ++i)
        for (std::int64_t j = i + 1; j <= g.n; ++j)
            for (std::int64_t k = j + 1; k <= g.n; ++k) {
                const long double a = theta(env, i, j), b = theta(env, i, k), c = theta(env, j, k);
                delta += a * b * c;
                for (int l1 = 0; l1 < m; ++l1)
                    for (int l2 = 0; l2 < m; ++l2)
                        for (int l3 = 0; l3 < m; ++l3) {
                            if (l2 == l3) continue;
                            const long double A = w(i, j, l1) - a, B = w(i, k, l2) - b, C = w(j, k, l3) - c;
                            t1 += A * b * c + a * B * c + a * b * C;
                            quad += A * B * c + A * b * C + a * B * C;
                            t3 += A * B * C;
                        }
            }
    DecompositionTerms d;
    d.delta_n = static_cast<double>(delta);
    d.t1 = static_cast<double>(t1 / (m * (m - 1.0L)));
    d.t2 = static_cast<double>(quad / m);
    d.t3 = static_cast<double>(t3);
    return d;
}

void check_close(double a, double b, double scale)
{
    CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, scale));
}

}  // namespace

TEST_CASE("triangle count examples")
{
    Rng rng(1);
    CHECK(count_triangles(sample_graph(constant(2, "0"), 2, rng)).total == 0);
    const PamGraph tri = make_graph(3, 2, {{1, 2}});
    CHECK(count_triangles(tri).total == 2);
    CHECK(count_triangles(tri).simple == 1);
    CHECK(count_triangles(make_graph(3, 2, {{1, 1}})).total == 0);
}

TEST_CASE("triangle count equals full label enumeration")
{
    for (int m : {2, 3}) {
        for (const char* d : {"-1", "0", "2"}) {
            for (int rep = 0; rep < 20; ++rep) {
                Rng rng(stream_seed(static_cast<std::uint64_t>(m * 100 + rep), 3));
                const PamGraph g = sample_graph(constant(m, d, Variant::sequential_direct), 5 + rep % 16, rng);
                const auto tc = count_triangles(g, -1);
                REQUIRE(tc.total == label_enumeration(g));
                CHECK(tc.total >= tc.simple);
                CHECK(std::accumulate(tc.by_oldest.begin(), tc.by_oldest.end(), std::uint64_t{0}) == tc.total);
                for (std::int64_t i = g.n - 1; i <= g.n; ++i) CHECK(tc.by_oldest[static_cast<std::size_t>(i)] == 0);
            }
        }
    }
}

TEST_CASE("counts are invariant under label permutations")
{
    Rng rng(8);
    PamGraph g = sample_graph(constant(3, "-1"), 300, rng);
    const auto before = count_triangles(g, 10);
    const auto cyc = count_cycles(g, 4);
    for (std::int64_t k = 2; k <= g.n; ++k) {
        auto* row = g.targets.data() + k * g.m;
        std::reverse(row, row + g.m);
        std::rotate(row, row + 1, row + g.m);
    }
    const auto after = count_triangles(g, 10);
    CHECK(after.total == before.total);
    CHECK(after.simple == before.simple);
    CHECK(after.by_oldest == before.by_oldest);
    CHECK(count_cycles(g, 4).weighted == cyc.weighted);
}

TEST_CASE("cycle and clique examples")
{
    const PamGraph tri = make_graph(3, 2, {{1, 2}});
    CHECK(count_cliques(tri, 3).simple == 1);
    CHECK(count_cycles(tri, 3).weighted == 2);
    CHECK(count_cycles(tri, 3).simple == 1);
    CHECK(count_cliques(tri, 4).simple == 0);
    CHECK(count_cycles(tri, 4).weighted == 0);
    const PamGraph star = make_graph(6, 2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    for (int len = 3; len <= 6; ++len) CHECK(count_cliques(star, len).simple == 0);
    CHECK_THROWS_AS(count_cycles(tri, 2), ConfigError);
    CHECK_THROWS_AS(count_cliques(tri, 7), ConfigError);
}

TEST_CASE("cycles and cliques match subset enumeration")
{
    for (int rep = 0; rep < 30; ++rep) {
        Rng rng(stream_seed(55, static_cast<std::uint64_t>(rep)));
        const PamGraph g = sample_graph(constant(rep % 2 ? 3 : 2, "-1", Variant::sequential_direct), 8, rng);
        for (int len = 3; len <= 6; ++len) {
            const auto a = count_cycles(g, len), b = brute_cycles(g, len);
            CHECK(a.simple == b.simple);
            CHECK(a.weighted == b.weighted);
            const auto c = count_cliques(g, len), d = brute_cliques(g, len);
            CHECK(c.simple == d.simple);
            CHECK(c.weighted == d.weighted);
        }
        CHECK(count_cycles(g, 3).weighted == count_triangles(g).total);
    }
}

TEST_CASE("decomposition at n = 3")
{
    const Environment env = environment_from_psi({0.3, 0.5});
    const PamGraph g = make_graph(3, 2, {{1, 2}});
    const auto d = decomposition_terms(env, g);
    CHECK(d.delta_n == doctest::Approx(0.3 * 0.7).epsilon(1e-14));
    CHECK(std::fabs(d.residual) < 1e-12);
}

TEST_CASE("direct evaluator matches the label-by-label definitions")
{
    for (int m : {2, 3}) {
        for (const char* d : {"-1", "0", "1"}) {
            for (int rep = 0; rep < 5; ++rep) {
                const ModelParams p = constant(m, d);
                Rng rng(stream_seed(static_cast<std::uint64_t>(700 + m), static_cast<std::uint64_t>(rep)));
                Environment env;
                const PamGraph g = sample_graph(p, 12 + 4 * rep, rng, &env);
                const auto x = decomposition_terms_direct(env, g), y = label_oracle(env, g);
                const double T = x.total;
                CHECK(T == static_cast<double>(count_triangles(g).total));
                check_close(x.delta_n, y.delta_n, T);
                check_close(x.t1, y.t1, T);
                check_close(x.t2, y.t2, T);
                check_close(x.t3, y.t3, T);
                CHECK(std::fabs(x.residual) <= 1e-9 * std::max(1.0, T));
            }
        }
    }
}

TEST_CASE("fast decomposition matches the direct evaluator")
{
    for (int m : {2, 3, 4}) {
        for (const char* d : {"-1", "0", "1"}) {
            for (std::int64_t n : {3, 4, 10, 50, 200}) {
                Rng rng(stream_seed(static_cast<std::uint64_t>(m * 7 + n), 11));
                Environment env;
                const PamGraph g = sample_graph(constant(m, d), n, rng, &env);
                const auto x = decomposition_terms(env, g), y = decomposition_terms_direct(env, g);
                const double scale = std::max({1.0, x.total, std::fabs(y.t1), std::fabs(y.t2), std::fabs(y.t3)});
                CHECK(x.total == y.total);
                CHECK(std::fabs(x.delta_n - y.delta_n) <= 1e-9 * std::max(1.0, std::fabs(y.delta_n)));
                CHECK(std::fabs(x.t1 - y.t1) <= 1e-9 * scale);
                CHECK(std::fabs(x.t2 - y.t2) <= 1e-9 * scale);
                CHECK(std::fabs(x.t3 - y.t3) <= 1e-9 * scale);
                CHECK(std::fabs(x.residual) <= 1e-6 * std::max(1.0, x.total));
            }
        }
    }
}

TEST_CASE("decomposition rejects mismatched sizes and guards the direct path")
{
    Rng rng(4);
    Environment env;
    const PamGraph g = sample_graph(constant(2, "0"), 20, rng, &env);
    const PamGraph h = sample_graph(constant(2, "0"), 21, rng);
    CHECK_THROWS_AS(decomposition_terms(env, h), ConfigError);
    Environment big;
    const PamGraph gb = sample_graph(constant(2, "0"), 1001, rng, &big);
    CHECK_THROWS_AS(decomposition_terms_direct(big, gb), GuardError);
    (void)g;
}
