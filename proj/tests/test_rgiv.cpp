#include "pamlab/errors.hpp"
#include "pamlab/rgiv.hpp"
#include "pamlab/stats.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

using namespace pamlab;
using boost::math::quadrature::gauss_kronrod;

namespace {

double integrate(const std::function<double(double)>& f, double a, double b)
{
    return gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-11);
}

// E h12 h13 h23 for three iid uniforms: 6 * int_{u1 < u2 < u3} p(u1)^2 p(u2).
double triangle_weight(double theta)
{
    auto p = [&](double u) { return -std::expm1(-theta * u); };
    return 6.0 * integrate([&](double u2) { return p(u2) * (1.0 - u2) * integrate([&](double u1) { return p(u1) * p(u1); }, 0.0, u2); },
                           0.0, 1.0);
}

// a - 2(1 - e^-a) + (1 - e^-2a)/2 and e^-d - 1 + d without cancellation.
double square_part(double a)
{
    if (a > 0.5) return a + 2.0 * std::expm1(-a) - 0.5 * std::expm1(-2.0 * a);
    double sum = 0.0, term = 0.5 * a * a;
    for (int k = 3; k < 30; ++k) {
        term *= a / k;
        sum += ((k % 2) ? 1.0 : -1.0) * (std::ldexp(1.0, k - 1) - 2.0) * term;
    }
    return sum;
}

double linear_part(double d)
{
    if (d > 0.5) return std::expm1(-d) + d;
    double sum = 0.0, term = d;
    for (int k = 2; k < 30; ++k) {
        term *= d / k;
        sum += ((k % 2) ? -1.0 : 1.0) * term;
    }
    return sum;
}

// q(x, y) = int_0^1 h(x, z) h(y, z) dz in closed form.
double q_kernel(double x, double y, double th)
{
    if (x > y) std::swap(x, y);
    const double ex = -std::expm1(-th * x), ey = -std::expm1(-th * y), d = th * (y - x);
    const double middle = ex * (linear_part(d) - ex * std::expm1(-d)) / th;
    return square_part(th * x) / th + middle + ex * ey * (1.0 - y);
}

double split_integral(const std::function<double(double)>& f, double x)
{
    return integrate(f, 0.0, x) + integrate(f, x, 1.0);
}

// Exact var T: Poisson U-statistic chaos terms of the conditional mean plus E var(T | arrivals).
double triangle_variance(double lambda, double t)
{
    const double th = t / lambda, m = lambda * t;
    auto h = [&](double x, double y) { return h_theta(x, y, th); };
    auto over_pairs = [&](const std::function<double(double, double)>& f) {
        return integrate([&](double x) { return split_integral([&](double y) { return f(x, y); }, x); }, 0.0, 1.0);
    };
    const double e_phi = over_pairs([&](double x, double y) { return h(x, y) * q_kernel(x, y, th); });
    const double e_phi2 = over_pairs([&](double x, double y) { return std::pow(h(x, y) * q_kernel(x, y, th), 2); });
    const double e_phi1 = integrate(
        [&](double x) { return std::pow(split_integral([&](double y) { return h(x, y) * q_kernel(x, y, th); }, x), 2); }, 0.0, 1.0);
    const double e_pair = over_pairs([&](double x, double y) { return h(x, y) * (1.0 - h(x, y)) * std::pow(q_kernel(x, y, th), 2); });
    return std::pow(m, 5) / 4.0 * e_phi1 + std::pow(m, 4) / 2.0 * e_phi2 + std::pow(m, 3) / 6.0 * e_phi + std::pow(m, 4) / 2.0 * e_pair;
}

std::vector<RgivSample> samples(const RgivParams& p, int reps, std::uint64_t seed, std::optional<std::int64_t> forced = std::nullopt)
{
    std::vector<RgivSample> out;
    for (int r = 0; r < reps; ++r) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
        out.push_back(sample_rgiv(p, rng, forced));
    }
    return out;
}

}  // namespace

TEST_CASE("kernel functions")
{
    CHECK(h_theta(0.3, 0.8, 0.0) == 0.0);
    CHECK(h_theta(0.3, 0.8, 2.0) == doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-15));
    CHECK(h_theta(0.8, 0.3, 2.0) == h_theta(0.3, 0.8, 2.0));
    CHECK(big_H(1.0) == doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(big_H(0.0) == 0.0);
    CHECK(big_H(1e-4) / 1e-4 == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    // Both sides of the series branch agree with the closed form.
    for (double th : {0.3, 0.49, 0.51, 0.8, 5.0}) {
        const double closed = 2.0 / (th * th) * (1.0 - th + th * th / 2.0 - std::exp(-th));
        CHECK(big_H(th) == doctest::Approx(closed).epsilon(1e-9));
    }
    Rng rng(4);
    for (int r = 0; r < 20; ++r) {
        const double u = rng.uniform(), th = 10.0 * rng.uniform() * rng.uniform();
        const double q = integrate([&](double v) { return h_theta(u, v, th); }, 0.0, u) +
                         integrate([&](double v) { return h_theta(u, v, th); }, u, 1.0);
        CHECK(std::fabs(g_theta(u, th) - q) <= 1e-9);
        const double w = 1e-3 * u;
        CHECK(std::fabs(g_theta(w, th) - integrate([&](double v) { return h_theta(w, v, th); }, 0.0, w) -
                        integrate([&](double v) { return h_theta(w, v, th); }, w, 1.0)) <= 1e-9);
    }
    for (double th : {1e-3, 0.2, 1.0, 7.0}) CHECK(integrate([&](double u) { return g_theta(u, th); }, 0.0, 1.0) == doctest::Approx(big_H(th)).epsilon(1e-10));
}

TEST_CASE("parameters and regimes")
{
    CHECK(RgivParams(1000.0, std::cbrt(3.0 / 1000.0)).regime() == "poisson_edge");
    CHECK(RgivParams(200.0, 5.0).regime() == "gaussian");
    CHECK(RgivParams(2.0, 10.0).regime() == "dense");
    CHECK(RgivParams(4.0, 2.0).theta() == 0.5);
    CHECK_THROWS_AS(RgivParams(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(RgivParams(1.0, -1.0), ConfigError);
    Rng rng(1);
    CHECK_THROWS_AS(sample_rgiv(RgivParams(1e3, 100.0), rng), GuardError);
}

TEST_CASE("sample structure and triangle count")
{
    for (const auto& s : samples(RgivParams(30.0, 2.0), 200, 3)) {
        CHECK(std::is_sorted(s.U.begin(), s.U.end()));
        for (double u : s.U) CHECK((u > 0.0 && u < 1.0));
        REQUIRE(static_cast<std::int64_t>(s.U.size()) == s.N);
        std::set<std::pair<int, int>> seen;
        std::vector<std::vector<char>> a(static_cast<std::size_t>(s.N), std::vector<char>(static_cast<std::size_t>(s.N), 0));
        for (auto [i, j] : s.edges) {
            CHECK(i < j);
            CHECK(seen.insert({i, j}).second);
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
        }
        std::uint64_t deg_total = 0;
        for (std::int64_t v = 0; v < s.N; ++v) {
            const auto& nb = s.adj[static_cast<std::size_t>(v)];
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            deg_total += nb.size();
            for (int w : nb) CHECK(a[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] == 1);
        }
        CHECK(deg_total == 2 * s.edge_count());
        std::uint64_t tri = 0;
        for (std::int64_t i = 0; i < s.N; ++i)
            for (std::int64_t j = i + 1; j < s.N; ++j)
                for (std::int64_t k = j + 1; k < s.N; ++k)
                    tri += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] && a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                           a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        CHECK(count_triangles(s) == tri);
    }
    Rng rng(2);
    CHECK(sample_rgiv(RgivParams(1e4, 1e-12), rng, 300).edge_count() == 0);
}

TEST_CASE("vertex and edge counts have the right means")
{
    const RgivParams p(30.0, 1.0);
    std::vector<double> n, e;
    for (int r = 0; r < 100000; ++r) {
        Rng rng(stream_seed(77, static_cast<std::uint64_t>(r)));
        const auto s = sample_rgiv(p, rng);
        n.push_back(static_cast<double>(s.N));
        e.push_back(static_cast<double>(s.edge_count()));
    }
    const Moments mn = moments(n), me = moments(e);
    CHECK(std::fabs(mn.mean - 30.0) <= 4.0 * mn.stderr_mean);
    CHECK(mn.variance == doctest::Approx(30.0).epsilon(0.03));
    const double mu = 0.5 * 30.0 * 30.0 * big_H(p.theta());
    CHECK(std::fabs(me.mean - mu) <= 4.0 * me.stderr_mean);
}

TEST_CASE("mean triangle count matches the kernel integral")
{
    const RgivParams p(100.0, 2.0);
    std::vector<double> t;
    for (const auto& s : samples(p, 10000, 5)) t.push_back(static_cast<double>(count_triangles(s)));
    const Moments m = moments(t);
    const double lt = 200.0;
    const double want = triangle_weight(p.theta()) * lt * lt * lt / 6.0;
    INFO("mean " << m.mean << " want " << want);
    CHECK(std::fabs(m.mean - want) <= 4.0 * m.stderr_mean);
}

TEST_CASE("edge decomposition identity and direct evaluation")
{
    for (const RgivParams& p : {RgivParams(30.0, 1.0), RgivParams(50.0, 4.0), RgivParams(10.0, 20.0)}) {
        for (const auto& s : samples(p, 300, 11)) {
            const auto f = edge_decomposition(s, p);
            CHECK(f.E == static_cast<double>(s.edge_count()));
            CHECK(std::fabs(f.residual) <= 1e-8 * std::max(1.0, f.E));
            const auto d = edge_decomposition_direct(s, p);
            const double scale = std::max({1.0, f.E, std::fabs(d.L), std::fabs(d.R1), std::fabs(d.D)});
            CHECK(std::fabs(f.S - d.S) <= 1e-9 * scale);
            CHECK(std::fabs(f.L - d.L) <= 1e-9 * scale);
            CHECK(std::fabs(f.D - d.D) <= 1e-9 * scale);
            CHECK(std::fabs(f.R1 - d.R1) <= 1e-9 * scale);
            CHECK(std::fabs(f.R2 - d.R2) <= 1e-9 * scale);
            CHECK(std::fabs(d.residual) <= 1e-8 * std::max(1.0, f.E));
        }
    }
    const RgivParams p(40.0, 1.0);
    for (const auto& s : samples(p, 50, 12, 40)) CHECK(edge_decomposition(s, p).D == 0.0);
}

TEST_CASE("triangle decomposition identity and direct evaluation")
{
    for (const RgivParams& p : {RgivParams(30.0, 1.0), RgivParams(50.0, 4.0), RgivParams(10.0, 20.0)}) {
        for (const auto& s : samples(p, 300, 13)) {
            const auto f = triangle_decomposition(s, p);
            CHECK(f.T == static_cast<double>(count_triangles(s)));
            CHECK(std::fabs(f.residual) <= 1e-8 * std::max(1.0, f.T));
            const auto d = triangle_decomposition_direct(s, p);
            const double scale = std::max({1.0, f.T, std::fabs(d.T1), std::fabs(d.T2), std::fabs(d.T3)});
            CHECK(std::fabs(f.Delta - d.Delta) <= 1e-9 * scale);
            CHECK(std::fabs(f.T1 - d.T1) <= 1e-9 * scale);
            CHECK(std::fabs(f.T2 - d.T2) <= 1e-9 * scale);
            CHECK(std::fabs(f.T3 - d.T3) <= 1e-9 * scale);
            CHECK(std::fabs(d.residual) <= 1e-8 * std::max(1.0, f.T));
        }
    }
    const RgivParams p(1.0, 1.0);
    for (std::int64_t n : {0, 1, 2}) {
        Rng rng(static_cast<std::uint64_t>(n));
        const auto s = sample_rgiv(p, rng, n);
        const auto f = triangle_decomposition(s, p);
        CHECK(f.T == 0.0);
        CHECK(f.Delta + f.T1 + f.T2 + f.T3 == doctest::Approx(0.0));
    }
    Rng rng(3);
    const auto big = sample_rgiv(RgivParams(500.0, 1.0), rng, 401);
    CHECK_THROWS_AS(triangle_decomposition_direct(big, RgivParams(500.0, 1.0)), GuardError);
}

TEST_CASE("Poisson regimes")
{
    const double lambda = 1000.0;
    const RgivParams pe(lambda, std::cbrt(3.0 / lambda));
    std::vector<std::uint64_t> edges;
    for (const auto& s : samples(pe, 20000, 21)) edges.push_back(s.edge_count());
    CHECK(tv_to_poisson(edges, 0.5) <= 0.05);

    const double c = 1.5;
    const RgivParams pt(lambda, c);
    std::vector<std::uint64_t> tri;
    for (int r = 0; r < 20000; ++r) {
        Rng rng(stream_seed(22, static_cast<std::uint64_t>(r)));
        tri.push_back(count_triangles(sample_rgiv(pt, rng)));
    }
    CHECK(tv_to_poisson(tri, std::pow(c, 6) / 162.0) <= 0.08);
}

TEST_CASE("variance orders")
{
    const double lambda = 1000.0;
    for (double t : {0.2, 0.5}) {
        const RgivParams p(lambda, t);
        std::vector<double> e, s;
        for (const auto& x : samples(p, 10000, 31)) {
            e.push_back(static_cast<double>(x.edge_count()));
            s.push_back(edge_decomposition(x, p).S);
        }
        const double ratio = moments(e).variance / (lambda * std::pow(t, 3) / 6.0 + 2.0 * lambda * std::pow(t, 5) / 15.0);
        INFO("t " << t << " var ratio " << ratio);
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 2.0);
        if (t == 0.5) {
            const double th = p.theta();
            const double vs = moments(s).variance * 2.0 / (lambda * lambda * t * t * (big_H(2.0 * th) - big_H(th)));
            INFO("S ratio " << vs);
            CHECK(vs >= 0.8);
            CHECK(vs <= 1.2);
        }
    }
}

TEST_CASE("pair kernel helper")
{
    CHECK(q_kernel(0.1, 0.7, 0.025) == doctest::Approx(2.80952195560424642e-5).epsilon(1e-12));
    CHECK(q_kernel(0.5, 0.2, 0.025) == doctest::Approx(4.56700744343716794e-5).epsilon(1e-12));
    CHECK(q_kernel(0.9, 0.95, 0.025) == doctest::Approx(2.00877831553070958e-4).epsilon(1e-12));
    CHECK(q_kernel(0.3, 0.6, 4.0) == doctest::Approx(split_integral([](double z) { return h_theta(0.3, z, 4.0) * h_theta(0.6, z, 4.0); }, 0.3)).epsilon(1e-9));
}

TEST_CASE("exact triangle variance at small size")
{
    const RgivParams p(20.0, 3.0);
    std::vector<double> t;
    for (const auto& s : samples(p, 40000, 43)) t.push_back(static_cast<double>(count_triangles(s)));
    const double r = moments(t).variance / triangle_variance(20.0, 3.0);
    INFO("sample variance / exact variance = " << r);
    CHECK(r >= 0.95);
    CHECK(r <= 1.05);
}

TEST_CASE("Gaussian regime for triangles")
{
    const RgivParams p(200.0, 5.0);
    std::vector<double> t;
    for (const auto& s : samples(p, 5000, 41)) t.push_back(static_cast<double>(count_triangles(s)));
    const auto qq = qq_normal(standardize_empirical(t), 200);
    CHECK(qq_correlation(qq) >= 0.99);
    const double r = moments(t).variance / triangle_variance(200.0, 5.0);
    INFO("sample variance / exact variance = " << r);
    CHECK(r >= 0.85);
    CHECK(r <= 1.15);
}
