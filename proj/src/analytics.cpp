#include "pamlab/analytics.hpp"

#include "pamlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pamlab {

std::vector<double> exact_mean_curve(const ModelParams& params, const std::vector<std::int64_t>& ns)
{
    require(std::is_sorted(ns.begin(), ns.end()), "n grid must be ascending");
    require(ns.empty() || ns.front() >= 2, "n must be at least 2");
    guard(ns.empty() || ns.back() <= 1'000'000'000, "exact means are limited to n <= 10^9");
    const double m = params.m();
    const long double c0 = m * m * (m - 1.0);
    std::vector<double> out;
    out.reserve(ns.size());
    if (ns.empty()) return out;

    // Running sums over i < j < k of dh_i dg_j df_k.
    long double s_h = 1.0L;   // dh_1 = 1
    long double s_gh = 0.0L;  // dg_1 = 0
    long double total = 0.0L;
    double log_df = 0.0, log_df_c = 0.0;   // compensated log df_t
    ShapeCursor cursor(params);
    std::size_t next = 0;
    while (next < ns.size() && ns[next] < 2) {
        out.push_back(0.0);
        ++next;
    }
    const std::int64_t n_max = ns.back();
    for (std::int64_t t = 2; t <= n_max; ++t) {
        const double df_t = std::exp(log_df + log_df_c);
        total += static_cast<long double>(df_t) * s_gh;
        const BetaShape s = cursor.next();
        s_gh += static_cast<long double>(s.a / (s.b + 1.0)) * s_h;
        const double x = beta_log_comp_second(s);
        const double y = log_df + x;
        log_df_c += std::fabs(log_df) >= std::fabs(x) ? (log_df - y) + x : (x - y) + log_df;
        log_df = y;
        s_h += beta_psi_moment(s, 2) / std::exp(log_df + log_df_c);
        while (next < ns.size() && ns[next] == t) {
            out.push_back(static_cast<double>(c0 * total));
            ++next;
        }
    }
    return out;
}

double exact_mean_triangles(const ModelParams& params, std::int64_t n)
{
    require(n >= 2, "n must be at least 2");
    return exact_mean_curve(params, std::vector<std::int64_t>{n}).front();
}

DeltaRowTable::DeltaRowTable(const ModelParams& params, std::int64_t n) : tables_(scalar_tables(params, n)) {}

double DeltaRowTable::operator()(std::int64_t i) const
{
    require(i >= 1 && i <= tables_.n, "vertex index out of range");
    return tables_.mu_row(i, tables_.n);
}

double expected_delta_i(const ModelParams& params, std::int64_t i, std::int64_t n)
{
    require(i >= 1 && i <= n - 2, "expected_delta_i needs 1 <= i <= n-2");
    return scalar_tables(params, n).mu_row(i, n);
}

unsigned phase_basis(double alpha, double c)
{
    if (alpha == 1.0) return term_loglog_n | term_inv_log;
    if (c < 0.0 || alpha > 1.0) return term_loglog_n | term_log_pow;
    return term_loglog_n;
}

PhaseScanResult phase_scan(int m, double alpha, const std::vector<double>& c_list, const std::vector<std::int64_t>& n_grid,
                           double floor)
{
    require(alpha > 0.0, "alpha must be positive");
    require(!n_grid.empty() && std::is_sorted(n_grid.begin(), n_grid.end()), "n grid must be ascending and nonempty");
    guard(n_grid.back() <= 100'000'000, "phase scans are limited to n <= 10^8");
    PhaseScanResult res;
    const std::int64_t fit_from = std::max<std::int64_t>(n_grid.front(), n_grid.back() / 1000);
    for (double c : c_list) {
        ModelParams params(m, DeltaSpec::log_decay_of(c, alpha, floor));
        std::vector<double> means = exact_mean_curve(params, n_grid);
        std::vector<double> xs, ys;
        for (std::size_t r = 0; r < n_grid.size(); ++r) {
            res.rows.push_back(PhaseRow{alpha, c, n_grid[r], means[r]});
            if (n_grid[r] >= fit_from) {
                xs.push_back(static_cast<double>(n_grid[r]));
                ys.push_back(means[r]);
            }
        }
        PhaseFit pf;
        pf.alpha = alpha;
        pf.c = c;
        pf.fit_from = fit_from;
        if (xs.size() >= 4 && std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; }))
            pf.fit = fit_growth(xs, ys, phase_basis(alpha, c), alpha);
        res.fits.push_back(pf);
    }
    return res;
}

std::vector<std::int64_t> decade_grid(int lo, int hi, int per_decade)
{
    require(lo <= hi && per_decade >= 1, "bad decade grid");
    std::set<std::int64_t> s;
    for (int j = 0; j <= (hi - lo) * per_decade; ++j)
        s.insert(static_cast<std::int64_t>(std::llround(std::pow(10.0, lo + static_cast<double>(j) / per_decade))));
    return {s.begin(), s.end()};
}

}  // namespace pamlab
