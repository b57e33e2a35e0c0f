#include "pamlab/stats.hpp"

#include "pamlab/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pamlab {

void check_sample(const std::vector<double>& v)
{
    require(!v.empty(), "sample is empty");
    for (double x : v) require(std::isfinite(x), "sample has a non-finite entry");
}

double wasserstein1(std::vector<double> a, std::vector<double> b)
{
    check_sample(a);
    check_sample(b);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // Breakpoints of the two quantile step functions in units of 1/(na*nb).
    const std::uint64_t na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    std::uint64_t pos = 0;
    long double acc = 0.0L;
    while (i < na && j < nb) {
        const std::uint64_t ea = (i + 1) * nb;
        const std::uint64_t eb = (j + 1) * na;
        const std::uint64_t end = std::min(ea, eb);
        acc += static_cast<long double>(std::fabs(a[i] - b[j])) * static_cast<long double>(end - pos);
        pos = end;
        if (ea == end) ++i;
        if (eb == end) ++j;
    }
    return static_cast<double>(acc / (static_cast<long double>(na) * static_cast<long double>(nb)));
}

double normal_quantile(double p)
{
    static const boost::math::normal_distribution<double> z;
    return boost::math::quantile(z, p);
}

double quantile_sorted(const std::vector<double>& sorted, double q)
{
    require(!sorted.empty(), "sample is empty");
    if (sorted.size() == 1) return sorted.front();
    const double pos = q * static_cast<double>(sorted.size()) - 0.5;
    if (pos <= 0.0) return sorted.front();
    const double last = static_cast<double>(sorted.size() - 1);
    if (pos >= last) return sorted.back();
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double wasserstein1_to_normal(std::vector<double> a, int grid, double clip)
{
    check_sample(a);
    require(grid >= 10 && clip > 0.0 && clip < 0.5, "bad quantile grid");
    std::sort(a.begin(), a.end());
    const double width = (1.0 - 2.0 * clip) / grid;
    const double n = static_cast<double>(a.size());
    long double acc = 0.0L;
    for (int g = 0; g < grid; ++g) {
        const double q = clip + (g + 0.5) * width;
        // Empirical quantile function (left-continuous inverse of the step cdf).
        std::size_t idx = static_cast<std::size_t>(std::ceil(q * n)) - 1;
        if (idx >= a.size()) idx = a.size() - 1;
        acc += std::fabs(a[idx] - normal_quantile(q));
    }
    return static_cast<double>(acc * width);
}

double tv_to_poisson_pmf(const std::vector<double>& pmf, double mean)
{
    require(mean >= 0.0, "Poisson mean must be nonnegative");
    require(!pmf.empty(), "empty pmf");
    double acc = 0.0;
    double ref_mass = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        double p = 0.0;
        if (mean == 0.0)
            p = (k == 0) ? 1.0 : 0.0;
        else
            p = boost::math::pdf(boost::math::poisson_distribution<double>(mean), static_cast<double>(k));
        ref_mass += p;
        acc += std::fabs(pmf[k] - p);
    }
    acc += std::max(0.0, 1.0 - ref_mass);
    return std::min(1.0, 0.5 * acc);
}

double tv_to_poisson(const std::vector<std::uint64_t>& counts, double mean)
{
    require(!counts.empty(), "sample is empty");
    const std::uint64_t kmax = *std::max_element(counts.begin(), counts.end());
    std::vector<double> pmf(static_cast<std::size_t>(kmax + 1), 0.0);
    for (std::uint64_t c : counts) pmf[static_cast<std::size_t>(c)] += 1.0;
    for (double& p : pmf) p /= static_cast<double>(counts.size());
    return tv_to_poisson_pmf(pmf, mean);
}

std::vector<QQPoint> qq_normal(std::vector<double> a, int points)
{
    check_sample(a);
    require(points >= 2, "need at least two QQ points");
    std::sort(a.begin(), a.end());
    std::vector<QQPoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double q = (i + 0.5) / points;
        out.push_back(QQPoint{q, quantile_sorted(a, q), normal_quantile(q)});
    }
    return out;
}

double qq_correlation(const std::vector<QQPoint>& qq)
{
    require(qq.size() >= 2, "need at least two QQ points");
    double mx = 0.0, my = 0.0;
    for (const auto& p : qq) {
        mx += p.sample;
        my += p.reference;
    }
    mx /= static_cast<double>(qq.size());
    my /= static_cast<double>(qq.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (const auto& p : qq) {
        sxy += (p.sample - mx) * (p.reference - my);
        sxx += (p.sample - mx) * (p.sample - mx);
        syy += (p.reference - my) * (p.reference - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

Moments moments(const std::vector<double>& v)
{
    check_sample(v);
    Moments m;
    m.count = v.size();
    long double mean = 0.0L, m2 = 0.0L;
    std::size_t k = 0;
    for (double x : v) {
        ++k;
        long double d = x - mean;
        mean += d / static_cast<long double>(k);
        m2 += d * (x - mean);
    }
    m.mean = static_cast<double>(mean);
    m.variance = v.size() > 1 ? static_cast<double>(m2 / static_cast<long double>(v.size() - 1)) : 0.0;
    m.stderr_mean = std::sqrt(m.variance / static_cast<double>(v.size()));
    return m;
}

std::vector<double> standardize_empirical(const std::vector<double>& v)
{
    Moments mo = moments(v);
    require(mo.variance > 0.0, "sample has zero variance");
    const double sd = std::sqrt(mo.variance);
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [&](double x) { return (x - mo.mean) / sd; });
    return out;
}

GrowthFit fit_growth(const std::vector<double>& xs, const std::vector<double>& ys, unsigned basis, double alpha)
{
    require(xs.size() == ys.size(), "xs and ys differ in length");
    require(xs.size() >= 4, "growth fit needs at least 4 points");
    require(std::is_sorted(xs.begin(), xs.end()), "xs must be ascending");
    require(basis != 0 && (basis & ~0xFu) == 0, "empty or unknown growth basis");
    for (std::size_t i = 0; i < xs.size(); ++i) require(xs[i] > 1.0 && ys[i] > 0.0, "growth fit needs n > 1 and y > 0");

    std::vector<unsigned> terms;
    for (unsigned t : {term_log_n, term_loglog_n, term_log_pow, term_inv_log})
        if (basis & t) terms.push_back(t);
    const Eigen::Index rows = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(terms.size()) + 1;
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double L = std::log(xs[static_cast<std::size_t>(r)]);
        for (std::size_t c = 0; c < terms.size(); ++c) {
            double v = 0.0;
            switch (terms[c]) {
            case term_log_n: v = L; break;
            case term_loglog_n: v = std::log(L); break;
            case term_log_pow: v = std::pow(L, 1.0 - alpha); break;
            case term_inv_log: v = 1.0 / L; break;
            }
            X(r, static_cast<Eigen::Index>(c)) = v;
        }
        X(r, cols - 1) = 1.0;
        y(r) = std::log(ys[static_cast<std::size_t>(r)]);
    }
    // Column scaling keeps the rank test meaningful.
    Eigen::VectorXd scale = X.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < cols; ++c) require(scale(c) > 0.0, "singular design matrix");
    Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    qr.setThreshold(1e-12);
    require(qr.rank() == cols, "singular design matrix");
    Eigen::VectorXd beta = qr.solve(y).cwiseQuotient(scale);

    GrowthFit f;
    f.basis = basis;
    for (std::size_t c = 0; c < terms.size(); ++c) {
        const double v = beta(static_cast<Eigen::Index>(c));
        switch (terms[c]) {
        case term_log_n: f.log_n = v; break;
        case term_loglog_n: f.loglog_n = v; break;
        case term_log_pow: f.log_pow = v; break;
        case term_inv_log: f.inv_log = v; break;
        }
    }
    f.intercept = beta(cols - 1);
    return f;
}

std::pair<double, int> chi_square_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                             double min_expected)
{
    require(!a.empty() && !b.empty(), "chi-square needs two nonempty samples");
    const std::int64_t lo = std::min(*std::min_element(a.begin(), a.end()), *std::min_element(b.begin(), b.end()));
    const std::int64_t hi = std::max(*std::max_element(a.begin(), a.end()), *std::max_element(b.begin(), b.end()));
    const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> ca(width, 0.0), cb(width, 0.0);
    for (auto x : a) ca[static_cast<std::size_t>(x - lo)] += 1.0;
    for (auto x : b) cb[static_cast<std::size_t>(x - lo)] += 1.0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double fa = na / (na + nb), fb = nb / (na + nb);

    std::vector<std::pair<double, double>> bins;
    double oa = 0.0, ob = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
        oa += ca[k];
        ob += cb[k];
        const double tot = oa + ob;
        if (tot * fa >= min_expected && tot * fb >= min_expected) {
            bins.emplace_back(oa, ob);
            oa = ob = 0.0;
        }
    }
    if (oa + ob > 0.0) {
        if (bins.empty())
            bins.emplace_back(oa, ob);
        else {
            bins.back().first += oa;
            bins.back().second += ob;
        }
    }
    double stat = 0.0;
    for (auto [x, y] : bins) {
        const double tot = x + y;
        const double ea = tot * fa, eb = tot * fb;
        stat += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
    }
    return {stat, static_cast<int>(bins.size()) - 1};
}

double chi_square_quantile(double p, int dof)
{
    require(dof >= 1, "chi-square needs positive degrees of freedom");
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), p);
}

}  // namespace pamlab
