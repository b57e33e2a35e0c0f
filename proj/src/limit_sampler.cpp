#include "pamlab/limit_sampler.hpp"

#include "pamlab/analytics.hpp"
#include "pamlab/errors.hpp"
#include "pamlab/numeric.hpp"
#include "pamlab/parallel.hpp"

#include <cmath>

namespace pamlab {

double truncation_error(double beta, std::int64_t N)
{
    const double x = static_cast<double>(N);
    return std::max(std::pow(x, -0.5), std::pow(x, 2.0 * beta - 1.5));
}

TruncationPlan truncation_plan(const ModelParams& params, double tol)
{
    require(params.is_constant(), "truncation plans need constant delta");
    require(tol > 0.0 && tol <= 0.1, "tol must lie in (0, 0.1]");
    const double beta = params.beta();
    const double inv = 1.0 / tol;
    const double target = std::max(inv * inv, std::pow(inv, 1.0 / (1.5 - 2.0 * beta)));
    guard(target <= 1e8, "truncation index exceeds 10^8");
    // Round away floating noise before the ceiling (1/0.01^2 must give 10^4, not 10^4 + 1).
    const double r = std::round(target);
    std::int64_t N = static_cast<std::int64_t>(std::fabs(target - r) <= 1e-9 * target ? r : std::ceil(target));
    N = std::max<std::int64_t>(N, 10);
    return TruncationPlan{N, truncation_error(beta, N)};
}

LimitSampler::LimitSampler(const ModelParams& params, const TruncationPlan& plan) : N_(plan.N)
{
    require(params.is_constant(), "the limit sampler needs constant delta");
    require(params.delta_value() <= 0.0, "delta > 0 has a normal limit; compare against N(0,1) directly");
    require(N_ >= 10, "truncation index must be at least 10");
    centered_ = params.delta_value() == 0.0;
    const std::size_t sz = static_cast<std::size_t>(N_ + 1);
    shape_.assign(sz, BetaShape{});
    log_psi2_.assign(sz, 0.0);
    log_comp2_.assign(sz, 0.0);
    ShapeCursor cursor(params);
    for (std::int64_t i = 2; i <= N_; ++i) {
        const BetaShape s = cursor.next();
        shape_[static_cast<std::size_t>(i)] = s;
        log_psi2_[static_cast<std::size_t>(i)] = std::log(beta_psi_moment(s, 2));
        log_comp2_[static_cast<std::size_t>(i)] = beta_log_comp_second(s);
    }
    const ScalarTables tab = scalar_tables(params, N_);
    b_.assign(tab.h.begin(), tab.h.begin() + static_cast<std::ptrdiff_t>(sz));
    CompensatedSum sb;
    for (std::int64_t i = 1; i <= N_; ++i) sb.add(b_[static_cast<std::size_t>(i)]);
    sum_b_ = sb.value();
}

double LimitSampler::draw(Rng& rng) const
{
    // Walk i = N..1 keeping the suffix sum of log Y_j over j > i.
    long double suffix = 0.0L;
    CompensatedSum acc;
    const double shift = centered_ ? 1.0 : 0.0;
    for (std::int64_t i = N_; i >= 2; --i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double psi = rng.beta(shape_[k].a, shape_[k].b);
        const double log_x = 2.0 * std::log(psi) - log_psi2_[k];
        acc.add(b_[k] * (std::exp(static_cast<double>(log_x + suffix)) - shift));
        suffix += 2.0 * std::log1p(-psi) - log_comp2_[k];
    }
    acc.add(b_[1] * (std::exp(static_cast<double>(suffix)) - shift));
    return acc.value();
}

double sample_limit(const ModelParams& params, const TruncationPlan& plan, Rng& rng)
{
    return LimitSampler(params, plan).draw(rng);
}

std::vector<double> sample_limit_batch(const ModelParams& params, const TruncationPlan& plan, std::size_t count,
                                       std::uint64_t seed)
{
    const LimitSampler sampler(params, plan);
    std::vector<double> out(count);
    parallel_for(count, [&](std::size_t r) {
        Rng rng(stream_seed(seed, r));
        out[r] = sampler.draw(rng);
    });
    return out;
}

SampleSet standardize(const std::vector<double>& t_samples, const ModelParams& params, std::int64_t n,
                      StandardizeMode mode, ScaleKind scale)
{
    require(params.is_constant(), "standardization needs constant delta");
    require(n >= 3, "n must be at least 3");
    const double d = params.delta_value();
    if (d < 0.0)
        require(mode == StandardizeMode::uncentered, "delta < 0 uses the uncentered standardization");
    else
        require(mode == StandardizeMode::centered, "delta >= 0 uses the centered standardization");
    const double shift = mode == StandardizeMode::centered ? exact_mean_triangles(params, n) : 0.0;
    const double s = scale == ScaleKind::s_n ? scale_s(params, n) : scale_s_tilde(params, n);
    const double denom = gamma_constant(params) * s;
    SampleSet out;
    out.n = n;
    out.experiment_id = "standardized";
    out.values.reserve(t_samples.size());
    for (double t : t_samples) out.values.push_back((t - shift) / denom);
    return out;
}

std::vector<double> sample_ratio_vector(const ModelParams& params, std::int64_t i_max, Rng& rng)
{
    require(params.is_constant() && params.delta_value() < 0.0, "the ratio limit is defined for constant delta < 0");
    require(i_max >= 2 && i_max <= 1000, "i_max must lie in [2, 1000]");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(i_max - 1));
    ShapeCursor cursor(params);
    double log_comp = 0.0;   // sum_{j=2}^{i} log(1 - psi_j)
    for (std::int64_t i = 2; i <= i_max; ++i) {
        const BetaShape s = cursor.next();
        const double psi = rng.beta(s.a, s.b);
        log_comp += std::log1p(-psi);
        out.push_back(std::exp(2.0 * (std::log(psi) - log_comp)));
    }
    return out;
}

}  // namespace pamlab
