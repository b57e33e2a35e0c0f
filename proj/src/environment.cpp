#include "pamlab/environment.hpp"

#include "pamlab/errors.hpp"
#include "pamlab/numeric.hpp"

#include <cmath>
#include <sstream>

namespace pamlab {

Variant parse_variant(const std::string& name)
{
    if (name == "sequential_urn" || name == "urn") return Variant::sequential_urn;
    if (name == "sequential_direct" || name == "direct") return Variant::sequential_direct;
    if (name == "instantaneous") return Variant::instantaneous;
    throw ConfigError("unknown variant '" + name + "'");
}

std::string variant_name(Variant v)
{
    switch (v) {
    case Variant::sequential_urn: return "sequential_urn";
    case Variant::sequential_direct: return "sequential_direct";
    case Variant::instantaneous: return "instantaneous";
    }
    return "unknown";
}

DeltaSpec DeltaSpec::constant_of(Rational d)
{
    DeltaSpec s;
    s.kind = Kind::constant;
    s.value = d;
    return s;
}

DeltaSpec DeltaSpec::log_decay_of(double c, double alpha, double floor)
{
    DeltaSpec s;
    s.kind = Kind::log_decay;
    s.c = c;
    s.alpha = alpha;
    s.floor = floor;
    return s;
}

DeltaSpec DeltaSpec::sequence_of(std::vector<double> deltas)
{
    DeltaSpec s;
    s.kind = Kind::sequence;
    s.seq = std::move(deltas);
    return s;
}

std::string DeltaSpec::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::constant: os << value.str(); break;
    case Kind::log_decay: os << "log_decay(c=" << c << ";alpha=" << alpha << ";floor=" << floor << ")"; break;
    case Kind::sequence: os << "sequence(len=" << seq.size() << ")"; break;
    }
    return os.str();
}

ModelParams::ModelParams(int m, DeltaSpec delta, Variant variant) : m_(m), delta_(std::move(delta)), variant_(variant)
{
    require(m_ >= 2, "m must be at least 2");
    switch (delta_.kind) {
    case DeltaSpec::Kind::constant:
        require(delta_.value > Rational(-m_), "delta must exceed -m");
        break;
    case DeltaSpec::Kind::log_decay:
        require(std::isfinite(delta_.c), "log_decay c must be finite");
        require(delta_.alpha > 0.0 && std::isfinite(delta_.alpha), "log_decay alpha must be positive");
        require(delta_.floor > -m_, "log_decay floor must exceed -m");
        break;
    case DeltaSpec::Kind::sequence:
        require(!delta_.seq.empty(), "delta sequence is empty");
        for (double d : delta_.seq) require(std::isfinite(d) && d > -m_, "every delta_k must exceed -m");
        break;
    }
    if (variant_ == Variant::instantaneous) require(is_constant(), "instantaneous variant needs constant delta");
}

double ModelParams::delta_at(std::int64_t k) const
{
    switch (delta_.kind) {
    case DeltaSpec::Kind::constant: return delta_.value.to_double();
    case DeltaSpec::Kind::log_decay: {
        if (k <= 1) return 0.0;
        double d = 2.0 * m_ * delta_.c * std::pow(std::log(static_cast<double>(k)), -delta_.alpha);
        return d < delta_.floor ? delta_.floor : d;
    }
    case DeltaSpec::Kind::sequence:
        require(k >= 1 && k <= static_cast<std::int64_t>(delta_.seq.size()), "delta sequence shorter than n");
        return delta_.seq[static_cast<std::size_t>(k - 1)];
    }
    return 0.0;
}

Rational ModelParams::beta_exact() const
{
    require(is_constant(), "beta is defined for constant delta only");
    Rational m(m_);
    return (m + delta_.value) / (Rational(2 * m_) + delta_.value);
}

double ModelParams::delta_value() const
{
    require(is_constant(), "constant delta required");
    return delta_.value.to_double();
}

ModelParams ModelParams::with_variant(Variant v) const
{
    return ModelParams(m_, delta_, v);
}

ShapeCursor::ShapeCursor(const ModelParams& params) : params_(&params)
{
    if (!params.is_constant()) sum_ = params.delta_at(1);
}

BetaShape ShapeCursor::next()
{
    const std::int64_t i = i_++;
    const double m = params_->m();
    BetaShape s;
    if (params_->is_constant()) {
        const double d = params_->delta_value();
        s.a = m + d;
        s.b = m * (2.0 * static_cast<double>(i) - 3.0) + static_cast<double>(i - 1) * d;
    } else {
        const double d = params_->delta_at(i);
        s.a = m + d;
        s.b = m * (2.0 * static_cast<double>(i) - 3.0) + (sum_ + comp_);
        double t = sum_ + d;
        comp_ += std::fabs(sum_) >= std::fabs(d) ? (sum_ - t) + d : (d - t) + sum_;
        sum_ = t;
    }
    if (!(s.a > 0.0) || !(s.b > 0.0)) throw ConfigError("nonpositive Beta shape at vertex " + std::to_string(i));
    return s;
}

BetaShape beta_shape(std::int64_t i, const ModelParams& params)
{
    require(i >= 2, "psi_1 is the constant 1, not a Beta variable");
    if (params.is_constant()) {
        const double m = params.m();
        const double d = params.delta_value();
        return BetaShape{m + d, (2.0 * m + d) * static_cast<double>(i - 1) - m};
    }
    ShapeCursor c(params);
    BetaShape s;
    for (std::int64_t t = 2; t <= i; ++t) s = c.next();
    return s;
}

double beta_psi_moment(const BetaShape& s, int k)
{
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (s.a + j) / (s.a + s.b + j);
    return r;
}

double beta_comp_moment(const BetaShape& s, int k)
{
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (s.b + j) / (s.a + s.b + j);
    return r;
}

double beta_cross_moment(const BetaShape& s)
{
    return s.a * s.b / ((s.a + s.b) * (s.a + s.b + 1.0));
}

double beta_log_comp_second(const BetaShape& s)
{
    // E(1-psi)^2 = 1 - a(a+2b+1)/((a+b)(a+b+1)).
    const double c = s.a + s.b;
    return std::log1p(-s.a * (s.a + 2.0 * s.b + 1.0) / (c * (c + 1.0)));
}

double psi_moment(std::int64_t i, int k, const ModelParams& params)
{
    require(k >= 1, "moment order must be positive");
    if (i == 1) return 1.0;
    return beta_psi_moment(beta_shape(i, params), k);
}

double comp_moment(std::int64_t i, int k, const ModelParams& params)
{
    require(k >= 1, "moment order must be positive");
    if (i == 1) return 0.0;
    return beta_comp_moment(beta_shape(i, params), k);
}

Environment sample_environment(const ModelParams& params, std::int64_t n, Rng& rng)
{
    require(n >= 2, "n must be at least 2");
    Environment env;
    env.psi.assign(static_cast<std::size_t>(n + 1), 0.0);
    env.log_R.assign(static_cast<std::size_t>(n + 1), 0.0);
    env.psi[1] = 1.0;
    ShapeCursor cursor(params);
    for (std::int64_t i = 2; i <= n; ++i) {
        BetaShape s = cursor.next();
        double p = rng.beta(s.a, s.b);
        env.psi[i] = p;
        env.log_R[i] = env.log_R[i - 1] + std::log1p(-p);
    }
    return env;
}

Environment environment_from_psi(const std::vector<double>& psi_from_2)
{
    Environment env;
    const std::size_t n = psi_from_2.size() + 1;
    env.psi.assign(n + 1, 0.0);
    env.log_R.assign(n + 1, 0.0);
    env.psi[1] = 1.0;
    for (std::size_t i = 2; i <= n; ++i) {
        double p = psi_from_2[i - 2];
        require(p > 0.0 && p < 1.0, "psi_i must lie in (0,1)");
        env.psi[i] = p;
        env.log_R[i] = env.log_R[i - 1] + std::log1p(-p);
    }
    return env;
}

double theta(const Environment& env, std::int64_t i, std::int64_t j)
{
    require(i >= 1 && i < j && j <= env.n(), "theta needs 1 <= i < j <= n");
    return env.psi[i] * std::exp(env.log_R[j - 1] - env.log_R[i]);
}

ScalarTables scalar_tables(const ModelParams& params, std::int64_t n)
{
    require(n >= 2, "n must be at least 2");
    ScalarTables t;
    t.n = n;
    const std::size_t sz = static_cast<std::size_t>(n + 2);
    t.f.assign(sz, 0.0);
    t.delta_f.assign(sz, 0.0);
    t.g.assign(sz, 0.0);
    t.h.assign(sz, 0.0);
    t.G.assign(sz, 0.0L);
    t.GF.assign(sz, 0.0L);

    t.delta_f[2] = 1.0;
    t.f[1] = 0.0;
    t.f[2] = 1.0;
    t.h[1] = 1.0;
    t.g[1] = 0.0;

    CompensatedSum log_df;   // log delta f_{i+1}
    CompensatedSum f_acc;
    f_acc.add(1.0);
    ShapeCursor cursor(params);
    for (std::int64_t i = 2; i <= n; ++i) {
        BetaShape s = cursor.next();
        log_df.add(beta_log_comp_second(s));
        const double df_next = std::exp(log_df.value());
        t.delta_f[i + 1] = df_next;
        f_acc.add(df_next);
        t.f[i + 1] = f_acc.value();
        t.g[i] = s.a / (s.b + 1.0);
        t.h[i] = beta_psi_moment(s, 2) / df_next;
    }
    for (std::int64_t j = 1; j <= n; ++j) {
        t.G[j] = t.G[j - 1] + t.g[j];
        t.GF[j] = t.GF[j - 1] + static_cast<long double>(t.g[j]) * t.f[j];
    }
    return t;
}

double ScalarTables::mu_row(std::int64_t i, std::int64_t n_eval) const
{
    require(i >= 1 && n_eval <= n, "mu_row index out of range");
    if (i >= n_eval - 1) return 0.0;
    long double fn = f[n_eval];
    long double s = fn * (G[n_eval - 1] - G[i]) - (GF[n_eval - 1] - GF[i]);
    return static_cast<double>(h[i] * s);
}

double ScalarTables::mu_triangle(std::int64_t i, std::int64_t j, std::int64_t k) const
{
    require(1 <= i && i < j && j < k && k <= n, "mu_triangle needs 1 <= i < j < k <= n");
    return h[i] * g[j] * delta_f[k];
}

double ScalarTables::s_tilde(std::int64_t n_eval) const
{
    require(n_eval >= 2 && n_eval <= n, "s_tilde index out of range");
    return static_cast<double>(f[n_eval] * G[n_eval - 1] - GF[n_eval - 1]);
}

double mu_triangle(const ModelParams& params, std::int64_t i, std::int64_t j, std::int64_t k)
{
    return scalar_tables(params, k).mu_triangle(i, j, k);
}

double mu_row(const ModelParams& params, std::int64_t i, std::int64_t n)
{
    return scalar_tables(params, n).mu_row(i, n);
}

double scale_s(const ModelParams& params, std::int64_t n)
{
    require(params.is_constant(), "s_n is defined for constant delta only");
    require(n >= 2, "n must be at least 2");
    const double d = params.delta_value();
    const double m = params.m();
    const double L = std::log(static_cast<double>(n));
    if (d > 0.0) return std::sqrt(L);
    if (d == 0.0) return 0.25 * L * L;
    const double ad = -d;
    return (m / ad - 1.0) * std::pow(static_cast<double>(n), ad / (2.0 * m + d)) * L;
}

double scale_s_tilde(const ModelParams& params, std::int64_t n)
{
    require(params.is_constant(), "s_tilde is defined for constant delta only");
    return scalar_tables(params, n).s_tilde(n);
}

double gamma_constant(const ModelParams& params)
{
    require(params.is_constant(), "gamma is defined for constant delta only");
    const double d = params.delta_value();
    const double m = params.m();
    if (d > 0.0) return (m / d) * std::sqrt((m - 1.0) * (m + d) * (m + d + 1.0) / (2.0 * m + d));
    return m * m * (m - 1.0);
}

}  // namespace pamlab
