#include "pamlab/rng.hpp"

#include <cmath>

namespace pamlab {

namespace {

// Marsaglia-Tsang for shape >= 1.
double gamma_large(Rng& rng, double shape)
{
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double log_gamma_variate(Rng& rng, double shape)
{
    if (shape >= 1.0) return std::log(gamma_large(rng, shape));
    // Boost: G(a) = G(a+1) * U^(1/a).
    return std::log(gamma_large(rng, shape + 1.0)) + std::log(rng.uniform()) / shape;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound)
{
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    for (;;) {
        std::uint64_t x = eng_();
        if (x < limit) return x % bound;
    }
}

double Rng::exponential()
{
    return -std::log(uniform());
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double Rng::gamma(double shape)
{
    if (shape >= 1.0) return gamma_large(*this, shape);
    return std::exp(log_gamma_variate(*this, shape));
}

double Rng::beta(double a, double b)
{
    if (a >= 1.0 && b >= 1.0) {
        double x = gamma(a);
        double y = gamma(b);
        return x / (x + y);
    }
    double lx = log_gamma_variate(*this, a);
    double ly = log_gamma_variate(*this, b);
    // x/(x+y) = 1/(1+exp(ly-lx)), kept away from the endpoints.
    double r = 1.0 / (1.0 + std::exp(ly - lx));
    if (r <= 0.0) r = 0x1.0p-1074;
    if (r >= 1.0) r = 1.0 - 0x1.0p-53;
    return r;
}

std::uint64_t Rng::poisson(double mu)
{
    if (mu <= 0.0) return 0;
    if (mu <= 30.0) {
        double p = std::exp(-mu);
        double cdf = p;
        double u = uniform();
        std::uint64_t k = 0;
        while (u > cdf) {
            ++k;
            p *= mu / static_cast<double>(k);
            cdf += p;
            if (p < 1e-300 && cdf >= 1.0 - 1e-15) break;
        }
        return k;
    }
    // PTRS transformed rejection (Hormann 1993).
    const double slam = std::sqrt(mu);
    const double loglam = std::log(mu);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = uniform() - 0.5;
        double v = uniform();
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <= -mu + k * loglam - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

}  // namespace pamlab
