#pragma once

#include "pamlab/environment.hpp"
#include "pamlab/rng.hpp"
#include "pamlab/stats.hpp"

#include <cstdint>
#include <vector>

namespace pamlab {

struct TruncationPlan {
    std::int64_t N = 0;
    double predicted_error = 0.0;
};

// N = ceil(max(1/tol^2, (1/tol)^{1/(3/2 - 2 beta)})), at least 10.
TruncationPlan truncation_plan(const ModelParams& params, double tol);

// Order-level truncation error at N: max(N^{-1/2}, N^{2 beta - 3/2}).
double truncation_error(double beta, std::int64_t N);

// Draws the limit law for constant delta <= 0:
// sum_{i<=N} b_i (X_i prod_{i<j<=N} Y_j - [delta = 0]).
class LimitSampler {
public:
    LimitSampler(const ModelParams& params, const TruncationPlan& plan);
    double draw(Rng& rng) const;
    std::int64_t N() const { return N_; }
    // Mean of a draw: sum of b_i when delta < 0, zero when delta = 0.
    double mean() const { return centered_ ? 0.0 : sum_b_; }

private:
    std::int64_t N_;
    bool centered_;
    std::vector<BetaShape> shape_;     // index i = 2..N
    std::vector<double> log_psi2_;     // log E psi_i^2
    std::vector<double> log_comp2_;    // log E (1-psi_i)^2
    std::vector<double> b_;
    double sum_b_ = 0.0;
};

double sample_limit(const ModelParams& params, const TruncationPlan& plan, Rng& rng);

// count draws; draw r uses the stream stream_seed(seed, r).
std::vector<double> sample_limit_batch(const ModelParams& params, const TruncationPlan& plan, std::size_t count,
                                       std::uint64_t seed);

enum class StandardizeMode { centered, uncentered };
enum class ScaleKind { s_n, s_tilde };

// (T - [centered] E T_n) / (gamma * scale_n). The mode must be centered for delta >= 0
// and uncentered for delta < 0.
SampleSet standardize(const std::vector<double>& t_samples, const ModelParams& params, std::int64_t n,
                      StandardizeMode mode, ScaleKind scale = ScaleKind::s_n);

// One joint draw of (psi_i^2 prod_{j=2}^{i} (1 - psi_j)^{-2}) for i = 2..i_max; entry 0 is i = 2.
std::vector<double> sample_ratio_vector(const ModelParams& params, std::int64_t i_max, Rng& rng);

}  // namespace pamlab
