#pragma once

#include "pamlab/rational.hpp"
#include "pamlab/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pamlab {

enum class Variant { sequential_urn, sequential_direct, instantaneous };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct DeltaSpec {
    enum class Kind { constant, log_decay, sequence };

    Kind kind = Kind::constant;
    Rational value;                // constant delta
    double c = 0.0;                // log_decay coefficient
    double alpha = 1.0;            // log_decay exponent
    double floor = -1.0;           // log_decay lower clamp
    std::vector<double> seq;       // seq[k-1] is delta_k

    static DeltaSpec constant_of(Rational d);
    static DeltaSpec log_decay_of(double c, double alpha, double floor = -1.0);
    static DeltaSpec sequence_of(std::vector<double> deltas);

    std::string describe() const;
};

struct BetaShape {
    double a = 0.0;
    double b = 0.0;
};

class ModelParams {
public:
    ModelParams(int m, DeltaSpec delta, Variant variant = Variant::sequential_urn);

    int m() const { return m_; }
    const DeltaSpec& delta() const { return delta_; }
    Variant variant() const { return variant_; }
    bool is_constant() const { return delta_.kind == DeltaSpec::Kind::constant; }

    // delta_k for k >= 1.
    double delta_at(std::int64_t k) const;

    // Constant-delta quantities.
    Rational beta_exact() const;
    double beta() const { return beta_exact().to_double(); }
    double delta_value() const;

    ModelParams with_variant(Variant v) const;

private:
    int m_;
    DeltaSpec delta_;
    Variant variant_;
};

// Yields Beta shapes for i = 2, 3, ... keeping a compensated running sum of delta_j.
class ShapeCursor {
public:
    explicit ShapeCursor(const ModelParams& params);
    // Shape of psi_i for the next index i (starting at 2).
    BetaShape next();
    std::int64_t last_index() const { return i_ - 1; }

private:
    const ModelParams* params_;
    std::int64_t i_ = 2;
    double sum_ = 0.0;
    double comp_ = 0.0;
};

BetaShape beta_shape(std::int64_t i, const ModelParams& params);

// Beta moments as exact finite products.
double beta_psi_moment(const BetaShape& s, int k);
double beta_comp_moment(const BetaShape& s, int k);
double beta_cross_moment(const BetaShape& s);         // E psi(1-psi)
double beta_log_comp_second(const BetaShape& s);      // log E(1-psi)^2

double psi_moment(std::int64_t i, int k, const ModelParams& params);
double comp_moment(std::int64_t i, int k, const ModelParams& params);

struct Environment {
    std::vector<double> psi;     // index 1..n, psi[0] unused
    std::vector<double> log_R;   // log_R[k] = sum_{t=2}^k log(1 - psi_t)
    std::int64_t n() const { return static_cast<std::int64_t>(psi.size()) - 1; }
};

Environment sample_environment(const ModelParams& params, std::int64_t n, Rng& rng);

// Builds an environment from given psi_2..psi_n (psi_1 = 1 is implied).
Environment environment_from_psi(const std::vector<double>& psi_from_2);

double theta(const Environment& env, std::int64_t i, std::int64_t j);

struct ScalarTables {
    std::int64_t n = 0;
    std::vector<double> f;         // f_t, t = 1..n+1
    std::vector<double> delta_f;   // delta f_t, t = 2..n+1
    std::vector<double> g;         // delta g_j, j = 1..n
    std::vector<double> h;         // delta h_i, i = 1..n
    std::vector<long double> G;    // prefix sums of delta g
    std::vector<long double> GF;   // prefix sums of delta g_j f_j

    const std::vector<double>& b() const { return h; }
    double mu_row(std::int64_t i, std::int64_t n_eval) const;
    double mu_triangle(std::int64_t i, std::int64_t j, std::int64_t k) const;
    double s_tilde(std::int64_t n_eval) const;
};

ScalarTables scalar_tables(const ModelParams& params, std::int64_t n);

double mu_triangle(const ModelParams& params, std::int64_t i, std::int64_t j, std::int64_t k);
double mu_row(const ModelParams& params, std::int64_t i, std::int64_t n);

double scale_s(const ModelParams& params, std::int64_t n);
double scale_s_tilde(const ModelParams& params, std::int64_t n);
double gamma_constant(const ModelParams& params);

}  // namespace pamlab
