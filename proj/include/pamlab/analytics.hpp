#pragma once

#include "pamlab/environment.hpp"
#include "pamlab/stats.hpp"

#include <cstdint>
#include <vector>

namespace pamlab {

// E T_n = m^2(m-1) sum_{i<j<k<=n} dh_i dg_j df_k, streamed in O(n) time and O(1) memory.
double exact_mean_triangles(const ModelParams& params, std::int64_t n);

// Exact means at every n of an ascending grid in one pass.
std::vector<double> exact_mean_curve(const ModelParams& params, const std::vector<std::int64_t>& ns);

// Per-oldest-vertex means E Delta_{n,i}, i = 1..n (index 0 unused).
class DeltaRowTable {
public:
    DeltaRowTable(const ModelParams& params, std::int64_t n);
    double operator()(std::int64_t i) const;
    std::int64_t n() const { return tables_.n; }

private:
    ScalarTables tables_;
};

double expected_delta_i(const ModelParams& params, std::int64_t i, std::int64_t n);

struct PhaseRow {
    double alpha = 0.0;
    double c = 0.0;
    std::int64_t n = 0;
    double exact_mean = 0.0;
};

struct PhaseFit {
    double alpha = 0.0;
    double c = 0.0;
    GrowthFit fit;                 // fit.loglog_n is the fitted exponent of log n
    std::int64_t fit_from = 0;     // smallest n used in the fit
};

struct PhaseScanResult {
    std::vector<PhaseRow> rows;
    std::vector<PhaseFit> fits;    // one per c
};

// Basis used for the growth fit in the (alpha, c) regime.
unsigned phase_basis(double alpha, double c);

PhaseScanResult phase_scan(int m, double alpha, const std::vector<double>& c_list, const std::vector<std::int64_t>& n_grid,
                           double floor = -1.0);

// Log-spaced grid with `per_decade` points per decade from 10^lo to 10^hi.
std::vector<std::int64_t> decade_grid(int lo, int hi, int per_decade);

}  // namespace pamlab
