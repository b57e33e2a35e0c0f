#include "pamlab/pamlab.h"

#include "pamlab/analytics.hpp"
#include "pamlab/asymptotics.hpp"
#include "pamlab/environment.hpp"
#include "pamlab/errors.hpp"
#include "pamlab/limit_sampler.hpp"
#include "pamlab/parallel.hpp"
#include "pamlab/rgiv.hpp"
#include "pamlab/simulator.hpp"
#include "pamlab/stats.hpp"
#include "pamlab/subgraphs.hpp"

#include <chrono>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

struct pamlab_model {
    pamlab::ModelParams params;
};

struct pamlab_graph {
    pamlab::PamGraph graph;
    std::optional<pamlab::Environment> env;
};

namespace {

thread_local std::string last_error;

template <class F>
pamlab_status call(F&& f)
{
    try {
        f();
        last_error.clear();
        return PAMLAB_OK;
    } catch (const pamlab::ConfigError& e) {
        last_error = e.what();
        return PAMLAB_ERR_CONFIG;
    } catch (const pamlab::GuardError& e) {
        last_error = e.what();
        return PAMLAB_ERR_GUARD;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return PAMLAB_ERR_GUARD;
    } catch (const std::exception& e) {
        last_error = e.what();
        return PAMLAB_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return PAMLAB_ERR_INTERNAL;
    }
}

template <class... P>
bool any_null(const P*... p)
{
    return ((p == nullptr) || ...);
}

pamlab_status null_error()
{
    last_error = "null argument";
    return PAMLAB_ERR_NULL;
}

#define PAMLAB_CHECK_NULL(...) \
    if (any_null(__VA_ARGS__)) return null_error()

pamlab::Variant variant_or_default(const char* v)
{
    return v == nullptr ? pamlab::Variant::sequential_urn : pamlab::parse_variant(v);
}

void copy_string(const std::string& s, char* buf, std::size_t cap, std::size_t* needed)
{
    if (needed != nullptr) *needed = s.size() + 1;
    if (buf != nullptr && cap > 0) {
        const std::size_t k = std::min(cap - 1, s.size());
        std::memcpy(buf, s.data(), k);
        buf[k] = '\0';
    }
}

void copy_order(const pamlab::AsymptoticOrder& o, char* buf, std::size_t cap, int* log_exponent)
{
    const std::string s = o.n_exponent.str();
    pamlab::require(cap > s.size(), "exponent buffer too small");
    copy_string(s, buf, cap, nullptr);
    *log_exponent = o.log_exponent;
}

pamlab_decomposition to_c(const pamlab::DecompositionTerms& d)
{
    return pamlab_decomposition{d.delta_n, d.t1, d.t2, d.t3, d.total, d.residual};
}

pamlab_growth_fit to_c(const pamlab::GrowthFit& f, std::int64_t fit_from, bool valid)
{
    return pamlab_growth_fit{f.basis, f.log_n, f.loglog_n, f.log_pow, f.inv_log, f.intercept, fit_from, valid ? 1 : 0};
}

}  // namespace

extern "C" {

const char* pamlab_last_error(void) { return last_error.c_str(); }

const char* pamlab_version(void) { return "1.0.0"; }

pamlab_status pamlab_model_create(int m, const char* delta, const char* variant, pamlab_model** out)
{
    PAMLAB_CHECK_NULL(delta, out);
    return call([&] {
        *out = new pamlab_model{pamlab::ModelParams(m, pamlab::DeltaSpec::constant_of(pamlab::Rational::parse(delta)),
                                                    variant_or_default(variant))};
    });
}

pamlab_status pamlab_model_create_log_decay(int m, double c, double alpha, double floor, const char* variant,
                                            pamlab_model** out)
{
    PAMLAB_CHECK_NULL(out);
    return call([&] {
        *out = new pamlab_model{
            pamlab::ModelParams(m, pamlab::DeltaSpec::log_decay_of(c, alpha, floor), variant_or_default(variant))};
    });
}

pamlab_status pamlab_model_create_sequence(int m, const double* deltas, size_t len, const char* variant,
                                           pamlab_model** out)
{
    PAMLAB_CHECK_NULL(deltas, out);
    return call([&] {
        *out = new pamlab_model{pamlab::ModelParams(m, pamlab::DeltaSpec::sequence_of(std::vector<double>(deltas, deltas + len)),
                                                    variant_or_default(variant))};
    });
}

void pamlab_model_free(pamlab_model* model) { delete model; }

pamlab_status pamlab_model_describe(const pamlab_model* model, char* buf, size_t cap, size_t* needed)
{
    PAMLAB_CHECK_NULL(model);
    return call([&] { copy_string(model->params.delta().describe(), buf, cap, needed); });
}

pamlab_status pamlab_model_variant(const pamlab_model* model, char* buf, size_t cap, size_t* needed)
{
    PAMLAB_CHECK_NULL(model);
    return call([&] { copy_string(pamlab::variant_name(model->params.variant()), buf, cap, needed); });
}

pamlab_status pamlab_model_m(const pamlab_model* model, int* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = model->params.m(); });
}

pamlab_status pamlab_model_beta(const pamlab_model* model, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = model->params.beta(); });
}

pamlab_status pamlab_model_gamma(const pamlab_model* model, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::gamma_constant(model->params); });
}

pamlab_status pamlab_beta_shape(const pamlab_model* model, int64_t i, double* a, double* b)
{
    PAMLAB_CHECK_NULL(model, a, b);
    return call([&] {
        const auto s = pamlab::beta_shape(i, model->params);
        *a = s.a;
        *b = s.b;
    });
}

pamlab_status pamlab_psi_moment(const pamlab_model* model, int64_t i, int k, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::psi_moment(i, k, model->params); });
}

pamlab_status pamlab_comp_moment(const pamlab_model* model, int64_t i, int k, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::comp_moment(i, k, model->params); });
}

pamlab_status pamlab_scale_s(const pamlab_model* model, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::scale_s(model->params, n); });
}

pamlab_status pamlab_scale_s_tilde(const pamlab_model* model, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::scale_s_tilde(model->params, n); });
}

pamlab_status pamlab_b_coefficients(const pamlab_model* model, int64_t count, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] {
        pamlab::require(count >= 1, "count must be positive");
        const auto tab = pamlab::scalar_tables(model->params, std::max<int64_t>(count, 2));
        for (int64_t i = 1; i <= count; ++i) out[i - 1] = tab.b()[static_cast<std::size_t>(i)];
    });
}

pamlab_status pamlab_mu_row(const pamlab_model* model, int64_t i, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::mu_row(model->params, i, n); });
}

pamlab_status pamlab_graph_sample(const pamlab_model* model, int64_t n, uint64_t seed, pamlab_graph** out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] {
        pamlab::Rng rng(seed);
        pamlab::Environment env;
        auto g = pamlab::sample_graph(model->params, n, rng, &env);
        g.seed = seed;
        auto* h = new pamlab_graph{std::move(g), std::nullopt};
        if (model->params.variant() == pamlab::Variant::sequential_urn) h->env = std::move(env);
        *out = h;
    });
}

void pamlab_graph_free(pamlab_graph* graph) { delete graph; }

pamlab_status pamlab_graph_size(const pamlab_graph* graph, int64_t* n, int* m)
{
    PAMLAB_CHECK_NULL(graph, n, m);
    *n = graph->graph.n;
    *m = graph->graph.m;
    last_error.clear();
    return PAMLAB_OK;
}

pamlab_status pamlab_graph_target(const pamlab_graph* graph, int64_t k, int label, int32_t* out)
{
    PAMLAB_CHECK_NULL(graph, out);
    return call([&] {
        pamlab::require(k >= 2 && k <= graph->graph.n && label >= 0 && label < graph->graph.m, "edge index out of range");
        *out = graph->graph.target(k, label);
    });
}

pamlab_status pamlab_graph_triangles(const pamlab_graph* graph, uint64_t* total, uint64_t* simple)
{
    PAMLAB_CHECK_NULL(graph, total, simple);
    return call([&] {
        const auto c = pamlab::count_triangles(graph->graph);
        *total = c.total;
        *simple = c.simple;
    });
}

pamlab_status pamlab_graph_triangles_by_oldest(const pamlab_graph* graph, int64_t cap, uint64_t* out)
{
    PAMLAB_CHECK_NULL(graph, out);
    return call([&] {
        pamlab::require(cap >= 1, "cap must be positive");
        const auto c = pamlab::count_triangles(graph->graph, cap);
        for (int64_t i = 1; i <= cap; ++i)
            out[i - 1] = static_cast<std::size_t>(i) < c.by_oldest.size() ? c.by_oldest[static_cast<std::size_t>(i)] : 0;
    });
}

pamlab_status pamlab_graph_cycles(const pamlab_graph* graph, int len, uint64_t* simple, uint64_t* weighted)
{
    PAMLAB_CHECK_NULL(graph, simple, weighted);
    return call([&] {
        const auto c = pamlab::count_cycles(graph->graph, len);
        *simple = c.simple;
        *weighted = c.weighted;
    });
}

pamlab_status pamlab_graph_cliques(const pamlab_graph* graph, int len, uint64_t* simple, uint64_t* weighted)
{
    PAMLAB_CHECK_NULL(graph, simple, weighted);
    return call([&] {
        const auto c = pamlab::count_cliques(graph->graph, len);
        *simple = c.simple;
        *weighted = c.weighted;
    });
}

pamlab_status pamlab_graph_decomposition(const pamlab_graph* graph, pamlab_decomposition* out)
{
    PAMLAB_CHECK_NULL(graph, out);
    return call([&] {
        pamlab::require(graph->env.has_value(), "decomposition needs an urn-variant graph");
        *out = to_c(pamlab::decomposition_terms(*graph->env, graph->graph));
    });
}

pamlab_status pamlab_graph_write_edges(const pamlab_graph* graph, const char* path)
{
    PAMLAB_CHECK_NULL(graph, path);
    return call([&] {
        std::ofstream os(path, std::ios::binary);
        pamlab::require(static_cast<bool>(os), std::string("cannot open ") + path);
        pamlab::write_edge_list(graph->graph, os);
    });
}

uint64_t pamlab_stream_seed(uint64_t seed, uint64_t r) { return pamlab::stream_seed(seed, r); }

pamlab_status pamlab_simulate_batch(const pamlab_model* model, int64_t n, size_t reps, uint64_t seed, unsigned flags,
                                    pamlab_replicate* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] {
        pamlab::require(n >= 2, "n must be at least 2");
        pamlab::require(reps >= 1, "replicates must be at least 1");
        const bool decomp = (flags & PAMLAB_SIM_DECOMPOSITION) != 0;
        const bool timing = (flags & PAMLAB_SIM_TIMING) != 0;
        if (decomp) {
            pamlab::require(model->params.variant() == pamlab::Variant::sequential_urn, "decomposition needs the urn variant");
            pamlab::guard(n <= 100000, "decomposition is limited to n <= 10^5");
        }
        pamlab::parallel_for(reps, [&](std::size_t r) {
            const auto t0 = std::chrono::steady_clock::now();
            pamlab_replicate rec{};
            rec.seed = pamlab::stream_seed(seed, r);
            pamlab::Rng rng(rec.seed);
            pamlab::Environment env;
            const auto g = pamlab::sample_graph(model->params, n, rng, decomp ? &env : nullptr);
            const auto c = pamlab::count_triangles(g, 2);
            rec.t_total = c.total;
            rec.t_simple = c.simple;
            rec.t_oldest1 = c.by_oldest.size() > 1 ? c.by_oldest[1] : 0;
            rec.t_oldest2 = c.by_oldest.size() > 2 ? c.by_oldest[2] : 0;
            if (decomp) rec.decomposition = to_c(pamlab::decomposition_terms(env, g));
            if (timing)
                rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out[r] = rec;
        });
    });
}

pamlab_status pamlab_exact_mean(const pamlab_model* model, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::exact_mean_triangles(model->params, n); });
}

pamlab_status pamlab_exact_mean_curve(const pamlab_model* model, const int64_t* ns, size_t count, double* out)
{
    PAMLAB_CHECK_NULL(model, ns, out);
    return call([&] {
        const auto v = pamlab::exact_mean_curve(model->params, std::vector<std::int64_t>(ns, ns + count));
        std::copy(v.begin(), v.end(), out);
    });
}

pamlab_status pamlab_expected_delta_i(const pamlab_model* model, int64_t i, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] { *out = pamlab::expected_delta_i(model->params, i, n); });
}

pamlab_status pamlab_phase_scan(int m, double alpha, const double* c_list, size_t c_count, const int64_t* n_grid,
                                size_t n_count, double floor, double* means, pamlab_growth_fit* fits)
{
    PAMLAB_CHECK_NULL(c_list, n_grid, means, fits);
    return call([&] {
        const auto res = pamlab::phase_scan(m, alpha, std::vector<double>(c_list, c_list + c_count),
                                            std::vector<std::int64_t>(n_grid, n_grid + n_count), floor);
        for (std::size_t i = 0; i < res.rows.size(); ++i) means[i] = res.rows[i].exact_mean;
        for (std::size_t c = 0; c < res.fits.size(); ++c)
            fits[c] = to_c(res.fits[c].fit, res.fits[c].fit_from, res.fits[c].fit.basis != 0);
    });
}

pamlab_status pamlab_diagram_order(int k, const int* edges, size_t edge_count, int m, const char* delta,
                                   int max_over_embeddings, char* n_exponent, size_t cap, int* log_exponent)
{
    PAMLAB_CHECK_NULL(delta, n_exponent, log_exponent);
    if (edge_count > 0 && edges == nullptr) return null_error();
    return call([&] {
        pamlab::Diagram dg{k, {}};
        for (std::size_t e = 0; e < edge_count; ++e) dg.edges.emplace_back(edges[2 * e], edges[2 * e + 1]);
        const auto d = pamlab::Rational::parse(delta);
        const auto o = max_over_embeddings ? pamlab::subgraph_order_max(dg, m, d) : pamlab::subgraph_mean_order(dg, m, d);
        copy_order(o, n_exponent, cap, log_exponent);
    });
}

pamlab_status pamlab_evaluate_F(const char* const* a, size_t k, char* n_exponent, size_t cap, int* log_exponent)
{
    PAMLAB_CHECK_NULL(n_exponent, log_exponent);
    if (k > 0 && a == nullptr) return null_error();
    return call([&] {
        std::vector<pamlab::Rational> v;
        for (std::size_t j = 0; j < k; ++j) {
            pamlab::require(a[j] != nullptr, "null exponent");
            v.push_back(pamlab::Rational::parse(a[j]));
        }
        copy_order(pamlab::evaluate_F(v), n_exponent, cap, log_exponent);
    });
}

pamlab_status pamlab_numeric_F(const double* a, size_t k, int64_t n, double* out)
{
    PAMLAB_CHECK_NULL(a, out);
    return call([&] { *out = pamlab::numeric_F(std::vector<double>(a, a + k), n); });
}

pamlab_status pamlab_truncation_plan(const pamlab_model* model, double tol, int64_t* N, double* predicted_error)
{
    PAMLAB_CHECK_NULL(model, N, predicted_error);
    return call([&] {
        const auto p = pamlab::truncation_plan(model->params, tol);
        *N = p.N;
        *predicted_error = p.predicted_error;
    });
}

pamlab_status pamlab_limit_sample(const pamlab_model* model, int64_t N, size_t count, uint64_t seed, double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] {
        pamlab::require(N >= 10, "truncation index must be at least 10");
        const auto v = pamlab::sample_limit_batch(model->params, pamlab::TruncationPlan{N, pamlab::truncation_error(model->params.beta(), N)},
                                                  count, seed);
        std::copy(v.begin(), v.end(), out);
    });
}

pamlab_status pamlab_ratio_sample(const pamlab_model* model, int64_t i_max, int64_t i, size_t count, uint64_t seed,
                                  double* out)
{
    PAMLAB_CHECK_NULL(model, out);
    return call([&] {
        pamlab::require(i >= 2 && i <= i_max, "entry index must lie in [2, i_max]");
        pamlab::parallel_for(count, [&](std::size_t r) {
            pamlab::Rng rng(pamlab::stream_seed(seed, r));
            out[r] = pamlab::sample_ratio_vector(model->params, i_max, rng)[static_cast<std::size_t>(i - 2)];
        });
    });
}

pamlab_status pamlab_standardize(const pamlab_model* model, int64_t n, int centered, int scale, const double* in,
                                 size_t count, double* out)
{
    PAMLAB_CHECK_NULL(model, in, out);
    return call([&] {
        pamlab::require(scale == 0 || scale == 1, "scale must be 0 (s_n) or 1 (exact sum)");
        const auto s = pamlab::standardize(std::vector<double>(in, in + count), model->params, n,
                                           centered ? pamlab::StandardizeMode::centered : pamlab::StandardizeMode::uncentered,
                                           scale == 0 ? pamlab::ScaleKind::s_n : pamlab::ScaleKind::s_tilde);
        std::copy(s.values.begin(), s.values.end(), out);
    });
}

pamlab_status pamlab_rgiv_batch(double lambda, double t, size_t reps, uint64_t seed, int64_t forced_N,
                                pamlab_rgiv_record* out)
{
    PAMLAB_CHECK_NULL(out);
    return call([&] {
        const pamlab::RgivParams params(lambda, t);
        pamlab::require(reps >= 1, "replicates must be at least 1");
        pamlab::guard(lambda * t <= 1e4, "RGIV sampling is limited to lambda t <= 10^4");
        std::optional<std::int64_t> forced;
        if (forced_N >= 0) forced = forced_N;
        pamlab::parallel_for(reps, [&](std::size_t r) {
            pamlab::Rng rng(pamlab::stream_seed(seed, r));
            const auto s = pamlab::sample_rgiv(params, rng, forced);
            const auto e = pamlab::edge_decomposition(s, params);
            const auto tr = pamlab::triangle_decomposition(s, params);
            out[r] = pamlab_rgiv_record{s.N, s.edge_count(), static_cast<uint64_t>(tr.T), e.S, e.L, e.D, e.R1, e.R2,
                                        tr.Delta, tr.T1, tr.T2, tr.T3, e.residual, tr.residual};
        });
    });
}

pamlab_status pamlab_rgiv_H(double theta, double* out)
{
    PAMLAB_CHECK_NULL(out);
    return call([&] { *out = pamlab::big_H(theta); });
}

pamlab_status pamlab_rgiv_g(double u, double theta, double* out)
{
    PAMLAB_CHECK_NULL(out);
    return call([&] { *out = pamlab::g_theta(u, theta); });
}

pamlab_status pamlab_wasserstein1(const double* a, size_t na, const double* b, size_t nb, double* out)
{
    PAMLAB_CHECK_NULL(a, b, out);
    return call([&] { *out = pamlab::wasserstein1(std::vector<double>(a, a + na), std::vector<double>(b, b + nb)); });
}

pamlab_status pamlab_wasserstein1_normal(const double* a, size_t na, double* out)
{
    PAMLAB_CHECK_NULL(a, out);
    return call([&] { *out = pamlab::wasserstein1_to_normal(std::vector<double>(a, a + na)); });
}

pamlab_status pamlab_tv_poisson(const uint64_t* counts, size_t n, double mean, double* out)
{
    PAMLAB_CHECK_NULL(counts, out);
    return call([&] { *out = pamlab::tv_to_poisson(std::vector<std::uint64_t>(counts, counts + n), mean); });
}

pamlab_status pamlab_qq_normal(const double* a, size_t na, int points, double* q, double* sample, double* reference,
                               double* correlation)
{
    PAMLAB_CHECK_NULL(a, q, sample, reference, correlation);
    return call([&] {
        const auto qq = pamlab::qq_normal(std::vector<double>(a, a + na), points);
        for (std::size_t i = 0; i < qq.size(); ++i) {
            q[i] = qq[i].q;
            sample[i] = qq[i].sample;
            reference[i] = qq[i].reference;
        }
        *correlation = pamlab::qq_correlation(qq);
    });
}

pamlab_status pamlab_moments(const double* a, size_t na, double* mean, double* variance, double* stderr_mean)
{
    PAMLAB_CHECK_NULL(a, mean, variance, stderr_mean);
    return call([&] {
        const auto mo = pamlab::moments(std::vector<double>(a, a + na));
        *mean = mo.mean;
        *variance = mo.variance;
        *stderr_mean = mo.stderr_mean;
    });
}

pamlab_status pamlab_fit_growth(const double* xs, const double* ys, size_t count, unsigned basis, double alpha,
                                pamlab_growth_fit* out)
{
    PAMLAB_CHECK_NULL(xs, ys, out);
    return call([&] {
        const auto f = pamlab::fit_growth(std::vector<double>(xs, xs + count), std::vector<double>(ys, ys + count), basis, alpha);
        *out = to_c(f, static_cast<int64_t>(xs[0]), true);
    });
}

}  // extern "C"
