// Batch experiment runner over the pamlab C API.

#include "pamlab/pamlab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int exit_config = 2;
constexpr int exit_guard = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail_config(const std::string& msg) { throw CliError{exit_config, msg}; }

void check(pamlab_status s)
{
    if (s == PAMLAB_OK) return;
    const std::string msg = pamlab_last_error();
    switch (s) {
    case PAMLAB_ERR_CONFIG:
    case PAMLAB_ERR_NULL: throw CliError{exit_config, msg};
    case PAMLAB_ERR_GUARD: throw CliError{exit_guard, msg};
    default: throw CliError{1, msg};
    }
}

std::string fmt(double x)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string fmt_mean(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// ---- config ---------------------------------------------------------

void check_keys(const json& cfg, const std::set<std::string>& allowed)
{
    if (!cfg.is_object()) fail_config("config must be a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!allowed.count(it.key())) fail_config("unknown config key: " + it.key());
}

template <class T>
T get(const json& cfg, const std::string& key)
{
    if (!cfg.contains(key)) fail_config("missing config key: " + key);
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        fail_config("config key has the wrong type: " + key);
    }
}

template <class T>
T get_or(const json& cfg, const std::string& key, T fallback)
{
    return cfg.contains(key) ? get<T>(cfg, key) : fallback;
}

std::string delta_string(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return v.dump();
    fail_config("delta must be a rational string or a number");
}

struct ModelHandle {
    pamlab_model* p = nullptr;
    ModelHandle() = default;
    ModelHandle(const ModelHandle&) = delete;
    ModelHandle& operator=(const ModelHandle&) = delete;
    ~ModelHandle() { pamlab_model_free(p); }
};

void make_model(const json& cfg, ModelHandle& h)
{
    const int m = get<int>(cfg, "m");
    const std::string variant = get_or<std::string>(cfg, "variant", "sequential_urn");
    if (cfg.contains("delta_spec")) {
        const json& d = cfg.at("delta_spec");
        if (!d.is_object()) fail_config("delta_spec must be an object");
        const std::string kind = get<std::string>(d, "kind");
        if (kind == "log_decay") {
            check_keys(d, {"kind", "c", "alpha", "floor"});
            check(pamlab_model_create_log_decay(m, get<double>(d, "c"), get_or<double>(d, "alpha", 1.0),
                                                get_or<double>(d, "floor", -1.0), variant.c_str(), &h.p));
        } else if (kind == "sequence") {
            check_keys(d, {"kind", "values"});
            const auto v = get<std::vector<double>>(d, "values");
            check(pamlab_model_create_sequence(m, v.data(), v.size(), variant.c_str(), &h.p));
        } else if (kind == "constant") {
            check_keys(d, {"kind", "value"});
            check(pamlab_model_create(m, delta_string(d.at("value")).c_str(), variant.c_str(), &h.p));
        } else {
            fail_config("unknown delta_spec kind: " + kind);
        }
        if (cfg.contains("delta")) fail_config("give either delta or delta_spec");
        return;
    }
    if (!cfg.contains("delta")) fail_config("missing config key: delta");
    check(pamlab_model_create(m, delta_string(cfg.at("delta")).c_str(), variant.c_str(), &h.p));
}

std::string model_text(const pamlab_model* p, pamlab_status (*fn)(const pamlab_model*, char*, size_t, size_t*))
{
    size_t need = 0;
    check(fn(p, nullptr, 0, &need));
    std::string s(need, '\0');
    check(fn(p, s.data(), s.size(), &need));
    s.resize(need - 1);
    return s;
}

std::vector<int64_t> n_grid(const json& cfg)
{
    if (cfg.contains("n_grid")) {
        const json& g = cfg.at("n_grid");
        if (g.is_array()) return get<std::vector<int64_t>>(cfg, "n_grid");
        if (!g.is_object()) fail_config("n_grid must be an array or {lo, hi, per_decade}");
        check_keys(g, {"lo", "hi", "per_decade"});
        const int lo = get<int>(g, "lo"), hi = get<int>(g, "hi"), per = get_or<int>(g, "per_decade", 5);
        if (lo > hi || per < 1 || lo < 0 || hi > 9) fail_config("bad n_grid decades");
        std::set<int64_t> s;
        for (int j = 0; j <= (hi - lo) * per; ++j) s.insert(std::llround(std::pow(10.0, lo + static_cast<double>(j) / per)));
        return {s.begin(), s.end()};
    }
    return {get<int64_t>(cfg, "n")};
}

// Output stream: the file named by cfg[key] or stdout.
class Output {
public:
    Output(const json& cfg, const std::string& key)
    {
        if (cfg.contains(key)) {
            file_.open(get<std::string>(cfg, key), std::ios::binary);
            if (!file_) fail_config("cannot open output file: " + get<std::string>(cfg, key));
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

// ---- subcommands ----------------------------------------------------

const std::set<std::string> model_keys = {"m", "delta", "delta_spec", "variant"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> more)
{
    base.insert(more);
    return base;
}

int run_simulate(const json& cfg)
{
    check_keys(cfg, with(model_keys, {"n", "reps", "seed", "experiment_id", "out", "decomp_out", "edges_out", "timing"}));
    ModelHandle model;
    make_model(cfg, model);
    const int64_t n = get<int64_t>(cfg, "n");
    const int64_t reps = get<int64_t>(cfg, "reps");
    if (reps < 1) fail_config("reps must be at least 1");
    const uint64_t seed = get<uint64_t>(cfg, "seed");
    const bool decomp = cfg.contains("decomp_out");
    unsigned flags = 0;
    if (decomp) flags |= PAMLAB_SIM_DECOMPOSITION;
    if (get_or<bool>(cfg, "timing", false)) flags |= PAMLAB_SIM_TIMING;
    std::vector<pamlab_replicate> recs(static_cast<size_t>(reps));
    check(pamlab_simulate_batch(model.p, n, recs.size(), seed, flags, recs.data()));

    int m = 0;
    check(pamlab_model_m(model.p, &m));
    const std::string id = get_or<std::string>(cfg, "experiment_id", "simulate");
    const std::string variant = model_text(model.p, pamlab_model_variant);
    const std::string delta = model_text(model.p, pamlab_model_describe);
    Output out(cfg, "out");
    out.os() << "experiment_id,variant,n,m,delta_spec,replicate,seed,T_total,T_simple,runtime_ms\n";
    for (size_t r = 0; r < recs.size(); ++r)
        out.os() << id << ',' << variant << ',' << n << ',' << m << ',' << delta << ',' << r << ',' << recs[r].seed << ','
                 << recs[r].t_total << ',' << recs[r].t_simple << ',' << fmt(recs[r].runtime_ms) << '\n';
    if (decomp) {
        Output d(cfg, "decomp_out");
        d.os() << "replicate,Delta_n,T1,T2,T3,residual\n";
        for (size_t r = 0; r < recs.size(); ++r) {
            const auto& x = recs[r].decomposition;
            d.os() << r << ',' << fmt(x.delta_n) << ',' << fmt(x.t1) << ',' << fmt(x.t2) << ',' << fmt(x.t3) << ','
                   << fmt(x.residual) << '\n';
        }
    }
    if (cfg.contains("edges_out")) {
        pamlab_graph* g = nullptr;
        check(pamlab_graph_sample(model.p, n, recs[0].seed, &g));
        const pamlab_status s = pamlab_graph_write_edges(g, get<std::string>(cfg, "edges_out").c_str());
        pamlab_graph_free(g);
        check(s);
    }
    return 0;
}

int run_exact_mean(const json& cfg)
{
    check_keys(cfg, with(model_keys, {"n", "n_grid", "out"}));
    ModelHandle model;
    make_model(cfg, model);
    if (!cfg.contains("n_grid")) {
        double v = 0.0;
        check(pamlab_exact_mean(model.p, get<int64_t>(cfg, "n"), &v));
        Output out(cfg, "out");
        out.os() << fmt_mean(v) << '\n';
        return 0;
    }
    const auto ns = n_grid(cfg);
    std::vector<double> v(ns.size());
    check(pamlab_exact_mean_curve(model.p, ns.data(), ns.size(), v.data()));
    Output out(cfg, "out");
    out.os() << "n,exact_mean\n";
    for (size_t i = 0; i < ns.size(); ++i) out.os() << ns[i] << ',' << fmt(v[i]) << '\n';
    return 0;
}

json fit_json(const pamlab_growth_fit& f)
{
    json j{{"valid", f.valid != 0}, {"fit_from", f.fit_from}, {"intercept", f.intercept}};
    if (f.basis & PAMLAB_TERM_LOG_N) j["log_n"] = f.log_n;
    if (f.basis & PAMLAB_TERM_LOGLOG_N) j["loglog_n"] = f.loglog_n;
    if (f.basis & PAMLAB_TERM_LOG_POW) j["log_pow"] = f.log_pow;
    if (f.basis & PAMLAB_TERM_INV_LOG) j["inv_log"] = f.inv_log;
    return j;
}

int run_phase_scan(const json& cfg)
{
    check_keys(cfg, {"m", "alpha", "c_list", "n_grid", "floor", "out", "fits_out"});
    const int m = get<int>(cfg, "m");
    const double alpha = get<double>(cfg, "alpha");
    const auto cs = get<std::vector<double>>(cfg, "c_list");
    if (cs.empty()) fail_config("c_list must be nonempty");
    const auto ns = n_grid(cfg);
    std::vector<double> means(cs.size() * ns.size());
    std::vector<pamlab_growth_fit> fits(cs.size());
    check(pamlab_phase_scan(m, alpha, cs.data(), cs.size(), ns.data(), ns.size(), get_or<double>(cfg, "floor", -1.0),
                            means.data(), fits.data()));
    Output out(cfg, "out");
    out.os() << "alpha,c,n,exact_mean\n";
    for (size_t c = 0; c < cs.size(); ++c)
        for (size_t i = 0; i < ns.size(); ++i)
            out.os() << fmt(alpha) << ',' << fmt(cs[c]) << ',' << ns[i] << ',' << fmt(means[c * ns.size() + i]) << '\n';
    json report = json::array();
    for (size_t c = 0; c < cs.size(); ++c) {
        json j = fit_json(fits[c]);
        j["alpha"] = alpha;
        j["c"] = cs[c];
        report.push_back(j);
    }
    // Fits go to fits_out, or to stdout when the table itself went to a file.
    if (cfg.contains("fits_out") || cfg.contains("out")) {
        Output f(cfg, "fits_out");
        f.os() << report.dump(2) << '\n';
    }
    return 0;
}

int run_asym(const json& cfg)
{
    check_keys(cfg, {"diagram", "m", "delta", "max_over_embeddings", "out"});
    if (!cfg.contains("diagram")) fail_config("missing config key: diagram");
    const json& d = cfg.at("diagram");
    int k = 0;
    std::vector<int> edges;
    if (d.is_string()) {
        const std::string s = d.get<std::string>();
        auto parse_size = [&](const std::string& prefix) {
            try {
                return std::stoi(s.substr(prefix.size()));
            } catch (...) {
                fail_config("bad diagram name: " + s);
            }
        };
        if (s == "triangle") {
            k = 3;
            edges = {1, 2, 1, 3, 2, 3};
        } else if (s.rfind("cycle:", 0) == 0) {
            k = parse_size("cycle:");
            if (k < 3 || k > 12) fail_config("cycle size must lie in [3, 12]");
            for (int i = 1; i < k; ++i) edges.insert(edges.end(), {i, i + 1});
            edges.insert(edges.end(), {1, k});
        } else if (s.rfind("clique:", 0) == 0) {
            k = parse_size("clique:");
            if (k < 2 || k > 12) fail_config("clique size must lie in [2, 12]");
            for (int i = 1; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j) edges.insert(edges.end(), {i, j});
        } else {
            fail_config("unknown diagram name: " + s);
        }
    } else {
        check_keys(d, {"k", "edges"});
        k = get<int>(d, "k");
        for (const auto& e : d.at("edges")) {
            if (!e.is_array() || e.size() != 2) fail_config("edges must be [u, v] pairs");
            edges.push_back(e[0].get<int>());
            edges.push_back(e[1].get<int>());
        }
    }
    if (!cfg.contains("delta")) fail_config("missing config key: delta");
    char buf[64];
    int log_exp = 0;
    check(pamlab_diagram_order(k, edges.data(), edges.size() / 2, get<int>(cfg, "m"), delta_string(cfg.at("delta")).c_str(),
                               get_or<bool>(cfg, "max_over_embeddings", false) ? 1 : 0, buf, sizeof buf, &log_exp));
    Output out(cfg, "out");
    out.os() << json{{"n_exponent", std::string(buf)}, {"log_exponent", log_exp}}.dump() << '\n';
    return 0;
}

int run_limit_sample(const json& cfg)
{
    check_keys(cfg, with(model_keys, {"tol", "N", "draws", "seed", "out", "ratio_index", "ratio_i_max"}));
    ModelHandle model;
    make_model(cfg, model);
    const int64_t draws = get<int64_t>(cfg, "draws");
    if (draws < 1) fail_config("draws must be at least 1");
    const uint64_t seed = get<uint64_t>(cfg, "seed");
    std::vector<double> v(static_cast<size_t>(draws));
    if (cfg.contains("ratio_index")) {
        const int64_t i = get<int64_t>(cfg, "ratio_index");
        check(pamlab_ratio_sample(model.p, get_or<int64_t>(cfg, "ratio_i_max", i), i, v.size(), seed, v.data()));
    } else {
        int64_t N = 0;
        double err = 0.0;
        if (cfg.contains("N"))
            N = get<int64_t>(cfg, "N");
        else
            check(pamlab_truncation_plan(model.p, get_or<double>(cfg, "tol", 0.01), &N, &err));
        check(pamlab_limit_sample(model.p, N, v.size(), seed, v.data()));
    }
    Output out(cfg, "out");
    out.os() << "draw_index,value\n";
    for (size_t i = 0; i < v.size(); ++i) out.os() << i << ',' << fmt(v[i]) << '\n';
    return 0;
}

int run_rgiv(const json& cfg)
{
    check_keys(cfg, {"lambda", "t", "reps", "seed", "forced_N", "out"});
    const int64_t reps = get<int64_t>(cfg, "reps");
    if (reps < 1) fail_config("reps must be at least 1");
    std::vector<pamlab_rgiv_record> recs(static_cast<size_t>(reps));
    check(pamlab_rgiv_batch(get<double>(cfg, "lambda"), get<double>(cfg, "t"), recs.size(), get<uint64_t>(cfg, "seed"),
                            get_or<int64_t>(cfg, "forced_N", -1), recs.data()));
    Output out(cfg, "out");
    out.os() << "replicate,N,edges,triangles,S,L,D,R1,R2,Delta,T1,T2,T3\n";
    for (size_t r = 0; r < recs.size(); ++r) {
        const auto& x = recs[r];
        out.os() << r << ',' << x.N << ',' << x.edges << ',' << x.triangles << ',' << fmt(x.S) << ',' << fmt(x.L) << ','
                 << fmt(x.D) << ',' << fmt(x.R1) << ',' << fmt(x.R2) << ',' << fmt(x.Delta) << ',' << fmt(x.T1) << ','
                 << fmt(x.T2) << ',' << fmt(x.T3) << '\n';
    }
    return 0;
}

// Reads one numeric column of a CSV file with a header row.
std::vector<double> read_column(const std::string& path, const std::string& column)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) fail_config("cannot read " + path);
    std::string line;
    if (!std::getline(is, line)) fail_config("empty CSV: " + path);
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    const auto header = split(line);
    size_t col = header.size();
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    if (col == header.size()) fail_config("column " + column + " not found in " + path);
    std::vector<double> v;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (col >= cells.size()) fail_config("short row in " + path);
        double x = 0.0;
        const auto& c = cells[col];
        auto r = std::from_chars(c.data(), c.data() + c.size(), x);
        if (r.ec != std::errc() || r.ptr != c.data() + c.size()) fail_config("non-numeric value in " + path + ": " + c);
        v.push_back(x);
    }
    if (v.empty()) fail_config("no rows in " + path);
    return v;
}

json moments_json(const std::vector<double>& v)
{
    double mean = 0.0, var = 0.0, se = 0.0;
    check(pamlab_moments(v.data(), v.size(), &mean, &var, &se));
    return json{{"count", v.size()}, {"mean", mean}, {"variance", var}, {"stderr_mean", se}};
}

std::vector<double> standardize_empirical(std::vector<double> v)
{
    double mean = 0.0, var = 0.0, se = 0.0;
    check(pamlab_moments(v.data(), v.size(), &mean, &var, &se));
    if (!(var > 0.0)) fail_config("sample has zero variance");
    const double sd = std::sqrt(var);
    for (double& x : v) x = (x - mean) / sd;
    return v;
}

int run_compare(const json& cfg)
{
    check_keys(cfg, {"a", "b", "column", "column_b", "reference", "standardize", "qq_points", "qq_out", "out"});
    const std::string column = get_or<std::string>(cfg, "column", "value");
    const std::string standardize = get_or<std::string>(cfg, "standardize", "none");
    if (standardize != "none" && standardize != "empirical") fail_config("standardize must be none or empirical");
    auto prep = [&](std::vector<double> v) { return standardize == "empirical" ? standardize_empirical(std::move(v)) : v; };
    const auto a = prep(read_column(get<std::string>(cfg, "a"), column));
    json report{{"a", get<std::string>(cfg, "a")}, {"column", column}, {"standardize", standardize}, {"moments_a", moments_json(a)}};
    const bool has_b = cfg.contains("b");
    const std::string reference = get_or<std::string>(cfg, "reference", has_b ? "" : "normal");
    if (has_b == !reference.empty()) fail_config("give exactly one of b and reference");
    if (has_b) {
        const auto b = prep(read_column(get<std::string>(cfg, "b"), get_or<std::string>(cfg, "column_b", column)));
        double w = 0.0;
        check(pamlab_wasserstein1(a.data(), a.size(), b.data(), b.size(), &w));
        report["b"] = get<std::string>(cfg, "b");
        report["moments_b"] = moments_json(b);
        report["wasserstein1"] = w;
    } else {
        if (reference != "normal") fail_config("the only built-in reference is normal");
        const int points = get_or<int>(cfg, "qq_points", 200);
        if (points < 2) fail_config("qq_points must be at least 2");
        double w = 0.0, corr = 0.0;
        check(pamlab_wasserstein1_normal(a.data(), a.size(), &w));
        std::vector<double> q(static_cast<size_t>(points)), s(q.size()), r(q.size());
        check(pamlab_qq_normal(a.data(), a.size(), points, q.data(), s.data(), r.data(), &corr));
        report["reference"] = reference;
        report["wasserstein1_to_normal"] = w;
        report["qq_correlation"] = corr;
        if (cfg.contains("qq_out")) {
            Output qq(cfg, "qq_out");
            qq.os() << "q,sample_quantile,reference_quantile\n";
            for (size_t i = 0; i < q.size(); ++i) qq.os() << fmt(q[i]) << ',' << fmt(s[i]) << ',' << fmt(r[i]) << '\n';
        }
    }
    Output out(cfg, "out");
    out.os() << report.dump(2) << '\n';
    return 0;
}

json load_config(const std::string& path)
{
    if (path.empty()) return json::object();
    std::ifstream is(path, std::ios::binary);
    if (!is) fail_config("cannot read config " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        fail_config(std::string("config is not valid JSON: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pamlab: triangle counts in preferential attachment graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pamlab_version()));

    struct Overrides {
        std::string config;
        std::optional<int> m;
        std::optional<std::string> delta, variant, out;
        std::optional<int64_t> n, reps;
        std::optional<uint64_t> seed;
    };
    Overrides ov;
    std::map<std::string, int (*)(const json&)> runners = {
        {"simulate", run_simulate},   {"exact-mean", run_exact_mean}, {"phase-scan", run_phase_scan},
        {"asym", run_asym},           {"limit-sample", run_limit_sample}, {"rgiv", run_rgiv},
        {"compare", run_compare},
    };
    const std::map<std::string, std::string> about = {
        {"simulate", "sample graphs and write per-replicate triangle counts"},
        {"exact-mean", "exact expected triangle count"},
        {"phase-scan", "exact means over an n grid for time-varying delta, with growth fits"},
        {"asym", "asymptotic order of a diagram's expected count"},
        {"limit-sample", "draws from the limiting law or the ratio limit"},
        {"rgiv", "random graph with immigrating vertices: counts and decompositions"},
        {"compare", "distances and moments between samples or against N(0,1)"},
    };
    for (const auto& [name, fn] : runners) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("-c,--config", ov.config, "JSON config file");
        sub->add_option("--m", ov.m, "override m");
        sub->add_option("--delta", ov.delta, "override delta (rational string)");
        sub->add_option("--variant", ov.variant, "override variant");
        sub->add_option("--n", ov.n, "override n");
        sub->add_option("--reps", ov.reps, "override replicates");
        sub->add_option("--seed", ov.seed, "override seed");
        sub->add_option("-o,--out", ov.out, "override output path");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        json cfg = load_config(ov.config);
        if (!cfg.is_object()) fail_config("config must be a JSON object");
        if (ov.m) cfg["m"] = *ov.m;
        if (ov.delta) cfg["delta"] = *ov.delta;
        if (ov.variant) cfg["variant"] = *ov.variant;
        if (ov.n) cfg["n"] = *ov.n;
        if (ov.reps) cfg["reps"] = *ov.reps;
        if (ov.seed) cfg["seed"] = *ov.seed;
        if (ov.out) cfg["out"] = *ov.out;
        return runners.at(name)(cfg);
    } catch (const CliError& e) {
        std::cerr << "pamlab " << name << ": " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "pamlab " << name << ": " << e.what() << '\n';
        return 1;
    }
}
