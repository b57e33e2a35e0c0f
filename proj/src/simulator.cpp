#include "pamlab/simulator.hpp"

#include "pamlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace pamlab {

Fenwick::Fenwick(std::size_t size) : size_(size), top_(1), tree_(size + 1, 0.0)
{
    while (top_ * 2 <= size_) top_ *= 2;
}

void Fenwick::add(std::size_t index, double w)
{
    for (; index <= size_; index += index & (~index + 1)) tree_[index] += w;
}

double Fenwick::prefix(std::size_t index) const
{
    double s = 0.0;
    for (; index > 0; index -= index & (~index + 1)) s += tree_[index];
    return s;
}

std::size_t Fenwick::search(double u) const
{
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
        if (pos + step <= size_ && tree_[pos + step] <= u) {
            pos += step;
            u -= tree_[pos];
        }
    }
    return pos + 1;
}

namespace {

PamGraph blank_graph(std::int64_t n, int m, Variant v)
{
    require(n >= 2, "n must be at least 2");
    require(m >= 1, "m must be positive");
    guard(n < (std::int64_t{1} << 31), "n exceeds 32-bit vertex ids");
    PamGraph g;
    g.n = n;
    g.m = m;
    g.variant = v;
    g.targets.assign(static_cast<std::size_t>((n + 1) * m), 0);
    for (int l = 0; l < m; ++l) g.targets[static_cast<std::size_t>(2 * m + l)] = 1;
    return g;
}

}  // namespace

PamGraph make_graph(std::int64_t n, int m, const std::vector<std::vector<std::int32_t>>& rows_from_3)
{
    PamGraph g = blank_graph(n, m, Variant::sequential_direct);
    require(static_cast<std::int64_t>(rows_from_3.size()) == n - 2, "need one row per vertex 3..n");
    for (std::int64_t k = 3; k <= n; ++k) {
        const auto& r = rows_from_3[static_cast<std::size_t>(k - 3)];
        require(static_cast<int>(r.size()) == m, "row length must equal m");
        for (int l = 0; l < m; ++l) {
            const std::int32_t t = r[static_cast<std::size_t>(l)];
            require(t >= 1 && t < k, "target out of range at vertex " + std::to_string(k));
            g.targets[static_cast<std::size_t>(k * m + l)] = t;
        }
    }
    g.check_invariants();
    return g;
}

PamGraph PamGraph::prefix(std::int64_t n2) const
{
    require(n2 >= 2 && n2 <= n, "prefix size out of range");
    PamGraph g = *this;
    g.n = n2;
    g.targets.resize(static_cast<std::size_t>((n2 + 1) * m));
    return g;
}

void PamGraph::check_invariants() const
{
    if (static_cast<std::int64_t>(targets.size()) != (n + 1) * m) throw std::logic_error("target table size mismatch");
    std::int64_t total = 0;
    for (std::int64_t k = 2; k <= n; ++k)
        for (int l = 0; l < m; ++l) {
            std::int32_t t = target(k, l);
            if (t < 1 || t >= k) throw std::logic_error("target out of range at vertex " + std::to_string(k));
            total += 2;
        }
    if (total != 2 * static_cast<std::int64_t>(m) * (n - 1)) throw std::logic_error("degree total mismatch");
}

std::vector<std::int64_t> PamGraph::degrees() const
{
    std::vector<std::int64_t> d(static_cast<std::size_t>(n + 1), 0);
    for (std::int64_t k = 2; k <= n; ++k)
        for (int l = 0; l < m; ++l) {
            ++d[static_cast<std::size_t>(k)];
            ++d[static_cast<std::size_t>(target(k, l))];
        }
    return d;
}

PamGraph sample_urn_graph(const Environment& env, int m, Rng& rng)
{
    const std::int64_t n = env.n();
    PamGraph g = blank_graph(n, m, Variant::sequential_urn);
    const double* lr = env.log_R.data();
    for (std::int64_t k = 3; k <= n; ++k) {
        const double base = lr[k - 1];
        for (int l = 0; l < m; ++l) {
            // P(target <= j) = R_{k-1}/R_j; invert by binary search on log_R.
            const double thr = base - std::log(rng.uniform());
            std::int64_t lo = 1, hi = k - 1;
            while (lo < hi) {
                std::int64_t mid = lo + (hi - lo) / 2;
                if (lr[mid] <= thr)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            g.targets[static_cast<std::size_t>(k * m + l)] = static_cast<std::int32_t>(lo);
        }
    }
    return g;
}

namespace {

PamGraph sample_fenwick(const ModelParams& params, std::int64_t n, Rng& rng, bool frozen)
{
    const int m = params.m();
    PamGraph g = blank_graph(n, m, frozen ? Variant::instantaneous : Variant::sequential_direct);
    Fenwick fw(static_cast<std::size_t>(n));
    double total = 0.0;
    auto add = [&](std::int64_t v, double w) {
        fw.add(static_cast<std::size_t>(v), w);
        total += w;
    };
    add(1, m + params.delta_at(1));
    add(2, m + params.delta_at(2));
    std::vector<std::int32_t> batch(static_cast<std::size_t>(m));
    for (std::int64_t k = 3; k <= n; ++k) {
        for (int l = 0; l < m; ++l) {
            if (!(total > 0.0)) throw ConfigError("nonpositive total attachment weight at vertex " + std::to_string(k));
            std::size_t t = fw.search(rng.uniform() * total);
            if (t > static_cast<std::size_t>(k - 1)) t = static_cast<std::size_t>(k - 1);
            batch[static_cast<std::size_t>(l)] = static_cast<std::int32_t>(t);
            g.targets[static_cast<std::size_t>(k * m + l)] = static_cast<std::int32_t>(t);
            if (!frozen) add(static_cast<std::int64_t>(t), 1.0);
        }
        if (frozen)
            for (int l = 0; l < m; ++l) add(batch[static_cast<std::size_t>(l)], 1.0);
        add(k, m + params.delta_at(k));
    }
    return g;
}

}  // namespace

PamGraph sample_sequential_direct(const ModelParams& params, std::int64_t n, Rng& rng)
{
    return sample_fenwick(params, n, rng, false);
}

PamGraph sample_instantaneous(const ModelParams& params, std::int64_t n, Rng& rng)
{
    require(params.is_constant(), "instantaneous variant needs constant delta");
    return sample_fenwick(params, n, rng, true);
}

PamGraph sample_graph(const ModelParams& params, std::int64_t n, Rng& rng, Environment* env_out)
{
    switch (params.variant()) {
    case Variant::sequential_urn: {
        Environment env = sample_environment(params, n, rng);
        PamGraph g = sample_urn_graph(env, params.m(), rng);
        if (env_out) *env_out = std::move(env);
        return g;
    }
    case Variant::sequential_direct: return sample_sequential_direct(params, n, rng);
    case Variant::instantaneous: return sample_instantaneous(params, n, rng);
    }
    throw ConfigError("unknown variant");
}

void write_edge_list(const PamGraph& g, std::ostream& os)
{
    os << "source,label,target\n";
    for (std::int64_t k = 2; k <= g.n; ++k)
        for (int l = 0; l < g.m; ++l) os << k << ',' << (l + 1) << ',' << g.target(k, l) << '\n';
}

}  // namespace pamlab
