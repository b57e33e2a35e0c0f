#pragma once

#include "pamlab/environment.hpp"
#include "pamlab/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace pamlab {

// Out-edge target table. Row k (k >= 2) holds the m targets of vertex k, all < k.
struct PamGraph {
    std::int64_t n = 0;
    int m = 0;
    Variant variant = Variant::sequential_urn;
    std::uint64_t seed = 0;
    std::vector<std::int32_t> targets;   // (n+1)*m entries; rows 0 and 1 unused

    std::span<const std::int32_t> row(std::int64_t k) const
    {
        return {targets.data() + k * m, static_cast<std::size_t>(m)};
    }
    std::int32_t target(std::int64_t k, int label) const { return targets[static_cast<std::size_t>(k * m + label)]; }

    // Graph induced by the first n2 vertices (the evolution snapshot at time n2).
    PamGraph prefix(std::int64_t n2) const;

    // Throws if a target is out of range or the degree total is wrong.
    void check_invariants() const;
    std::vector<std::int64_t> degrees() const;
};

PamGraph make_graph(std::int64_t n, int m, const std::vector<std::vector<std::int32_t>>& rows_from_3);

PamGraph sample_urn_graph(const Environment& env, int m, Rng& rng);
PamGraph sample_sequential_direct(const ModelParams& params, std::int64_t n, Rng& rng);
PamGraph sample_instantaneous(const ModelParams& params, std::int64_t n, Rng& rng);

// Dispatches on params.variant(). For the urn variant the environment is stored in env_out when given.
PamGraph sample_graph(const ModelParams& params, std::int64_t n, Rng& rng, Environment* env_out = nullptr);

// CSV rows (source,label,target) with a header row.
void write_edge_list(const PamGraph& g, std::ostream& os);

class Fenwick {
public:
    explicit Fenwick(std::size_t size);
    void add(std::size_t index, double w);   // 1-based
    double prefix(std::size_t index) const;
    double total() const { return prefix(size_); }
    // Smallest index with prefix(index) > u.
    std::size_t search(double u) const;

private:
    std::size_t size_;
    std::size_t top_;
    std::vector<double> tree_;
};

}  // namespace pamlab
