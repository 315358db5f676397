#pragma once

#include "adlv/finite_weyl.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace adlv {

// Coefficients in the simple coroots.
using CorootVector = std::vector<std::int64_t>;

class QuantumBruhatGraph {
  public:
    struct Edge {
        WeylElement target;
        int root = 0;  // positive root alpha with target = source * s_alpha
        bool quantum = false;
    };
    struct DistanceWeight {
        int distance = 0;
        CorootVector weight;
    };
    struct CoxeterPath {
        std::vector<WeylElement> vertices;
        CorootVector weight;
    };

    explicit QuantumBruhatGraph(std::shared_ptr<const WeylGroup> weyl);

    const WeylGroup& weyl() const { return *weyl_; }
    const std::vector<Edge>& edges(WeylElement w) const { return edges_.at(w.id()); }
    std::size_t num_bruhat_edges() const { return bruhat_edges_; }
    std::size_t num_quantum_edges() const { return quantum_edges_; }

    // Shortest path length and the common weight of all shortest paths.
    // Throws InvariantViolation if two shortest paths carry different weights.
    DistanceWeight distance_weight(WeylElement from, WeylElement to) const;
    Coweight weight_in_lattice(const CorootVector& weight) const;

    // Path v -> v s_1 -> ... -> v s_1 ... s_n along a word with letters in
    // distinct sigma-orbits; checked to be a shortest path.
    CoxeterPath coxeter_path(WeylElement v, const std::vector<int>& word) const;

    // Fill all per-source tables (verifies weight well-definedness globally).
    void build_all() const;

    std::string to_dot() const;

  private:
    const std::vector<DistanceWeight>& table(WeylElement from) const;

    std::shared_ptr<const WeylGroup> weyl_;
    std::vector<std::vector<Edge>> edges_;
    std::size_t bruhat_edges_ = 0, quantum_edges_ = 0;
    mutable std::vector<std::vector<DistanceWeight>> tables_;
    std::unique_ptr<std::once_flag[]> table_once_;
};

}  // namespace adlv
