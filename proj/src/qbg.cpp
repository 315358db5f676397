#include "adlv/qbg.hpp"

#include <deque>
#include <sstream>

namespace adlv {

QuantumBruhatGraph::QuantumBruhatGraph(std::shared_ptr<const WeylGroup> weyl) : weyl_(std::move(weyl)) {
    const RootDatum& d = weyl_->datum();
    const std::size_t n = weyl_->order();
    edges_.resize(n);
    tables_.resize(n);
    table_once_ = std::make_unique<std::once_flag[]>(n);
    for (std::size_t id = 0; id < n; ++id) {
        WeylElement w = weyl_->element(id);
        for (int a = 0; a < d.num_positive(); ++a) {
            WeylElement target = weyl_->mul(w, weyl_->reflection(a));
            const int lw = weyl_->length(w), lt = weyl_->length(target);
            if (lt == lw + 1) {
                edges_[id].push_back({target, a, false});
                ++bruhat_edges_;
            } else if (lt == lw + 1 - d.pairing_2rho(d.root(a).coroot)) {
                edges_[id].push_back({target, a, true});
                ++quantum_edges_;
            }
        }
    }
}

const std::vector<QuantumBruhatGraph::DistanceWeight>& QuantumBruhatGraph::table(WeylElement from) const {
    std::call_once(table_once_[from.id()], [&] {
        const RootDatum& d = weyl_->datum();
        const std::size_t n = weyl_->order();
        std::vector<DistanceWeight> out(n, {-1, {}});
        out[from.id()] = {0, CorootVector(d.rank(), 0)};
        std::deque<WeylElement> queue{from};
        while (!queue.empty()) {
            WeylElement w = queue.front();
            queue.pop_front();
            const auto& here = out[w.id()];
            for (const auto& e : edges_[w.id()]) {
                CorootVector weight = here.weight;
                if (e.quantum)
                    for (int i = 0; i < d.rank(); ++i) weight[i] += d.root(e.root).coroot_coeffs[i];
                auto& there = out[e.target.id()];
                if (there.distance < 0) {
                    there = {here.distance + 1, std::move(weight)};
                    queue.push_back(e.target);
                } else if (there.distance == here.distance + 1 && there.weight != weight) {
                    throw InvariantViolation("quantum Bruhat graph: shortest paths " + weyl_->format(from) + " => " +
                                             weyl_->format(e.target) + " carry different weights");
                }
            }
        }
        for (const auto& entry : out)
            if (entry.distance < 0) throw InvariantViolation("quantum Bruhat graph is not strongly connected");
        tables_[from.id()] = std::move(out);
    });
    return tables_[from.id()];
}

QuantumBruhatGraph::DistanceWeight QuantumBruhatGraph::distance_weight(WeylElement from, WeylElement to) const {
    return table(from).at(to.id());
}

Coweight QuantumBruhatGraph::weight_in_lattice(const CorootVector& weight) const {
    return weyl_->datum().coroot_combination(weight);
}

QuantumBruhatGraph::CoxeterPath QuantumBruhatGraph::coxeter_path(WeylElement v, const std::vector<int>& word) const {
    const RootDatum& d = weyl_->datum();
    IndexSet seen = 0;
    for (int letter : word) {
        if (letter < 0 || letter >= d.rank()) throw std::invalid_argument("coxeter_path: letter out of range");
        IndexSet orbit = d.sigma_closure(1U << letter);
        if (seen & orbit) throw std::invalid_argument("coxeter_path: word is not a partial sigma-Coxeter word");
        seen |= orbit;
    }
    CoxeterPath out{{v}, CorootVector(d.rank(), 0)};
    WeylElement cur = v;
    for (int letter : word) {
        WeylElement next = weyl_->mul_simple(cur, letter);
        if (weyl_->length(next) < weyl_->length(cur)) out.weight[letter] += 1;
        out.vertices.push_back(next);
        cur = next;
    }
    auto shortest = distance_weight(v, cur);
    if (shortest.distance != static_cast<int>(word.size()) || shortest.weight != out.weight)
        throw InvariantViolation("coxeter_path is not a shortest path in the quantum Bruhat graph");
    return out;
}

void QuantumBruhatGraph::build_all() const {
    for (std::size_t id = 0; id < weyl_->order(); ++id) table(weyl_->element(id));
}

std::string QuantumBruhatGraph::to_dot() const {
    const RootDatum& d = weyl_->datum();
    std::ostringstream out;
    out << "digraph qbg {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t id = 0; id < weyl_->order(); ++id)
        out << "  n" << id << " [label=\"" << weyl_->format(weyl_->element(id)) << "\"];\n";
    for (std::size_t id = 0; id < weyl_->order(); ++id) {
        for (const auto& e : edges_[id]) {
            std::ostringstream label;
            label << "[";
            const auto& c = d.root(e.root).coeffs;
            for (std::size_t i = 0; i < c.size(); ++i) label << (i ? "," : "") << c[i];
            label << "]";
            out << "  n" << id << " -> n" << e.target.id() << " [label=\"" << label.str() << "\""
                << (e.quantum ? ", style=dashed" : "") << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace adlv
