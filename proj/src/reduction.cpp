#include "adlv/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>

namespace adlv {

// ---- Polynomial ----

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int q_power, int q_minus_one_power) {
    Polynomial out = constant(1);
    for (int k = 0; k < q_power; ++k) out = out * q();
    for (int k = 0; k < q_minus_one_power; ++k) out = out * q_minus_one();
    return out;
}

std::int64_t Polynomial::evaluate(std::int64_t q) const {
    std::int64_t value = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * q + *it;
    return value;
}

std::vector<std::int64_t> Polynomial::in_q_minus_one_basis() const {
    // substitute q = t + 1
    std::vector<std::int64_t> out(coeffs_.size(), 0);
    std::vector<std::int64_t> power{1};  // (t + 1)^k
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        for (std::size_t j = 0; j < power.size(); ++j) out[j] += coeffs_[k] * power[j];
        std::vector<std::int64_t> next(power.size() + 1, 0);
        for (std::size_t j = 0; j < power.size(); ++j) {
            next[j] += power[j];
            next[j + 1] += power[j];
        }
        power = std::move(next);
    }
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<std::int64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) out[k] += o.coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<std::int64_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t a = 0; a < coeffs_.size(); ++a)
        for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
    return Polynomial(std::move(out));
}

std::string Polynomial::format() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        std::int64_t c = coeffs_[k];
        if (c == 0) continue;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::int64_t a = c < 0 ? -c : c;
        if (k == 0 || a != 1) out << a;
        if (k >= 1) out << "q";
        if (k >= 2) out << "^" << k;
        first = false;
    }
    return out.str();
}

// ---- trees ----

std::vector<int> ReductionTree::leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].simple < 0) out.push_back(static_cast<int>(i));
    return out;
}

int slack_from_environment() {
    if (const char* env = std::getenv("ADLV_SLACK")) {
        try {
            int value = std::stoi(env);
            if (value >= 0) return value;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(std::string("ADLV_SLACK must be a non-negative integer, got '") + env + "'");
    }
    return ReductionEngine::kDefaultSlack;
}

ReductionEngine::ReductionEngine(std::shared_ptr<const BGInvariants> invariants, int slack)
    : invariants_(std::move(invariants)), slack_(slack) {
    for (auto& tau : affine().omega_elements(1))
        if (tau != affine().identity()) omega_.push_back(tau);
}

AffineElement ReductionEngine::apply(const AffineElement& x, const ConjugationStep& step) const {
    const AffineWeylGroup& A = affine();
    if (step.kind == ConjugationStep::Kind::Simple) return A.simple_sigma_conjugate(x, step.index).result;
    return A.sigma_conjugate(x, omega_.at(step.index));
}

std::vector<ConjugationStep> ReductionEngine::Orbit::path_to(int member) const {
    std::vector<ConjugationStep> out;
    for (int cur = member; parent[cur] >= 0; cur = parent[cur]) out.push_back(via[cur]);
    std::reverse(out.begin(), out.end());
    return out;
}

ReductionEngine::Orbit ReductionEngine::orbit(const AffineElement& x) const {
    const AffineWeylGroup& A = affine();
    const std::int64_t len = A.length(x);
    Orbit out;
    AffineSet seen{x};
    out.members.push_back(x);
    out.parent.push_back(-1);
    out.via.push_back({});
    for (std::size_t cur = 0; cur < out.members.size(); ++cur) {
        const AffineElement y = out.members[cur];
        for (int a = 0; a < A.num_simple(); ++a) {
            auto move = A.simple_sigma_conjugate(y, a);
            if (move.type == MoveType::Down2) {
                out.drops.emplace_back(static_cast<int>(cur), a);
            } else if (move.type == MoveType::LengthPreserving && seen.insert(move.result).second) {
                out.members.push_back(move.result);
                out.parent.push_back(static_cast<int>(cur));
                out.via.push_back({ConjugationStep::Kind::Simple, a});
            }
        }
        for (std::size_t t = 0; t < omega_.size(); ++t) {
            AffineElement z = A.sigma_conjugate(y, omega_[t]);
            if (A.length(z) != len) throw InvariantViolation("conjugation by a length-zero element changed the length");
            if (seen.insert(z).second) {
                out.members.push_back(std::move(z));
                out.parent.push_back(static_cast<int>(cur));
                out.via.push_back({ConjugationStep::Kind::Omega, static_cast<int>(t)});
            }
        }
    }
    return out;
}

bool ReductionEngine::is_minimal(const AffineElement& x) const {
    {
        std::shared_lock lock(mutex_);
        auto it = minimal_memo_.find(x);
        if (it != minimal_memo_.end()) return it->second;
    }
    Orbit o = orbit(x);
    const bool minimal = o.drops.empty();
    std::unique_lock lock(mutex_);
    for (const auto& m : o.members) minimal_memo_.emplace(m, minimal);
    return minimal;
}

MinimalDescent ReductionEngine::descend_to_minimal(const AffineElement& x) const {
    MinimalDescent out{x, {}, {}};
    while (true) {
        Orbit o = orbit(out.minimum);
        if (o.drops.empty()) break;
        auto [member, a] = o.drops.front();
        for (const auto& step : o.path_to(member)) {
            out.path.push_back(step);
            out.is_drop.push_back(false);
        }
        out.path.push_back({ConjugationStep::Kind::Simple, a});
        out.is_drop.push_back(true);
        out.minimum = affine().simple_sigma_conjugate(o.members[member], a).result;
    }
    return out;
}

ReductionTree ReductionEngine::build_tree(const AffineElement& x, TreePolicy policy) const {
    ReductionTree tree;
    std::mt19937_64 rng(policy.seed);
    std::function<int(const AffineElement&, int, int)> grow = [&](const AffineElement& y, int parent, int depth) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({y, y, {}, -1, -1, -1, parent, depth});
        Orbit o = orbit(y);
        if (o.drops.empty()) return index;
        std::size_t choice = 0;
        if (policy.kind == TreePolicy::Kind::Seeded) choice = std::uniform_int_distribution<std::size_t>(0, o.drops.size() - 1)(rng);
        auto [member, a] = o.drops[choice];
        const AffineElement& witness = o.members[member];
        auto move = affine().simple_sigma_conjugate(witness, a);
        tree.nodes[index].witness = witness;
        tree.nodes[index].witness_path = o.path_to(member);
        tree.nodes[index].simple = a;
        int one = grow(move.left_only, index, depth + 1);
        int two = grow(move.result, index, depth + 1);
        tree.nodes[index].child_one = one;
        tree.nodes[index].child_two = two;
        return index;
    };
    grow(x, -1, 0);
    return tree;
}

std::vector<TreePath> ReductionEngine::paths(const ReductionTree& tree) const {
    std::vector<TreePath> out;
    for (int leaf : tree.leaves()) {
        TreePath p{leaf, 0, 0};
        for (int cur = leaf; tree.nodes[cur].parent >= 0; cur = tree.nodes[cur].parent) {
            const auto& parent = tree.nodes[tree.nodes[cur].parent];
            if (parent.child_one == cur) ++p.type_one;
            else ++p.type_two;
        }
        out.push_back(p);
    }
    return out;
}

std::map<ClassKey, Polynomial> ReductionEngine::class_polynomials(const ReductionTree& tree) const {
    std::map<ClassKey, Polynomial> out;
    for (const auto& p : paths(tree))
        out[class_key(tree.nodes[p.leaf].element)] += Polynomial::monomial(p.type_two, p.type_one);
    return out;
}

std::map<ClassKey, Polynomial> ReductionEngine::class_polynomials(const AffineElement& x) const {
    {
        std::shared_lock lock(mutex_);
        auto it = poly_memo_.find(x);
        if (it != poly_memo_.end()) return it->second;
    }
    std::map<ClassKey, Polynomial> out;
    Orbit o = orbit(x);
    if (o.drops.empty()) {
        out[class_key(x)] = Polynomial::constant(1);
    } else {
        auto [member, a] = o.drops.front();
        auto move = affine().simple_sigma_conjugate(o.members[member], a);
        for (const auto& [key, f] : class_polynomials(move.left_only)) out[key] += f * Polynomial::q_minus_one();
        for (const auto& [key, f] : class_polynomials(move.result)) out[key] += f * Polynomial::q();
    }
    std::unique_lock lock(mutex_);
    poly_memo_.emplace(x, out);
    return out;
}

std::vector<AffineElement> ReductionEngine::closure_minima(const AffineElement& minimum, int slack) const {
    const AffineWeylGroup& A = affine();
    const std::int64_t base = A.length(minimum);
    AffineSet seen{minimum};
    std::deque<AffineElement> queue{minimum};
    std::vector<AffineElement> minima;
    while (!queue.empty()) {
        AffineElement y = queue.front();
        queue.pop_front();
        const std::int64_t len = A.length(y);
        if (len < base) throw InvariantViolation("class closure met an element shorter than the claimed minimum");
        if (len == base) minima.push_back(y);
        auto visit = [&](AffineElement z) {
            if (A.length(z) > base + slack) return;
            if (!seen.insert(z).second) return;
            if (seen.size() > kDefaultBudget)
                throw ComputationError("class closure budget exceeded with slack " + std::to_string(slack));
            queue.push_back(std::move(z));
        };
        for (int a = 0; a < A.num_simple(); ++a) visit(A.simple_sigma_conjugate(y, a).result);
        for (const auto& tau : omega_) visit(A.sigma_conjugate(y, tau));
    }
    std::sort(minima.begin(), minima.end());
    return minima;
}

ClassKey ReductionEngine::class_key(const AffineElement& x) const {
    {
        std::shared_lock lock(mutex_);
        auto it = key_memo_.find(x);
        if (it != key_memo_.end()) return it->second;
    }
    const AffineElement minimum = descend_to_minimal(x).minimum;
    {
        std::shared_lock lock(mutex_);
        auto it = key_memo_.find(minimum);
        if (it != key_memo_.end()) {
            ClassKey key = it->second;
            lock.unlock();
            std::unique_lock write(mutex_);
            key_memo_.emplace(x, key);
            return key;
        }
    }
    auto minima = closure_minima(minimum, slack_);
    ClassKey key{invariants_->class_of(minimum), minima.front()};
    std::unique_lock lock(mutex_);
    // keep an earlier key if another thread already named this class
    if (auto it = key_memo_.find(minimum); it != key_memo_.end()) key = it->second;
    for (const auto& m : minima) key_memo_.emplace(m, key);
    key_memo_.emplace(x, key);
    return key;
}

bool ReductionEngine::same_class(const AffineElement& x, const AffineElement& y) const {
    const ClassKey kx = class_key(x), ky = class_key(y);
    if (kx == ky) return true;
    if (kx.invariants != ky.invariants) return false;
    for (int extra = 4; extra <= 8; extra += 4) {
        auto minima = closure_minima(kx.representative, slack_ + extra);
        if (std::binary_search(minima.begin(), minima.end(), ky.representative)) return true;
    }
    return false;
}

std::map<BGClass, std::vector<PathStatistic>> ReductionEngine::bgx_from_tree(const ReductionTree& tree) const {
    std::map<BGClass, std::vector<PathStatistic>> out;
    const AffineWeylGroup& A = affine();
    for (const auto& p : paths(tree)) {
        const AffineElement& end = tree.nodes[p.leaf].element;
        BGClass b = invariants_->class_of(end);
        PathStatistic s{end, p.type_one, p.type_two, A.length(end), 0};
        Rational dim = Rational(p.type_one + p.type_two + s.endpoint_length) - invariants_->datum().pairing_2rho(b.nu);
        if (boost::multiprecision::denominator(dim) != 1)
            throw InvariantViolation("path dimension is not an integer");
        s.dimension = static_cast<std::int64_t>(boost::multiprecision::numerator(dim));
        out[b].push_back(std::move(s));
    }
    return out;
}

std::map<BGClass, std::vector<PathStatistic>> ReductionEngine::bgx(const AffineElement& x) const {
    return bgx_from_tree(build_tree(x));
}

std::string ReductionEngine::tree_dot(const ReductionTree& tree) const {
    const AffineWeylGroup& A = affine();
    std::ostringstream out;
    out << "digraph reduction {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        std::string label = A.format(tree.nodes[i].element);
        std::string escaped;
        for (char ch : label) {
            if (ch == '"') escaped += '\\';
            escaped += ch;
        }
        out << "  n" << i << " [label=\"" << escaped << "\\nlength " << A.length(tree.nodes[i].element) << "\""
            << (tree.nodes[i].simple < 0 ? ", peripheries=2" : "") << "];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        if (node.simple < 0) continue;
        const int label = A.datum().affine_label(node.simple);
        out << "  n" << i << " -> n" << node.child_one << " [label=\"I a=" << label << "\"];\n";
        out << "  n" << i << " -> n" << node.child_two << " [label=\"II a=" << label << "\", style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::json ReductionEngine::key_json(const ClassKey& key) const {
    nlohmann::json j = invariants_->to_json(key.invariants);
    j["representative"] = affine().to_json(key.representative);
    return j;
}

nlohmann::json ReductionEngine::tree_json(const ReductionTree& tree) const {
    const AffineWeylGroup& A = affine();
    nlohmann::json leaves = nlohmann::json::array();
    for (const auto& p : paths(tree)) {
        const AffineElement& end = tree.nodes[p.leaf].element;
        leaves.push_back({{"element", A.to_json(end)},
                          {"length", A.length(end)},
                          {"type_I", p.type_one},
                          {"type_II", p.type_two},
                          {"class", key_json(class_key(end))}});
    }
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& [key, f] : class_polynomials(tree))
        polys.push_back({{"class", key_json(key)}, {"coefficients", f.coeffs()}, {"polynomial", f.format()}});
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : tree.nodes) {
        nlohmann::json n = {{"element", A.to_json(node.element)}, {"length", A.length(node.element)}};
        if (node.simple >= 0) {
            n["witness"] = A.to_json(node.witness);
            n["simple"] = A.datum().affine_label(node.simple);
            n["children"] = {node.child_one, node.child_two};
        }
        nodes.push_back(std::move(n));
    }
    return {{"root", A.to_json(tree.nodes.front().element)}, {"nodes", nodes}, {"leaves", leaves}, {"polynomials", polys}};
}

}  // namespace adlv
