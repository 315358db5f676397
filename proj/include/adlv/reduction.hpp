#pragma once

#include "adlv/bg_invariants.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace adlv {

// Integer polynomial in q, coefficients lowest degree first.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::int64_t> coeffs);
    static Polynomial constant(std::int64_t c) { return Polynomial({c}); }
    static Polynomial q() { return Polynomial({0, 1}); }
    static Polynomial q_minus_one() { return Polynomial({-1, 1}); }
    // q^a (q - 1)^b
    static Polynomial monomial(int q_power, int q_minus_one_power);

    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t evaluate(std::int64_t q) const;
    // Coefficients in the basis (q - 1)^k, lowest first.
    std::vector<std::int64_t> in_q_minus_one_basis() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    auto operator<=>(const Polynomial&) const = default;

    std::string format() const;

  private:
    void trim();
    std::vector<std::int64_t> coeffs_;
};

// One step inside a length-preserving sigma-conjugation chain.
struct ConjugationStep {
    enum class Kind { Simple, Omega } kind = Kind::Simple;
    int index = 0;  // affine simple index, or index into the omega generator list
};

// Canonical name for a sigma-conjugacy class of the extended affine Weyl group.
struct ClassKey {
    BGClass invariants;
    AffineElement representative;  // lex-least minimal-length element found
    auto operator<=>(const ClassKey&) const = default;
};

struct TreePolicy {
    enum class Kind { Deterministic, Seeded } kind = Kind::Deterministic;
    std::uint64_t seed = 0;
    static TreePolicy deterministic() { return {}; }
    static TreePolicy seeded(std::uint64_t s) { return {Kind::Seeded, s}; }
};

struct TreeNode {
    AffineElement element;
    AffineElement witness;  // the element of the length-preserving class where the reduction happens
    std::vector<ConjugationStep> witness_path;
    int simple = -1;      // affine simple index a, -1 at leaves
    int child_one = -1;   // r_a x' (type I)
    int child_two = -1;   // r_a x' r_{sigma a} (type II)
    int parent = -1;
    int depth = 0;
};

struct ReductionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    std::vector<int> leaves() const;
};

struct TreePath {
    int leaf = 0;
    int type_one = 0;   // l_I
    int type_two = 0;   // l_II
};

struct PathStatistic {
    AffineElement endpoint;
    int type_one = 0;
    int type_two = 0;
    std::int64_t endpoint_length = 0;
    std::int64_t dimension = 0;  // l_I + l_II + l(end) - <nu, 2 rho>
};

struct MinimalDescent {
    AffineElement minimum;
    std::vector<ConjugationStep> path;  // length-preserving steps and down-2 steps interleaved
    std::vector<bool> is_drop;
};

class ReductionEngine {
  public:
    static constexpr int kDefaultSlack = 4;
    static constexpr std::size_t kDefaultBudget = 400000;

    explicit ReductionEngine(std::shared_ptr<const BGInvariants> invariants, int slack = kDefaultSlack);

    const BGInvariants& invariants() const { return *invariants_; }
    const AffineWeylGroup& affine() const { return invariants_->affine(); }
    const std::vector<AffineElement>& omega_generators() const { return omega_; }
    int slack() const { return slack_; }

    AffineElement apply(const AffineElement& x, const ConjugationStep& step) const;

    // Length-preserving sigma-conjugation class of x in breadth-first order.
    struct Orbit {
        std::vector<AffineElement> members;
        std::vector<int> parent;
        std::vector<ConjugationStep> via;
        // (member index, affine simple index) with l(r_a y r_{sigma a}) = l(y) - 2, in BFS order
        std::vector<std::pair<int, int>> drops;
        std::vector<ConjugationStep> path_to(int member) const;
    };
    Orbit orbit(const AffineElement& x) const;
    bool is_minimal(const AffineElement& x) const;
    MinimalDescent descend_to_minimal(const AffineElement& x) const;

    ReductionTree build_tree(const AffineElement& x, TreePolicy policy = TreePolicy::deterministic()) const;
    std::vector<TreePath> paths(const ReductionTree& tree) const;

    std::map<ClassKey, Polynomial> class_polynomials(const AffineElement& x) const;
    std::map<ClassKey, Polynomial> class_polynomials(const ReductionTree& tree) const;

    ClassKey class_key(const AffineElement& x) const;
    bool same_class(const AffineElement& x, const AffineElement& y) const;

    std::map<BGClass, std::vector<PathStatistic>> bgx_from_tree(const ReductionTree& tree) const;
    std::map<BGClass, std::vector<PathStatistic>> bgx(const AffineElement& x) const;

    std::string tree_dot(const ReductionTree& tree) const;
    nlohmann::json tree_json(const ReductionTree& tree) const;
    nlohmann::json key_json(const ClassKey& key) const;

  private:
    // Minimal-length elements in the bounded conjugation closure of a minimal element.
    std::vector<AffineElement> closure_minima(const AffineElement& minimum, int slack) const;

    std::shared_ptr<const BGInvariants> invariants_;
    int slack_;
    std::vector<AffineElement> omega_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<AffineElement, bool, AffineElementHash> minimal_memo_;
    mutable std::unordered_map<AffineElement, ClassKey, AffineElementHash> key_memo_;
    mutable std::unordered_map<AffineElement, std::map<ClassKey, Polynomial>, AffineElementHash> poly_memo_;
};

// Slack from ADLV_SLACK if set, the default otherwise.
int slack_from_environment();

}  // namespace adlv
