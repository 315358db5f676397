#pragma once

#include "adlv/qbg.hpp"
#include "adlv/reduction.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace adlv {

struct PositiveCoxeterPair {
    AffineElement x;
    WeylElement v;
    IndexSet J = 0;  // sigma-support of c
    WeylElement c;   // v^{-1} sigma(w v)
    std::vector<int> c_word;  // lex-least reduced word of c
};

struct PairTransport {
    MoveType type = MoveType::LengthPreserving;
    int simple = 0;
    // length-preserving: one pair for r_a x r_{sigma a};
    // down-2: the pairs for r_a x and for r_a x r_{sigma a}, in that order
    std::vector<PositiveCoxeterPair> pairs;
    int deleted_position = -1;  // down-2: position in c_word of the dropped letter
    bool by_construction = true;  // false if the witness came from a search over LP
};

struct ClassRow {
    BGClass b;
    Coweight lambda;  // lambda(b)
    std::vector<Integer> membership;  // orbit coefficients of lambda_max - lambda(b) over J
    int type_one = 0;
    int type_two = 0;           // <lambda_max - lambda(b), rho>
    int type_two_by_length = 0;  // (l(x) - #(J/sigma) - <nu,2rho> + defect) / 2
    std::int64_t dimension = 0;
    std::int64_t defect = 0;
    IndexSet J_b = 0;  // J cap I(nu(b))
    IndexSet I_one = 0;
    std::int64_t endpoint_length = 0;
};

struct BgxReport {
    PositiveCoxeterPair pair;
    std::vector<PositiveCoxeterPair> all_pairs;
    BGClass b_min;
    BGClass b_max;
    Coweight lambda_max;  // v^{-1} mu - wt(v => sigma(w v))
    std::vector<ClassRow> rows;  // sorted by class
    std::vector<BGClass> interval;  // all b with b_min <= b <= b_max
    bool interval_matches = false;  // membership set equals the interval
    bool tree_matches = false;      // one tree path per class with matching statistics
    std::vector<std::string> mismatches;
};

struct NewtonExtremes {
    BGClass minimum;
    RationalVector minimum_by_projection;  // pi_J(v^{-1} mu)
    Coweight lambda_max;                   // via the pair's v
    Coweight lambda_max_over_lp;           // max over all of LP(x)
    WeylElement lp_argmax;
};

struct PointSpace {
    std::vector<int> c_word;
    IndexSet J_prime = 0;
    WeylElement truncation;
    std::vector<Coweight> relations;  // generators of the relation lattice
    QuotientPresentation quotient;
};

struct EndpointCertificate {
    BGClass b;
    IndexSet J_b = 0;
    WeylElement truncation;  // c^{(J(b))}
    Coweight lambda;
    AffineElement element;  // truncation * eps^lambda
    ClassKey key;
};

struct Characterization {
    bool condition_one = false;  // w sigma-conjugate to a partial sigma-Coxeter element
    bool condition_two = false;
    std::optional<WeylElement> witness;
    std::int64_t path_dimension = 0;  // of the path with only type II edges
    bool result() const { return condition_one && condition_two; }
};

struct MinimalLengthComparison {
    bool finite_side = false;  // w sigma-conjugate to partial sigma-Coxeter
    bool pct_side = false;     // positive Coxeter pairs exist
    bool agree() const { return finite_side == pct_side; }
};

struct LargeSupportResult {
    bool hypothesis = false;
    std::optional<bool> minimal;  // set when the hypothesis holds
    bool consistent() const { return !hypothesis || minimal.value_or(false); }
};

// Affine Dynkin diagram of the Levi of a subset J: simple roots of J and
// one affine node per connected component of J.
struct LeviDiagram {
    IndexSet J = 0;
    std::vector<AffineRoot> nodes;
    std::vector<int> labels;  // 1-based finite labels, 0 / -c for affine nodes
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = <node_j, node_i^vee>
};

struct VerySpecialData {
    AffineElement tau;
    std::vector<int> permutation;  // node action of Ad(tau) o sigma
    std::vector<int> K;            // node indices of the chosen very special subset
    std::vector<std::vector<int>> all_very_special;
    int longest_length = 0;
    std::optional<std::vector<int>> coxeter_word;  // c_K as node indices, when the endpoint decomposes
};

class PctAnalyzer {
  public:
    PctAnalyzer(std::shared_ptr<const ReductionEngine> engine, std::shared_ptr<const QuantumBruhatGraph> qbg);

    const ReductionEngine& engine() const { return *engine_; }
    const BGInvariants& invariants() const { return engine_->invariants(); }
    const AffineWeylGroup& affine() const { return engine_->affine(); }
    const WeylGroup& weyl() const { return affine().weyl(); }
    const RootDatum& datum() const { return affine().datum(); }
    const QuantumBruhatGraph& qbg() const { return *qbg_; }

    std::optional<PositiveCoxeterPair> make_pair(const AffineElement& x, WeylElement v) const;
    std::vector<PositiveCoxeterPair> positive_coxeter_pairs(const AffineElement& x) const;
    bool has_finite_coxeter_part(const AffineElement& x) const;

    PairTransport transport(const PositiveCoxeterPair& pair, int a) const;

    Coweight lambda_max(const PositiveCoxeterPair& pair) const;
    NewtonExtremes min_and_generic_newton(const PositiveCoxeterPair& pair) const;
    // max over v in LP(x) of v^{-1} mu - wt(v => sigma(w v)) in the order of X_Gamma
    std::pair<Coweight, WeylElement> lambda_max_over_lp(const AffineElement& x) const;

    // Coefficients over sigma-orbits in J of lambda2 - lambda in X_Gamma, if non-negative.
    std::optional<std::vector<Integer>> cone_membership(const Coweight& lambda, const Coweight& lambda2, IndexSet J) const;

    BgxReport bgx_report(const AffineElement& x) const;
    BgxReport bgx_report(const PositiveCoxeterPair& pair) const;

    WeylElement j_truncation(const std::vector<int>& c_word, IndexSet J_prime) const;
    PointSpace point_space(const std::vector<int>& c_word, IndexSet J_prime, bool literal_tail = false) const;
    // Both presentations have the same relation lattice.
    bool point_space_rules_agree(const std::vector<int>& c_word, IndexSet J_prime) const;
    std::vector<Integer> j_point(const PositiveCoxeterPair& pair) const;
    std::vector<Integer> j_point_image(const PositiveCoxeterPair& pair, IndexSet J_prime) const;

    EndpointCertificate endpoint_class(const PositiveCoxeterPair& pair, const BGClass& b) const;

    Characterization characterize(const AffineElement& x) const;
    MinimalLengthComparison min_length_pct(const AffineElement& x) const;
    LargeSupportResult large_support_check(const PositiveCoxeterPair& pair) const;

    // sigma-fixed n in W_I with n J1 n^{-1} = J2 as sets of simple roots
    std::optional<WeylElement> support_conjugator(IndexSet J1, IndexSet J2, IndexSet I) const;

    LeviDiagram levi_diagram(IndexSet J) const;
    std::vector<int> node_permutation(const LeviDiagram& diagram, const AffineElement& tau) const;
    // All (Ad(tau) o sigma)-stable spherical subsets of maximal longest-element length.
    std::vector<std::vector<int>> very_special_subsets(const LeviDiagram& diagram, const AffineElement& tau,
                                                       int* longest_length = nullptr) const;
    VerySpecialData very_special_data(const PositiveCoxeterPair& pair, const BGClass& b) const;

    nlohmann::json pair_json(const PositiveCoxeterPair& pair) const;
    nlohmann::json report_json(const BgxReport& report) const;
    nlohmann::json certificate_json(const EndpointCertificate& cert) const;

  private:
    std::shared_ptr<const ReductionEngine> engine_;
    std::shared_ptr<const QuantumBruhatGraph> qbg_;
};

// Number of positive roots of a finite-type Cartan matrix.
int count_positive_roots(const std::vector<std::vector<int>>& cartan);

}  // namespace adlv
