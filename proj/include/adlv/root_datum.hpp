#pragma once

#include "adlv/exact_lattice.hpp"
#include "adlv/types.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adlv {

using Matrix64 = std::vector<std::vector<std::int64_t>>;

struct Root {
    std::vector<int> coeffs;         // in the simple roots
    std::vector<int> coroot_coeffs;  // in the simple coroots
    Coweight functional;             // root as a linear form on the lattice
    Coweight coroot;                 // coroot in lattice coordinates
    int height = 0;
    bool positive = false;
};

// (classical root index, level): the affine function p -> <p, root> + level.
struct AffineRoot {
    int root = 0;
    std::int64_t level = 0;
    bool operator==(const AffineRoot&) const = default;
};

struct DatumConfig {
    std::string name;
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = <coroot_i, root_j>
    Matrix64 coroots;                      // rank x dim
    Matrix64 roots;                        // rank x dim
    std::vector<int> sigma_perm;           // 0-based images of simple indices
    std::optional<Matrix64> sigma_matrix;  // dim x dim acting on column vectors
};

// Reduced root datum on the lattice X = Z^dim together with a finite-order
// automorphism sigma permuting the simple roots.
class RootDatum {
  public:
    explicit RootDatum(DatumConfig config);

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    int dim() const { return dim_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }

    int num_roots() const { return static_cast<int>(roots_.size()); }
    int num_positive() const { return num_positive_; }
    const Root& root(int i) const { return roots_.at(i); }
    bool is_positive(int i) const { return i < num_positive_; }
    int negate(int i) const { return i < num_positive_ ? i + num_positive_ : i - num_positive_; }
    std::optional<int> find_root(const std::vector<int>& coeffs) const;
    // Index of the positive root in {alpha, -alpha}.
    int positive_part(int i) const { return i < num_positive_ ? i : i - num_positive_; }

    std::int64_t pairing(const Coweight& mu, int root) const;
    Rational pairing(const RationalVector& mu, int root) const;
    std::int64_t pairing_2rho(const Coweight& mu) const;
    Rational pairing_2rho(const RationalVector& mu) const;
    Rational pairing_rho(const RationalVector& mu) const { return pairing_2rho(mu) / 2; }

    Coweight simple_reflect(const Coweight& mu, int i) const;
    RationalVector simple_reflect(const RationalVector& mu, int i) const;
    Coweight coroot_combination(const std::vector<std::int64_t>& coeffs) const;

    // sigma
    int sigma_simple(int i) const { return sigma_perm_.at(i); }
    int sigma_inverse_simple(int i) const { return sigma_perm_inv_.at(i); }
    int sigma_root(int i) const { return sigma_root_.at(i); }
    int sigma_order() const { return sigma_order_; }
    bool sigma_is_identity() const { return sigma_order_ == 1; }
    const Matrix64& sigma_matrix() const { return sigma_matrix_; }
    Coweight sigma(const Coweight& mu) const;
    Coweight sigma_inverse(const Coweight& mu) const;
    RationalVector sigma(const RationalVector& mu) const;
    RationalVector avg_sigma(const RationalVector& mu) const;
    Coweight sigma_orbit_sum(const Coweight& mu) const;

    // subsets of simple indices
    IndexSet all_simple() const { return rank_ == 32 ? ~0U : ((1U << rank_) - 1U); }
    bool is_sigma_stable(IndexSet set) const;
    IndexSet sigma_closure(IndexSet set) const;
    int orbit_count(IndexSet set) const;
    std::vector<IndexSet> sigma_orbits() const;
    std::vector<IndexSet> sigma_stable_subsets() const;
    const std::vector<IndexSet>& components() const { return components_; }
    int highest_root(int component) const { return highest_roots_.at(component); }
    // sigma-connected components of a subset (unions of Dynkin components
    // permuted by sigma).
    std::vector<IndexSet> sigma_connected_components(IndexSet set) const;

    // affine roots: indices 0..rank-1 are (alpha_i, 0), rank+c is (-theta_c, 1)
    int num_affine_simple() const { return rank_ + static_cast<int>(components_.size()); }
    AffineRoot affine_simple(int a) const;
    int classical_part(int a) const { return affine_simple(a).root; }
    bool is_positive(const AffineRoot& a) const;
    int sigma_affine(int a) const { return sigma_affine_.at(a); }
    std::optional<int> find_affine_simple(const AffineRoot& a) const;
    // User-facing labels: 1..rank for finite nodes, 0 for the first affine
    // node and -c for the affine node of component c > 0.
    int affine_label(int a) const;
    int affine_index(int label) const;

    // projections and orders on the rational cocharacter space
    RationalVector pi_J(const RationalVector& lambda, IndexSet J) const;
    RationalVector conv(const RationalVector& lambda) const;
    std::optional<RationalVector> coroot_coordinates(const RationalVector& v) const;
    bool dominance_leq(const RationalVector& a, const RationalVector& b) const;
    bool integral_leq(const Coweight& a, const Coweight& b) const;
    bool is_dominant(const RationalVector& mu) const;
    bool is_dominant(const Coweight& mu) const;
    // (dominant representative, reduced word of minimal v with v * dom = mu)
    std::pair<RationalVector, std::vector<int>> dominant_rep(const RationalVector& mu) const;
    std::pair<Coweight, std::vector<int>> dominant_rep(const Coweight& mu) const;
    IndexSet vanishing_set(const RationalVector& nu) const;  // I(nu)

    // lattice quotients
    const QuotientPresentation& pi1() const { return pi1_; }                // X / ZPhi^v
    const QuotientPresentation& pi1_gamma() const { return pi1_gamma_; }    // (X / ZPhi^v)_Gamma
    const QuotientPresentation& coinvariants() const { return coinv_; }     // X_Gamma

    nlohmann::json to_json() const;

  private:
    void enumerate_roots();
    void build_sigma();
    void build_components();
    void build_quotients();

    std::string name_;
    int rank_ = 0;
    int dim_ = 0;
    std::vector<std::vector<int>> cartan_;
    Matrix64 simple_coroots_, simple_roots_;
    std::vector<Root> roots_;
    int num_positive_ = 0;
    std::map<std::vector<int>, int> root_index_;
    Coweight two_rho_;
    std::vector<int> sigma_perm_, sigma_perm_inv_, sigma_root_, sigma_affine_;
    Matrix64 sigma_matrix_, sigma_inverse_matrix_;
    int sigma_order_ = 1;
    std::vector<IndexSet> components_;
    std::vector<int> highest_roots_;
    std::vector<std::size_t> coroot_rows_;
    RationalMatrix coroot_solver_;
    QuotientPresentation pi1_, pi1_gamma_, coinv_;
};

std::vector<std::vector<int>> cartan_matrix_for_type(const std::string& type);

// JSON schema: {"name"?, "type" | "cartan", "lattice_basis"?, "coroots"?, "roots"?,
//               "sigma_perm"?, "sigma_matrix"?}. See README for details.
RootDatum parse_root_datum(const nlohmann::json& spec);
RootDatum load_root_datum(const std::string& path);

std::string format_index_set(IndexSet set, bool one_based = true);

}  // namespace adlv
