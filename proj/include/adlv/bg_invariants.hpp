#pragma once

#include "adlv/affine_weyl.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <shared_mutex>

namespace adlv {

// A sigma-conjugacy class of G(L), determined by its Kottwitz and Newton points.
struct BGClass {
    std::vector<Integer> kappa;  // residue in pi_1(G)_Gamma
    RationalVector nu;           // dominant, sigma-invariant
    auto operator<=>(const BGClass&) const = default;
};

struct LambdaInvariant {
    Coweight representative;      // a lift to X
    std::vector<Integer> residue;  // canonical residue in X_Gamma
    RationalVector average;        // avg_sigma of the representative
};

struct NewtonData {
    RationalVector raw;  // (1/N) sum_{k=1}^N (sigma w)^k mu
    RationalVector dominant;
    int order = 1;  // N: order of sigma o w on the lattice
};

class BGInvariants {
  public:
    explicit BGInvariants(std::shared_ptr<const AffineWeylGroup> affine);

    const AffineWeylGroup& affine() const { return *affine_; }
    const RootDatum& datum() const { return affine_->datum(); }

    NewtonData newton_data(const AffineElement& x) const;
    RationalVector newton(const AffineElement& x) const { return newton_data(x).dominant; }
    // Translation part of (x sigma)^N, divided by N, made dominant.
    RationalVector newton_by_power(const AffineElement& x) const;
    std::vector<Integer> kappa(const Coweight& mu) const;
    std::vector<Integer> kappa(const AffineElement& x) const { return kappa(x.mu); }
    BGClass class_of(const AffineElement& x) const;
    BGClass class_of_lambda(const Coweight& lambda) const;  // [eps^lambda] for integral lambda

    // lambda <= lambda2 in X_Gamma: the difference is a non-negative
    // integral combination of simple coroots modulo (1 - sigma)X.
    bool gamma_leq(const Coweight& lambda, const Coweight& lambda2) const;
    bool gamma_equal(const Coweight& lambda, const Coweight& lambda2) const;

    LambdaInvariant lambda(const BGClass& b) const;
    std::int64_t defect(const BGClass& b) const;
    bool leq(const BGClass& b1, const BGClass& b2) const;
    IndexSet I_nu(const BGClass& b) const { return datum().vanishing_set(b.nu); }
    IndexSet I_one(const BGClass& b) const;

    std::int64_t virtual_dimension(const AffineElement& x, const BGClass& b) const;

    nlohmann::json to_json(const BGClass& b) const;
    BGClass from_json(const nlohmann::json& j) const;
    std::string format(const BGClass& b) const;

  private:
    std::shared_ptr<const AffineWeylGroup> affine_;
    mutable std::shared_mutex lambda_mutex_;
    mutable std::map<BGClass, LambdaInvariant> lambda_memo_;
};

nlohmann::json rational_vector_json(const RationalVector& v);
RationalVector rational_vector_from_json(const nlohmann::json& j);
nlohmann::json integer_vector_json(const std::vector<Integer>& v);

}  // namespace adlv
