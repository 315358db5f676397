#pragma once

#include "adlv/finite_weyl.hpp"

#include <json.hpp>

#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

namespace adlv {

// x = w * eps^mu
struct AffineElement {
    WeylElement w;
    Coweight mu;
    auto operator<=>(const AffineElement&) const = default;
};

struct AffineElementHash {
    std::size_t operator()(const AffineElement& x) const noexcept;
};

using AffineSet = std::unordered_set<AffineElement, AffineElementHash>;

enum class MoveType { LengthPreserving, Down2, Up2 };

struct SigmaMove {
    AffineElement result;     // r_a x r_{sigma a}
    AffineElement left_only;  // r_a x
    MoveType type = MoveType::LengthPreserving;
};

enum class LpCase { Positive, Negative, Zero };

struct LpTransport {
    LpCase kind = LpCase::Zero;
    std::int64_t functional = 0;  // l(x, cl(a))
    bool length_increases = false;
    std::vector<WeylElement> lp_x, lp_xr;
    bool containment_holds = false;  // the inclusion/equality predicted for this case
    bool pointwise_holds = false;    // per-element statements for v in LP(x)
};

class AffineWeylGroup {
  public:
    explicit AffineWeylGroup(std::shared_ptr<const WeylGroup> weyl);

    const WeylGroup& weyl() const { return *weyl_; }
    std::shared_ptr<const WeylGroup> weyl_ptr() const { return weyl_; }
    const RootDatum& datum() const { return weyl_->datum(); }

    AffineElement identity() const;
    AffineElement translation(Coweight mu) const;
    AffineElement finite(WeylElement w) const;
    AffineElement mul(const AffineElement& a, const AffineElement& b) const;
    AffineElement inverse(const AffineElement& a) const;
    AffineElement power(const AffineElement& a, int n) const;

    int num_simple() const { return datum().num_affine_simple(); }
    const AffineElement& simple_reflection(int a) const { return simple_.at(a); }
    AffineElement mul_simple(const AffineElement& x, int a) const { return mul(x, simple_.at(a)); }
    AffineElement simple_mul(int a, const AffineElement& x) const { return mul(simple_.at(a), x); }

    AffineElement sigma(const AffineElement& x) const;
    AffineElement sigma_inverse(const AffineElement& x) const;
    // y^{-1} x sigma(y)
    AffineElement sigma_conjugate(const AffineElement& x, const AffineElement& y) const;
    AffineRoot act(const AffineElement& x, const AffineRoot& a) const;

    std::int64_t length_functional(const AffineElement& x, int root) const;
    std::int64_t length(const AffineElement& x) const;

    bool is_length_positive(const AffineElement& x, WeylElement v) const;
    std::vector<WeylElement> lp_set(const AffineElement& x) const;  // sorted by (length, id)
    LpTransport lp_transport(const AffineElement& x, int a) const;
    SigmaMove simple_sigma_conjugate(const AffineElement& x, int a) const;

    bool is_alcove_element(const AffineElement& x, IndexSet J, WeylElement u, bool normalized = false) const;

    // minimal v with v^{-1} mu dominant
    WeylElement dominance_witness(const Coweight& mu) const;
    WeylElement eta_sigma(const AffineElement& x) const;

    // Length-zero elements with mu inside [-box, box]^dim.
    std::vector<AffineElement> omega_elements(std::int64_t box = 1) const;
    std::vector<AffineElement> omega_elements(std::int64_t lo, std::int64_t hi) const;
    // The length-zero element in x W_af.
    AffineElement omega_part(const AffineElement& x) const;

    // x = tau * r_{a_1} ... r_{a_n} with tau of length zero and n = l(x)
    struct AffineWord {
        AffineElement tau;
        std::vector<int> word;
    };
    AffineWord affine_word(const AffineElement& x) const;
    AffineElement from_affine_word(const AffineElement& tau, const std::vector<int>& word) const;

    // All tau * u with tau in taus and u in W_af, l(u) <= max_length; sorted by (length, element).
    std::vector<AffineElement> enumerate(const std::vector<AffineElement>& taus, int max_length) const;

    nlohmann::json to_json(const AffineElement& x) const;
    AffineElement from_json(const nlohmann::json& j) const;
    AffineElement parse(const std::string& text) const;
    std::string format(const AffineElement& x) const;

  private:
    std::shared_ptr<const WeylGroup> weyl_;
    std::vector<AffineElement> simple_;
};

std::string to_string(MoveType t);
std::string to_string(LpCase c);

}  // namespace adlv
