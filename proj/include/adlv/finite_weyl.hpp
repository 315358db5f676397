#pragma once

#include "adlv/root_datum.hpp"

#include <array>
#include <atomic>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace adlv {

// Handle to an element of a WeylGroup: its index in shortlex order.
class WeylElement {
  public:
    constexpr WeylElement() = default;
    constexpr explicit WeylElement(std::uint32_t id) : id_(id) {}
    constexpr std::uint32_t id() const { return id_; }
    constexpr bool is_identity() const { return id_ == 0; }
    auto operator<=>(const WeylElement&) const = default;

  private:
    std::uint32_t id_ = 0;
};

class WeylGroup {
  public:
    static constexpr std::size_t kMaxOrder = 60000;

    explicit WeylGroup(std::shared_ptr<const RootDatum> datum);

    const RootDatum& datum() const { return *datum_; }
    std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }
    std::size_t order() const { return length_.size(); }
    WeylElement identity() const { return WeylElement(0); }
    WeylElement simple(int i) const { return WeylElement(right_[i]); }
    WeylElement element(std::size_t id) const;
    WeylElement longest() const { return WeylElement(static_cast<std::uint32_t>(order() - 1)); }

    WeylElement mul(WeylElement a, WeylElement b) const;
    WeylElement mul_simple(WeylElement a, int i) const { return WeylElement(right_[a.id() * rank_ + i]); }
    WeylElement simple_mul(int i, WeylElement a) const { return WeylElement(left_[a.id() * rank_ + i]); }
    WeylElement inverse(WeylElement a) const { return WeylElement(inverse_[a.id()]); }
    WeylElement from_word(std::span<const int> word) const;
    WeylElement reflection(int root) const;  // s_alpha for any root index

    int length(WeylElement a) const { return length_[a.id()]; }
    const std::vector<int>& reduced_word(WeylElement a) const { return words_[a.id()]; }
    std::vector<std::vector<int>> all_reduced_words(WeylElement a) const;

    int act_root(WeylElement a, int root) const { return perm_[a.id() * num_roots_ + root]; }
    Coweight act(WeylElement a, const Coweight& mu) const;
    RationalVector act(WeylElement a, const RationalVector& mu) const;
    // (a . f)(mu) = f(a^{-1} mu) for a linear form f
    Coweight act_covector(WeylElement a, const Coweight& f) const;
    const Matrix64& matrix(WeylElement a) const { return matrices_[a.id()]; }

    WeylElement sigma(WeylElement a) const { return WeylElement(sigma_[a.id()]); }
    WeylElement sigma_inverse(WeylElement a) const { return WeylElement(sigma_inv_[a.id()]); }
    // v^{-1} w sigma(v)
    WeylElement sigma_conjugate(WeylElement w, WeylElement v) const;

    bool bruhat_leq(WeylElement u, WeylElement w) const;
    IndexSet support(WeylElement a) const;
    IndexSet sigma_support(WeylElement a) const { return datum_->sigma_closure(support(a)); }
    bool in_parabolic(WeylElement a, IndexSet J) const { return (support(a) & ~J) == 0; }
    // u in W^J: u has no right descent in J.
    bool is_minimal_coset_rep(WeylElement u, IndexSet J) const;
    std::vector<WeylElement> parabolic_elements(IndexSet J) const;
    WeylElement longest_in(IndexSet J) const;

    int reflection_length_sigma(WeylElement w) const;
    bool is_partial_sigma_coxeter(WeylElement w) const;
    // Word-level test: one reduced word with letters in distinct sigma-orbits.
    bool is_partial_sigma_coxeter_word(WeylElement w) const;
    bool is_sigma_coxeter(WeylElement w, IndexSet J) const;

    struct Shift {
        WeylElement minimum;
        std::vector<int> path;  // simple indices s with w -> s w sigma(s)
    };
    Shift sigma_min_shift(WeylElement w) const;
    bool is_sigma_elliptic(WeylElement w) const;
    bool is_sigma_elliptic_bruteforce(WeylElement w) const;
    // Exhaustive: some v^{-1} w sigma(v) is a partial sigma-Coxeter element.
    bool sigma_conjugate_to_partial_coxeter(WeylElement w) const;
    // u in W_J with u^{-1} c sigma(u) = c2, shortlex-least.
    WeylElement coxeter_conjugator(WeylElement c, WeylElement c2, IndexSet J) const;

    std::string format(WeylElement a) const;
    WeylElement parse(const std::string& text) const;

  private:
    struct Key {
        std::array<std::uint16_t, 16> images{};
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    Key key_of(const std::uint16_t* perm) const;
    WeylElement lookup(const Key& key) const;

    std::shared_ptr<const RootDatum> datum_;
    int rank_ = 0;
    int num_roots_ = 0;
    std::vector<std::uint16_t> perm_;
    std::vector<std::uint32_t> right_, left_, inverse_, sigma_, sigma_inv_, reflection_;
    std::vector<std::uint8_t> length_;
    std::vector<IndexSet> support_;
    std::vector<std::vector<int>> words_;
    std::vector<Matrix64> matrices_;
    std::unordered_map<Key, std::uint32_t, KeyHash> index_;
    std::unique_ptr<std::atomic<std::int8_t>[]> reflection_length_;
};

}  // namespace adlv

template <>
struct std::hash<adlv::WeylElement> {
    std::size_t operator()(const adlv::WeylElement& w) const noexcept { return w.id(); }
};
