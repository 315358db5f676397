#include "adlv/affine_weyl.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace adlv {

std::size_t AffineElementHash::operator()(const AffineElement& x) const noexcept {
    std::size_t h = x.w.id() * 0x9E3779B97F4A7C15ULL;
    for (auto m : x.mu) h = (h ^ static_cast<std::size_t>(m)) * 1099511628211ULL + 0x7F4A7C15ULL;
    return h;
}

std::string to_string(MoveType t) {
    switch (t) {
        case MoveType::LengthPreserving: return "length-preserving";
        case MoveType::Down2: return "down-2";
        case MoveType::Up2: return "up-2";
    }
    return "?";
}

std::string to_string(LpCase c) {
    switch (c) {
        case LpCase::Positive: return "positive";
        case LpCase::Negative: return "negative";
        case LpCase::Zero: return "zero";
    }
    return "?";
}

AffineWeylGroup::AffineWeylGroup(std::shared_ptr<const WeylGroup> weyl) : weyl_(std::move(weyl)) {
    const RootDatum& d = datum();
    for (int a = 0; a < d.num_affine_simple(); ++a) {
        AffineRoot root = d.affine_simple(a);
        // r_(alpha,k) = s_alpha eps^{k alpha^vee}
        Coweight mu = d.root(root.root).coroot;
        for (auto& m : mu) m *= root.level;
        simple_.push_back({weyl_->reflection(root.root), mu});
    }
}

AffineElement AffineWeylGroup::identity() const { return {weyl_->identity(), Coweight(datum().dim(), 0)}; }

AffineElement AffineWeylGroup::translation(Coweight mu) const {
    if (static_cast<int>(mu.size()) != datum().dim()) throw std::invalid_argument("translation has wrong dimension");
    return {weyl_->identity(), std::move(mu)};
}

AffineElement AffineWeylGroup::finite(WeylElement w) const { return {w, Coweight(datum().dim(), 0)}; }

AffineElement AffineWeylGroup::mul(const AffineElement& a, const AffineElement& b) const {
    Coweight mu = weyl_->act(weyl_->inverse(b.w), a.mu);
    for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += b.mu[i];
    return {weyl_->mul(a.w, b.w), std::move(mu)};
}

AffineElement AffineWeylGroup::inverse(const AffineElement& a) const {
    Coweight mu = weyl_->act(a.w, a.mu);
    for (auto& m : mu) m = -m;
    return {weyl_->inverse(a.w), std::move(mu)};
}

AffineElement AffineWeylGroup::power(const AffineElement& a, int n) const {
    AffineElement base = n < 0 ? inverse(a) : a;
    AffineElement out = identity();
    for (int k = 0; k < std::abs(n); ++k) out = mul(out, base);
    return out;
}

AffineElement AffineWeylGroup::sigma(const AffineElement& x) const {
    return {weyl_->sigma(x.w), datum().sigma(x.mu)};
}

AffineElement AffineWeylGroup::sigma_inverse(const AffineElement& x) const {
    return {weyl_->sigma_inverse(x.w), datum().sigma_inverse(x.mu)};
}

AffineElement AffineWeylGroup::sigma_conjugate(const AffineElement& x, const AffineElement& y) const {
    return mul(mul(inverse(y), x), sigma(y));
}

AffineRoot AffineWeylGroup::act(const AffineElement& x, const AffineRoot& a) const {
    return {weyl_->act_root(x.w, a.root), a.level - datum().pairing(x.mu, a.root)};
}

std::int64_t AffineWeylGroup::length_functional(const AffineElement& x, int root) const {
    const RootDatum& d = datum();
    std::int64_t value = d.pairing(x.mu, root);
    if (d.is_positive(root)) value += 1;
    if (d.is_positive(weyl_->act_root(x.w, root))) value -= 1;
    return value;
}

std::int64_t AffineWeylGroup::length(const AffineElement& x) const {
    std::int64_t total = 0;
    for (int a = 0; a < datum().num_positive(); ++a) total += std::abs(length_functional(x, a));
    return total;
}

bool AffineWeylGroup::is_length_positive(const AffineElement& x, WeylElement v) const {
    for (int a = 0; a < datum().num_positive(); ++a)
        if (length_functional(x, weyl_->act_root(v, a)) < 0) return false;
    return true;
}

std::vector<WeylElement> AffineWeylGroup::lp_set(const AffineElement& x) const {
    std::vector<WeylElement> out;
    for (std::size_t id = 0; id < weyl_->order(); ++id) {
        WeylElement v = weyl_->element(id);
        if (is_length_positive(x, v)) out.push_back(v);
    }
    // ids are already in shortlex order
    if (out.empty()) throw InvariantViolation("empty length positive set");
    return out;
}

LpTransport AffineWeylGroup::lp_transport(const AffineElement& x, int a) const {
    const RootDatum& d = datum();
    const int alpha = d.classical_part(a);
    const WeylElement s_alpha = weyl_->reflection(alpha);
    const AffineElement xr = mul_simple(x, a);

    LpTransport out;
    out.functional = length_functional(x, alpha);
    out.kind = out.functional > 0 ? LpCase::Positive : (out.functional < 0 ? LpCase::Negative : LpCase::Zero);
    out.length_increases = length(xr) > length(x);
    out.lp_x = lp_set(x);
    out.lp_xr = lp_set(xr);

    std::set<WeylElement> shifted, target(out.lp_xr.begin(), out.lp_xr.end());
    for (auto v : out.lp_x) shifted.insert(weyl_->mul(s_alpha, v));
    const bool sub = std::includes(target.begin(), target.end(), shifted.begin(), shifted.end());
    const bool super = std::includes(shifted.begin(), shifted.end(), target.begin(), target.end());
    switch (out.kind) {
        case LpCase::Positive:
            out.containment_holds = !out.length_increases && sub && (out.functional <= 1 || super);
            break;
        case LpCase::Negative: out.containment_holds = out.length_increases && sub && super; break;
        case LpCase::Zero: out.containment_holds = out.length_increases && super; break;
    }

    out.pointwise_holds = true;
    if (out.kind == LpCase::Zero) {
        std::set<WeylElement> lp_x(out.lp_x.begin(), out.lp_x.end());
        for (auto v : out.lp_x) {
            const bool negative = !d.is_positive(weyl_->act_root(weyl_->inverse(v), alpha));
            const WeylElement sv = weyl_->mul(s_alpha, v);
            if (negative) {
                if (!target.count(sv)) out.pointwise_holds = false;
            } else if (!lp_x.count(sv) || !target.count(v)) {
                out.pointwise_holds = false;
            }
        }
    }
    return out;
}

SigmaMove AffineWeylGroup::simple_sigma_conjugate(const AffineElement& x, int a) const {
    SigmaMove out;
    out.left_only = simple_mul(a, x);
    out.result = mul_simple(out.left_only, datum().sigma_affine(a));
    const std::int64_t before = length(x), after = length(out.result);
    if (after == before) out.type = MoveType::LengthPreserving;
    else if (after == before - 2) out.type = MoveType::Down2;
    else if (after == before + 2) out.type = MoveType::Up2;
    else throw InvariantViolation("sigma-conjugation by a simple reflection changed the length by an odd amount");
    return out;
}

bool AffineWeylGroup::is_alcove_element(const AffineElement& x, IndexSet J, WeylElement u, bool normalized) const {
    const RootDatum& d = datum();
    if (!d.is_sigma_stable(J)) throw std::invalid_argument("alcove element test needs a sigma-stable subset");
    if (normalized && !weyl_->is_minimal_coset_rep(u, J)) return false;
    const AffineElement y = sigma_conjugate(x, finite(u));
    if (!weyl_->in_parabolic(y.w, J)) return false;
    const WeylElement shift = weyl_->mul(weyl_->inverse(x.w), u);
    for (int b = 0; b < d.num_positive(); ++b) {
        bool in_J = true;
        for (int i = 0; i < d.rank(); ++i)
            if (d.root(b).coeffs[i] != 0 && !contains(J, i)) in_J = false;
        if (in_J) continue;
        if (length_functional(x, weyl_->act_root(shift, b)) < 0) return false;
    }
    return true;
}

WeylElement AffineWeylGroup::dominance_witness(const Coweight& mu) const {
    return weyl_->from_word(datum().dominant_rep(mu).second);
}

WeylElement AffineWeylGroup::eta_sigma(const AffineElement& x) const {
    const WeylElement v = dominance_witness(x.mu);
    return weyl_->mul(weyl_->mul(weyl_->inverse(weyl_->sigma_inverse(v)), x.w), v);
}

std::vector<AffineElement> AffineWeylGroup::omega_elements(std::int64_t box) const {
    return omega_elements(-box, box);
}

namespace {

// Finite Weyl element with inversion set {alpha > 0 : inverted[alpha]}, if any.
std::optional<WeylElement> from_inversion_set(const WeylGroup& weyl, std::vector<bool> inverted) {
    const RootDatum& d = weyl.datum();
    std::vector<int> letters;
    while (true) {
        int simple = -1;
        for (int i = 0; i < d.rank() && simple < 0; ++i)
            if (inverted[i]) simple = i;
        if (simple < 0) break;
        // N(w s_i) = s_i (N(w) \ {alpha_i})
        std::vector<bool> next(d.num_positive(), false);
        for (int b = 0; b < d.num_positive(); ++b) {
            if (!inverted[b] || b == simple) continue;
            int image = weyl.act_root(weyl.simple(simple), b);
            if (!d.is_positive(image)) return std::nullopt;
            next[image] = true;
        }
        letters.push_back(simple);
        inverted = std::move(next);
        if (static_cast<int>(letters.size()) > d.num_positive()) return std::nullopt;
    }
    std::reverse(letters.begin(), letters.end());
    return weyl.from_word(letters);
}

}  // namespace

std::vector<AffineElement> AffineWeylGroup::omega_elements(std::int64_t lo, std::int64_t hi) const {
    const RootDatum& d = datum();
    const int r = d.rank(), n = d.dim();
    IntMatrix functionals(r, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) functionals(i, j) = d.root(i).functional[j];
    const SmithForm snf = smith_normal_form(functionals);
    std::size_t diag_rank = 0;
    while (diag_rank < std::min<std::size_t>(r, n) && snf.D(diag_rank, diag_rank) != 0) ++diag_rank;
    const std::size_t kernel_dim = n - diag_rank;

    // kernel basis: the last columns of V
    std::vector<Coweight> kernel;
    for (std::size_t k = diag_rank; k < static_cast<std::size_t>(n); ++k) {
        Coweight col(n);
        for (int j = 0; j < n; ++j) col[j] = static_cast<std::int64_t>(snf.V(j, k));
        kernel.push_back(col);
    }
    // rows of the kernel basis to invert when fitting into the box
    std::vector<int> pivot_rows;
    RationalMatrix pivot_inverse;
    if (kernel_dim > 0) {
        RationalMatrix chosen;
        for (int j = 0; j < n && pivot_rows.size() < kernel_dim; ++j) {
            RationalVector row(kernel_dim);
            for (std::size_t k = 0; k < kernel_dim; ++k) row[k] = kernel[k][j];
            auto trial = chosen;
            trial.push_back(row);
            if (adlv::rank(trial) > chosen.size()) {
                chosen = std::move(trial);
                pivot_rows.push_back(j);
            }
        }
        pivot_inverse = chosen;
    }

    std::vector<AffineElement> out;
    for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
        std::vector<Integer> c(r);
        for (int i = 0; i < r; ++i) c[i] = contains(mask, i) ? -1 : 0;
        bool ok = true;
        for (std::size_t comp = 0; comp < d.components().size(); ++comp) {
            const auto& theta = d.root(d.highest_root(static_cast<int>(comp))).coeffs;
            std::int64_t value = 0;
            for (int i = 0; i < r; ++i) value += theta[i] * (contains(mask, i) ? -1 : 0);
            if (value < -1) ok = false;
        }
        if (!ok) continue;
        // D y = U c
        auto uc = snf.U.apply(c);
        std::vector<Integer> y(n, 0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(r) && ok; ++i) {
            if (i < diag_rank) {
                if (uc[i] % snf.D(i, i) != 0) ok = false;
                else y[i] = uc[i] / snf.D(i, i);
            } else if (uc[i] != 0) {
                ok = false;
            }
        }
        if (!ok) continue;
        Coweight particular = to_int64(snf.V.apply(y));

        std::vector<Coweight> candidates;
        if (kernel_dim == 0) {
            candidates.push_back(particular);
        } else {
            // choose the pivot coordinates inside the box, solve for the kernel coefficients
            std::vector<std::int64_t> target(kernel_dim, lo);
            while (true) {
                RationalVector rhs(kernel_dim);
                for (std::size_t k = 0; k < kernel_dim; ++k) rhs[k] = target[k] - particular[pivot_rows[k]];
                auto t = solve_unique(pivot_inverse, rhs);
                bool integral = t.has_value();
                if (integral)
                    for (const auto& q : *t)
                        if (boost::multiprecision::denominator(q) != 1) integral = false;
                if (integral) {
                    Coweight mu = particular;
                    for (std::size_t k = 0; k < kernel_dim; ++k) {
                        auto coeff = static_cast<std::int64_t>(boost::multiprecision::numerator((*t)[k]));
                        for (int j = 0; j < n; ++j) mu[j] += coeff * kernel[k][j];
                    }
                    candidates.push_back(mu);
                }
                std::size_t k = 0;
                while (k < kernel_dim && target[k] == hi) target[k++] = lo;
                if (k == kernel_dim) break;
                ++target[k];
            }
        }
        for (auto& mu : candidates) {
            if (std::any_of(mu.begin(), mu.end(), [&](std::int64_t m) { return m < lo || m > hi; })) continue;
            std::vector<bool> inverted(d.num_positive(), false);
            bool valid = true;
            for (int b = 0; b < d.num_positive(); ++b) {
                auto p = d.pairing(mu, b);
                if (p == -1) inverted[b] = true;
                else if (p != 0) valid = false;
            }
            if (!valid) continue;
            auto w = from_inversion_set(*weyl_, inverted);
            if (!w) continue;
            AffineElement x{*w, mu};
            if (length(x) != 0) throw InvariantViolation("length-zero construction failed");
            out.push_back(std::move(x));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AffineWeylGroup::AffineWord AffineWeylGroup::affine_word(const AffineElement& x) const {
    AffineWord out{x, {}};
    std::int64_t len = length(x);
    while (len > 0) {
        bool moved = false;
        for (int a = 0; a < num_simple(); ++a) {
            if (length_functional(out.tau, datum().classical_part(a)) > 0) {
                out.tau = mul_simple(out.tau, a);
                out.word.push_back(a);
                --len;
                moved = true;
                break;
            }
        }
        if (!moved) throw InvariantViolation("no descent found for an element of positive length");
    }
    if (length(out.tau) != 0) throw InvariantViolation("descent did not reach a length-zero element");
    std::reverse(out.word.begin(), out.word.end());
    return out;
}

AffineElement AffineWeylGroup::from_affine_word(const AffineElement& tau, const std::vector<int>& word) const {
    AffineElement x = tau;
    for (int a : word) x = mul_simple(x, a);
    return x;
}

AffineElement AffineWeylGroup::omega_part(const AffineElement& x) const { return affine_word(x).tau; }

std::vector<AffineElement> AffineWeylGroup::enumerate(const std::vector<AffineElement>& taus, int max_length) const {
    std::vector<AffineElement> out;
    AffineSet seen;
    std::vector<AffineElement> frontier;
    for (const auto& tau : taus) {
        if (length(tau) != 0) throw std::invalid_argument("enumerate expects length-zero elements");
        if (seen.insert(tau).second) frontier.push_back(tau);
    }
    out = frontier;
    for (int len = 0; len < max_length; ++len) {
        std::vector<AffineElement> next;
        for (const auto& x : frontier) {
            for (int a = 0; a < num_simple(); ++a) {
                if (length_functional(x, datum().classical_part(a)) > 0) continue;  // x r_a < x
                AffineElement y = mul_simple(x, a);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), [&](const AffineElement& p, const AffineElement& q) {
        auto lp = length(p), lq = length(q);
        return lp != lq ? lp < lq : p < q;
    });
    return out;
}

nlohmann::json AffineWeylGroup::to_json(const AffineElement& x) const {
    nlohmann::json word = nlohmann::json::array();
    for (int i : weyl_->reduced_word(x.w)) word.push_back(i + 1);
    return {{"w", word}, {"mu", x.mu}};
}

AffineElement AffineWeylGroup::from_json(const nlohmann::json& j) const {
    if (!j.is_object() || !j.contains("w") || !j.contains("mu"))
        throw std::invalid_argument("element must be an object with keys 'w' and 'mu'");
    std::vector<int> word;
    for (const auto& letter : j.at("w")) word.push_back(letter.get<int>() - 1);
    Coweight mu = j.at("mu").get<Coweight>();
    if (static_cast<int>(mu.size()) != datum().dim())
        throw std::invalid_argument("element 'mu' has dimension " + std::to_string(mu.size()) + ", datum has " +
                                    std::to_string(datum().dim()));
    return {weyl_->from_word(word), std::move(mu)};
}

AffineElement AffineWeylGroup::parse(const std::string& text) const {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed element JSON: ") + e.what());
    }
    return from_json(j);
}

std::string AffineWeylGroup::format(const AffineElement& x) const { return to_json(x).dump(); }

}  // namespace adlv
