#include "adlv/finite_weyl.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <sstream>

namespace adlv {

std::size_t WeylGroup::KeyHash::operator()(const Key& k) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : k.images) {
        h ^= x;
        h *= 1099511628211ULL;
    }
    return h;
}

WeylGroup::Key WeylGroup::key_of(const std::uint16_t* perm) const {
    Key k;
    for (int j = 0; j < rank_; ++j) k.images[j] = perm[j];
    return k;
}

WeylElement WeylGroup::lookup(const Key& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw InvariantViolation("Weyl group element lookup failed");
    return WeylElement(it->second);
}

WeylGroup::WeylGroup(std::shared_ptr<const RootDatum> datum) : datum_(std::move(datum)) {
    const RootDatum& d = *datum_;
    rank_ = d.rank();
    num_roots_ = d.num_roots();
    const int n = d.dim();

    // simple reflections on root indices
    std::vector<std::vector<std::uint16_t>> sperm(rank_, std::vector<std::uint16_t>(num_roots_));
    std::vector<Matrix64> smat(rank_);
    for (int i = 0; i < rank_; ++i) {
        for (int b = 0; b < num_roots_; ++b) {
            const auto& c = d.root(b).coeffs;
            int p = 0;
            for (int k = 0; k < rank_; ++k) p += c[k] * d.cartan()[i][k];
            auto c2 = c;
            c2[i] -= p;
            sperm[i][b] = static_cast<std::uint16_t>(*d.find_root(c2));
        }
        smat[i].assign(n, std::vector<std::int64_t>(n, 0));
        const auto& cor = d.root(i).coroot;
        const auto& fun = d.root(i).functional;
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) smat[i][s][t] = (s == t ? 1 : 0) - cor[s] * fun[t];
    }

    std::vector<std::uint16_t> id_perm(num_roots_);
    for (int b = 0; b < num_roots_; ++b) id_perm[b] = static_cast<std::uint16_t>(b);
    perm_ = id_perm;
    length_.push_back(0);
    words_.emplace_back();
    Matrix64 eye(n, std::vector<std::int64_t>(n, 0));
    for (int s = 0; s < n; ++s) eye[s][s] = 1;
    matrices_.push_back(eye);
    index_[key_of(perm_.data())] = 0;

    std::vector<std::uint16_t> scratch(num_roots_);
    for (std::size_t cur = 0; cur < length_.size(); ++cur) {
        for (int i = 0; i < rank_; ++i) {
            const std::uint16_t* p = &perm_[cur * num_roots_];
            for (int b = 0; b < num_roots_; ++b) scratch[b] = p[sperm[i][b]];
            Key key = key_of(scratch.data());
            auto it = index_.find(key);
            std::uint32_t target;
            if (it == index_.end()) {
                target = static_cast<std::uint32_t>(length_.size());
                if (target >= kMaxOrder) throw ComputationError("Weyl group too large for table construction");
                index_.emplace(key, target);
                perm_.insert(perm_.end(), scratch.begin(), scratch.end());
                length_.push_back(static_cast<std::uint8_t>(length_[cur] + 1));
                auto word = words_[cur];
                word.push_back(i);
                words_.push_back(std::move(word));
                const Matrix64& m = matrices_[cur];
                Matrix64 prod(n, std::vector<std::int64_t>(n, 0));
                for (int s = 0; s < n; ++s)
                    for (int l = 0; l < n; ++l)
                        if (m[s][l] != 0)
                            for (int t = 0; t < n; ++t) prod[s][t] += m[s][l] * smat[i][l][t];
                matrices_.push_back(std::move(prod));
            } else {
                target = it->second;
            }
            right_.push_back(target);
        }
    }

    const std::size_t order = length_.size();
    left_.resize(order * rank_);
    inverse_.resize(order);
    sigma_.resize(order);
    sigma_inv_.resize(order);
    support_.resize(order);
    for (std::size_t w = 0; w < order; ++w) {
        const std::uint16_t* p = &perm_[w * num_roots_];
        int inversions = 0;
        for (int b = 0; b < d.num_positive(); ++b)
            if (!d.is_positive(p[b])) ++inversions;
        if (inversions != length_[w]) throw InvariantViolation("Weyl group length mismatch");
        for (int i = 0; i < rank_; ++i) {
            for (int b = 0; b < num_roots_; ++b) scratch[b] = sperm[i][p[b]];
            left_[w * rank_ + i] = lookup(key_of(scratch.data())).id();
        }
        for (int b = 0; b < num_roots_; ++b) scratch[p[b]] = static_cast<std::uint16_t>(b);
        inverse_[w] = lookup(key_of(scratch.data())).id();
        Key ks, ki;
        for (int j = 0; j < rank_; ++j) {
            ks.images[j] = static_cast<std::uint16_t>(d.sigma_root(p[d.sigma_inverse_simple(j)]));
            // sigma^{-1}(w)(alpha_j) = sigma^{-1}(w(alpha_{sigma j}))
            int img = p[d.sigma_simple(j)];
            int back = 0;
            while (d.sigma_root(back) != img) ++back;
            ki.images[j] = static_cast<std::uint16_t>(back);
        }
        sigma_[w] = lookup(ks).id();
        sigma_inv_[w] = lookup(ki).id();
        IndexSet sup = 0;
        for (int letter : words_[w]) sup |= 1U << letter;
        support_[w] = sup;
    }

    reflection_.resize(d.num_positive());
    for (int a = 0; a < d.num_positive(); ++a) {
        Key k;
        const auto& dco = d.root(a).coroot_coeffs;
        const auto& ac = d.root(a).coeffs;
        for (int j = 0; j < rank_; ++j) {
            int p = 0;
            for (int k2 = 0; k2 < rank_; ++k2) p += dco[k2] * d.cartan()[k2][j];
            std::vector<int> c(rank_, 0);
            c[j] = 1;
            for (int t = 0; t < rank_; ++t) c[t] -= p * ac[t];
            k.images[j] = static_cast<std::uint16_t>(*d.find_root(c));
        }
        reflection_[a] = lookup(k).id();
    }

    reflection_length_ = std::make_unique<std::atomic<std::int8_t>[]>(order);
    for (std::size_t w = 0; w < order; ++w) reflection_length_[w].store(-1, std::memory_order_relaxed);
}

WeylElement WeylGroup::element(std::size_t id) const {
    if (id >= order()) throw std::out_of_range("Weyl element index out of range");
    return WeylElement(static_cast<std::uint32_t>(id));
}

WeylElement WeylGroup::mul(WeylElement a, WeylElement b) const {
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    const std::uint16_t* pa = &perm_[a.id() * num_roots_];
    const std::uint16_t* pb = &perm_[b.id() * num_roots_];
    Key k;
    for (int j = 0; j < rank_; ++j) k.images[j] = pa[pb[j]];
    return lookup(k);
}

WeylElement WeylGroup::from_word(std::span<const int> word) const {
    WeylElement w = identity();
    for (int i : word) {
        if (i < 0 || i >= rank_) throw std::invalid_argument("simple index out of range in word");
        w = mul_simple(w, i);
    }
    return w;
}

WeylElement WeylGroup::reflection(int root) const {
    return WeylElement(reflection_.at(datum_->positive_part(root)));
}

std::vector<std::vector<int>> WeylGroup::all_reduced_words(WeylElement a) const {
    if (a.is_identity()) return {{}};
    std::vector<std::vector<int>> out;
    for (int i = 0; i < rank_; ++i) {
        WeylElement b = mul_simple(a, i);
        if (length(b) >= length(a)) continue;
        for (auto w : all_reduced_words(b)) {
            w.push_back(i);
            out.push_back(std::move(w));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Coweight WeylGroup::act(WeylElement a, const Coweight& mu) const {
    const Matrix64& m = matrix(a);
    Coweight out(mu.size(), 0);
    for (std::size_t s = 0; s < mu.size(); ++s)
        for (std::size_t t = 0; t < mu.size(); ++t) out[s] += m[s][t] * mu[t];
    return out;
}

RationalVector WeylGroup::act(WeylElement a, const RationalVector& mu) const {
    const Matrix64& m = matrix(a);
    RationalVector out(mu.size());
    for (std::size_t s = 0; s < mu.size(); ++s)
        for (std::size_t t = 0; t < mu.size(); ++t)
            if (m[s][t] != 0) out[s] += m[s][t] * mu[t];
    return out;
}

Coweight WeylGroup::act_covector(WeylElement a, const Coweight& f) const {
    const Matrix64& m = matrix(inverse(a));
    Coweight out(f.size(), 0);
    for (std::size_t t = 0; t < f.size(); ++t)
        for (std::size_t s = 0; s < f.size(); ++s) out[t] += f[s] * m[s][t];
    return out;
}

WeylElement WeylGroup::sigma_conjugate(WeylElement w, WeylElement v) const {
    return mul(mul(inverse(v), w), sigma(v));
}

bool WeylGroup::bruhat_leq(WeylElement u, WeylElement w) const {
    while (!w.is_identity()) {
        if (length(u) > length(w)) return false;
        int s = words_[w.id()].back();
        WeylElement us = mul_simple(u, s);
        if (length(us) < length(u)) u = us;
        w = mul_simple(w, s);
    }
    return u.is_identity();
}

IndexSet WeylGroup::support(WeylElement a) const { return support_[a.id()]; }

bool WeylGroup::is_minimal_coset_rep(WeylElement u, IndexSet J) const {
    for (int j = 0; j < rank_; ++j)
        if (contains(J, j) && length(mul_simple(u, j)) < length(u)) return false;
    return true;
}

std::vector<WeylElement> WeylGroup::parabolic_elements(IndexSet J) const {
    std::vector<WeylElement> out;
    for (std::size_t id = 0; id < order(); ++id)
        if ((support_[id] & ~J) == 0) out.emplace_back(static_cast<std::uint32_t>(id));
    return out;
}

WeylElement WeylGroup::longest_in(IndexSet J) const {
    WeylElement best = identity();
    for (auto w : parabolic_elements(J))
        if (length(w) > length(best)) best = w;
    return best;
}

int WeylGroup::reflection_length_sigma(WeylElement w) const {
    auto cached = reflection_length_[w.id()].load(std::memory_order_relaxed);
    if (cached >= 0) return cached;
    const int n = datum_->dim();
    const Matrix64& s = datum_->sigma_matrix();
    const Matrix64& m = matrix(w);
    RationalMatrix sw(n, RationalVector(n)), sm(n, RationalVector(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::int64_t x = 0;
            for (int l = 0; l < n; ++l) x += s[a][l] * m[l][b];
            sw[a][b] = x - (a == b ? 1 : 0);
            sm[a][b] = s[a][b] - (a == b ? 1 : 0);
        }
    // dim Fix(sigma) - dim Fix(sigma w) = rank(sigma w - 1) - rank(sigma - 1)
    int value = static_cast<int>(adlv::rank(sw)) - static_cast<int>(adlv::rank(sm));
    reflection_length_[w.id()].store(static_cast<std::int8_t>(value), std::memory_order_relaxed);
    return value;
}

bool WeylGroup::is_partial_sigma_coxeter(WeylElement w) const {
    return reflection_length_sigma(w) == length(w);
}

bool WeylGroup::is_partial_sigma_coxeter_word(WeylElement w) const {
    // Every reduced word uses each letter of the support, so some reduced
    // word has distinct orbits iff the length equals the number of orbits.
    return length(w) == datum_->orbit_count(support(w));
}

bool WeylGroup::is_sigma_coxeter(WeylElement w, IndexSet J) const {
    return is_partial_sigma_coxeter_word(w) && sigma_support(w) == J;
}

WeylGroup::Shift WeylGroup::sigma_min_shift(WeylElement w) const {
    std::unordered_map<std::uint32_t, std::pair<std::uint32_t, int>> parent;
    std::deque<WeylElement> queue{w};
    parent[w.id()] = {w.id(), -1};
    WeylElement best = w;
    while (!queue.empty()) {
        WeylElement y = queue.front();
        queue.pop_front();
        if (length(y) < length(best) || (length(y) == length(best) && y < best)) best = y;
        for (int i = 0; i < rank_; ++i) {
            WeylElement z = mul_simple(simple_mul(i, y), datum_->sigma_simple(i));
            if (length(z) > length(y) || parent.count(z.id())) continue;
            parent[z.id()] = {y.id(), i};
            queue.push_back(z);
        }
    }
    Shift out{best, {}};
    for (std::uint32_t cur = best.id(); cur != w.id();) {
        auto [prev, letter] = parent[cur];
        out.path.push_back(letter);
        cur = prev;
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

bool WeylGroup::is_sigma_elliptic(WeylElement w) const {
    return reflection_length_sigma(w) == datum_->orbit_count(datum_->all_simple());
}

bool WeylGroup::is_sigma_elliptic_bruteforce(WeylElement w) const {
    const IndexSet all = datum_->all_simple();
    for (std::size_t id = 0; id < order(); ++id)
        if (sigma_support(sigma_conjugate(w, element(id))) != all) return false;
    return true;
}

bool WeylGroup::sigma_conjugate_to_partial_coxeter(WeylElement w) const {
    for (std::size_t id = 0; id < order(); ++id)
        if (is_partial_sigma_coxeter_word(sigma_conjugate(w, element(id)))) return true;
    return false;
}

WeylElement WeylGroup::coxeter_conjugator(WeylElement c, WeylElement c2, IndexSet J) const {
    if (!datum_->is_sigma_stable(J)) throw std::invalid_argument("coxeter_conjugator: J not sigma-stable");
    if (!is_sigma_coxeter(c, J) || !is_sigma_coxeter(c2, J))
        throw std::invalid_argument("coxeter_conjugator: inputs are not sigma-Coxeter elements of W_J");
    for (auto u : parabolic_elements(J))
        if (sigma_conjugate(c, u) == c2) return u;
    throw InvariantViolation("sigma-Coxeter elements of W_J are not sigma-conjugate");
}

std::string WeylGroup::format(WeylElement a) const {
    std::string out = "s:[";
    const auto& w = reduced_word(a);
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(w[k] + 1);
    }
    return out + "]";
}

WeylElement WeylGroup::parse(const std::string& text) const {
    std::string body = text;
    if (body.rfind("s:", 0) == 0) body = body.substr(2);
    std::vector<int> word;
    static const std::regex number(R"(-?\d+)");
    for (auto it = std::sregex_iterator(body.begin(), body.end(), number); it != std::sregex_iterator(); ++it)
        word.push_back(std::stoi(it->str()) - 1);
    return from_word(word);
}

}  // namespace adlv
