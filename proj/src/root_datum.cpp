#include "adlv/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace adlv {

namespace {

Coweight mat_vec(const Matrix64& m, const Coweight& v) {
    Coweight out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

Matrix64 mat_mul(const Matrix64& a, const Matrix64& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix64 out(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    return out;
}

Matrix64 identity64(int n) {
    Matrix64 m(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::int64_t dot(const Coweight& a, const Coweight& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

RootDatum::RootDatum(DatumConfig config)
    : name_(std::move(config.name)),
      rank_(static_cast<int>(config.cartan.size())),
      cartan_(std::move(config.cartan)),
      simple_coroots_(std::move(config.coroots)),
      simple_roots_(std::move(config.roots)),
      sigma_perm_(std::move(config.sigma_perm)) {
    if (rank_ == 0) throw std::invalid_argument("root datum of rank 0");
    if (rank_ > 16) throw std::invalid_argument("rank above 16 is not supported");
    for (const auto& row : cartan_)
        if (static_cast<int>(row.size()) != rank_) throw std::invalid_argument("Cartan matrix is not square");
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            if (i == j && cartan_[i][j] != 2) throw std::invalid_argument("Cartan matrix diagonal must be 2");
            if (i != j && cartan_[i][j] > 0) throw std::invalid_argument("Cartan matrix off-diagonal entry positive");
            if (i != j && (cartan_[i][j] == 0) != (cartan_[j][i] == 0))
                throw std::invalid_argument("Cartan matrix zero pattern not symmetric");
        }
    if (static_cast<int>(simple_coroots_.size()) != rank_ || static_cast<int>(simple_roots_.size()) != rank_)
        throw std::invalid_argument("need one coroot and one root vector per simple root");
    dim_ = static_cast<int>(simple_coroots_[0].size());
    for (int i = 0; i < rank_; ++i) {
        if (static_cast<int>(simple_coroots_[i].size()) != dim_ || static_cast<int>(simple_roots_[i].size()) != dim_)
            throw std::invalid_argument("root/coroot vectors must have the lattice dimension");
    }
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (dot(simple_coroots_[i], simple_roots_[j]) != cartan_[i][j])
                throw std::invalid_argument("pairing of simple coroots and roots does not reproduce the Cartan matrix");

    {
        RationalMatrix c(dim_, RationalVector(rank_));
        for (int k = 0; k < dim_; ++k)
            for (int i = 0; i < rank_; ++i) c[k][i] = simple_coroots_[i][k];
        if (adlv::rank(c) != static_cast<std::size_t>(rank_))
            throw std::invalid_argument("simple coroots are linearly dependent");
        RationalMatrix chosen;
        for (int k = 0; k < dim_ && static_cast<int>(chosen.size()) < rank_; ++k) {
            auto trial = chosen;
            trial.push_back(c[k]);
            if (adlv::rank(trial) > chosen.size()) {
                chosen = std::move(trial);
                coroot_rows_.push_back(k);
            }
        }
        coroot_solver_.assign(rank_, RationalVector(rank_));
        for (int e = 0; e < rank_; ++e) {
            RationalVector unit(rank_);
            unit[e] = 1;
            auto col = solve_unique(chosen, unit);
            for (int i = 0; i < rank_; ++i) coroot_solver_[i][e] = (*col)[i];
        }
    }

    enumerate_roots();
    build_components();
    if (sigma_perm_.empty()) {
        sigma_perm_.resize(rank_);
        std::iota(sigma_perm_.begin(), sigma_perm_.end(), 0);
    }
    if (static_cast<int>(sigma_perm_.size()) != rank_) throw std::invalid_argument("sigma_perm has wrong length");
    if (config.sigma_matrix) sigma_matrix_ = *config.sigma_matrix;
    build_sigma();
    build_quotients();
}

void RootDatum::enumerate_roots() {
    std::map<std::vector<int>, std::vector<int>> found;
    std::deque<std::vector<int>> queue;
    for (int i = 0; i < rank_; ++i) {
        std::vector<int> e(rank_, 0);
        e[i] = 1;
        found[e] = e;
        queue.push_back(e);
    }
    while (!queue.empty()) {
        auto c = queue.front();
        queue.pop_front();
        auto d = found[c];
        for (int j = 0; j < rank_; ++j) {
            int p = 0;
            for (int k = 0; k < rank_; ++k) p += c[k] * cartan_[j][k];
            if (p == 0) continue;
            auto c2 = c;
            c2[j] -= p;
            if (std::any_of(c2.begin(), c2.end(), [](int x) { return x < 0; })) continue;
            if (found.count(c2)) continue;
            int q = 0;
            for (int k = 0; k < rank_; ++k) q += d[k] * cartan_[k][j];
            auto d2 = d;
            d2[j] -= q;
            found[c2] = d2;
            queue.push_back(c2);
            if (found.size() > 1000) throw std::invalid_argument("Cartan matrix is not of finite type");
        }
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pos(found.begin(), found.end());
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
        int ha = std::accumulate(a.first.begin(), a.first.end(), 0);
        int hb = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (ha != hb) return ha < hb;
        return a.first > b.first;
    });
    num_positive_ = static_cast<int>(pos.size());
    roots_.clear();
    for (int sign : {1, -1}) {
        for (const auto& [c, d] : pos) {
            Root r;
            r.positive = sign > 0;
            r.coeffs = c;
            r.coroot_coeffs = d;
            for (auto& x : r.coeffs) x *= sign;
            for (auto& x : r.coroot_coeffs) x *= sign;
            r.height = sign * std::accumulate(c.begin(), c.end(), 0);
            r.functional.assign(dim_, 0);
            r.coroot.assign(dim_, 0);
            for (int k = 0; k < rank_; ++k)
                for (int t = 0; t < dim_; ++t) {
                    r.functional[t] += r.coeffs[k] * simple_roots_[k][t];
                    r.coroot[t] += r.coroot_coeffs[k] * simple_coroots_[k][t];
                }
            root_index_[r.coeffs] = static_cast<int>(roots_.size());
            roots_.push_back(std::move(r));
        }
    }
    two_rho_.assign(dim_, 0);
    for (int i = 0; i < num_positive_; ++i)
        for (int t = 0; t < dim_; ++t) two_rho_[t] += roots_[i].functional[t];
}

void RootDatum::build_components() {
    std::vector<int> comp(rank_, -1);
    for (int i = 0; i < rank_; ++i) {
        if (comp[i] >= 0) continue;
        int id = static_cast<int>(components_.size());
        IndexSet set = 0;
        std::deque<int> q{i};
        comp[i] = id;
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            set |= 1U << a;
            for (int b = 0; b < rank_; ++b)
                if (b != a && cartan_[a][b] != 0 && comp[b] < 0) {
                    comp[b] = id;
                    q.push_back(b);
                }
        }
        components_.push_back(set);
    }
    for (IndexSet set : components_) {
        int best = -1;
        for (int i = 0; i < num_positive_; ++i) {
            bool inside = true;
            for (int k = 0; k < rank_; ++k)
                if (roots_[i].coeffs[k] != 0 && !contains(set, k)) inside = false;
            if (inside && (best < 0 || roots_[i].height > roots_[best].height)) best = i;
        }
        highest_roots_.push_back(best);
    }
}

void RootDatum::build_sigma() {
    std::vector<int> seen(rank_, 0);
    for (int x : sigma_perm_) {
        if (x < 0 || x >= rank_ || seen[x]++) throw std::invalid_argument("sigma_perm is not a permutation");
    }
    sigma_perm_inv_.assign(rank_, 0);
    for (int i = 0; i < rank_; ++i) sigma_perm_inv_[sigma_perm_[i]] = i;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (cartan_[sigma_perm_[i]][sigma_perm_[j]] != cartan_[i][j])
                throw std::invalid_argument("sigma does not preserve the Cartan matrix");

    bool identity_perm = true;
    for (int i = 0; i < rank_; ++i)
        if (sigma_perm_[i] != i) identity_perm = false;

    if (sigma_matrix_.empty()) {
        if (identity_perm) {
            sigma_matrix_ = identity64(dim_);
        } else if (dim_ == rank_) {
            // sigma permutes the fundamental coweight coordinates <mu, alpha_j>.
            RationalMatrix roots(rank_, RationalVector(dim_));
            for (int j = 0; j < rank_; ++j)
                for (int t = 0; t < dim_; ++t) roots[j][t] = simple_roots_[j][t];
            sigma_matrix_.assign(dim_, std::vector<std::int64_t>(dim_, 0));
            for (int t = 0; t < dim_; ++t) {
                RationalVector z(rank_);
                for (int j = 0; j < rank_; ++j) z[sigma_perm_[j]] = roots[j][t];
                auto col = solve_unique(roots, z);
                for (int s = 0; s < dim_; ++s) {
                    const Rational& x = (*col)[s];
                    if (boost::multiprecision::denominator(x) != 1)
                        throw std::invalid_argument("sigma does not preserve the cocharacter lattice");
                    sigma_matrix_[s][t] = static_cast<std::int64_t>(boost::multiprecision::numerator(x));
                }
            }
        } else {
            throw std::invalid_argument("sigma_matrix is required for a non-semisimple lattice with nontrivial sigma");
        }
    }
    if (static_cast<int>(sigma_matrix_.size()) != dim_) throw std::invalid_argument("sigma_matrix has wrong size");
    for (const auto& row : sigma_matrix_)
        if (static_cast<int>(row.size()) != dim_) throw std::invalid_argument("sigma_matrix has wrong size");
    for (int i = 0; i < rank_; ++i) {
        if (mat_vec(sigma_matrix_, simple_coroots_[i]) != simple_coroots_[sigma_perm_[i]])
            throw std::invalid_argument("sigma_matrix does not map coroot " + std::to_string(i + 1) +
                                        " to its sigma image");
        for (int t = 0; t < dim_; ++t) {
            std::int64_t s = 0;
            for (int u = 0; u < dim_; ++u) s += simple_roots_[sigma_perm_[i]][u] * sigma_matrix_[u][t];
            if (s != simple_roots_[i][t])
                throw std::invalid_argument("sigma_matrix is not compatible with the simple roots");
        }
    }
    Matrix64 power = sigma_matrix_;
    const Matrix64 id = identity64(dim_);
    sigma_order_ = 1;
    while (power != id) {
        power = mat_mul(power, sigma_matrix_);
        if (++sigma_order_ > 1000) throw std::invalid_argument("sigma is not of finite order");
    }
    sigma_inverse_matrix_ = id;
    for (int k = 1; k < sigma_order_; ++k) sigma_inverse_matrix_ = mat_mul(sigma_inverse_matrix_, sigma_matrix_);

    sigma_root_.assign(num_roots(), 0);
    for (int i = 0; i < num_roots(); ++i) {
        std::vector<int> c(rank_);
        for (int j = 0; j < rank_; ++j) c[sigma_perm_[j]] = roots_[i].coeffs[j];
        sigma_root_[i] = root_index_.at(c);
    }
    sigma_affine_.assign(num_affine_simple(), 0);
    for (int a = 0; a < rank_; ++a) sigma_affine_[a] = sigma_perm_[a];
    for (std::size_t c = 0; c < components_.size(); ++c) {
        int image = sigma_root_[highest_roots_[c]];
        auto it = std::find(highest_roots_.begin(), highest_roots_.end(), image);
        if (it == highest_roots_.end()) throw InvariantViolation("sigma does not permute highest roots");
        sigma_affine_[rank_ + c] = rank_ + static_cast<int>(it - highest_roots_.begin());
    }
}

void RootDatum::build_quotients() {
    std::vector<std::vector<std::int64_t>> coroots(simple_coroots_.begin(), simple_coroots_.end());
    std::vector<std::vector<std::int64_t>> twist;
    for (int t = 0; t < dim_; ++t) {
        std::vector<std::int64_t> col(dim_, 0);
        for (int s = 0; s < dim_; ++s) col[s] = (s == t ? 1 : 0) - sigma_matrix_[s][t];
        if (std::any_of(col.begin(), col.end(), [](auto x) { return x != 0; })) twist.push_back(col);
    }
    pi1_ = QuotientPresentation::from_int64(dim_, coroots);
    coinv_ = QuotientPresentation::from_int64(dim_, twist);
    auto both = coroots;
    both.insert(both.end(), twist.begin(), twist.end());
    pi1_gamma_ = QuotientPresentation::from_int64(dim_, both);
}

std::optional<int> RootDatum::find_root(const std::vector<int>& coeffs) const {
    auto it = root_index_.find(coeffs);
    if (it == root_index_.end()) return std::nullopt;
    return it->second;
}

std::int64_t RootDatum::pairing(const Coweight& mu, int root) const {
    return dot(mu, roots_.at(root).functional);
}

Rational RootDatum::pairing(const RationalVector& mu, int root) const {
    Rational s = 0;
    const auto& f = roots_.at(root).functional;
    for (int t = 0; t < dim_; ++t)
        if (f[t] != 0) s += mu[t] * f[t];
    return s;
}

std::int64_t RootDatum::pairing_2rho(const Coweight& mu) const { return dot(mu, two_rho_); }

Rational RootDatum::pairing_2rho(const RationalVector& mu) const {
    Rational s = 0;
    for (int t = 0; t < dim_; ++t)
        if (two_rho_[t] != 0) s += mu[t] * two_rho_[t];
    return s;
}

Coweight RootDatum::simple_reflect(const Coweight& mu, int i) const {
    std::int64_t p = pairing(mu, i);
    Coweight out = mu;
    for (int t = 0; t < dim_; ++t) out[t] -= p * simple_coroots_[i][t];
    return out;
}

RationalVector RootDatum::simple_reflect(const RationalVector& mu, int i) const {
    Rational p = pairing(mu, i);
    RationalVector out = mu;
    if (p == 0) return out;
    for (int t = 0; t < dim_; ++t) out[t] -= p * simple_coroots_[i][t];
    return out;
}

Coweight RootDatum::coroot_combination(const std::vector<std::int64_t>& coeffs) const {
    Coweight out(dim_, 0);
    for (int i = 0; i < rank_; ++i)
        for (int t = 0; t < dim_; ++t) out[t] += coeffs[i] * simple_coroots_[i][t];
    return out;
}

Coweight RootDatum::sigma(const Coweight& mu) const { return mat_vec(sigma_matrix_, mu); }
Coweight RootDatum::sigma_inverse(const Coweight& mu) const { return mat_vec(sigma_inverse_matrix_, mu); }

RationalVector RootDatum::sigma(const RationalVector& mu) const {
    RationalVector out(dim_);
    for (int s = 0; s < dim_; ++s)
        for (int t = 0; t < dim_; ++t)
            if (sigma_matrix_[s][t] != 0) out[s] += sigma_matrix_[s][t] * mu[t];
    return out;
}

RationalVector RootDatum::avg_sigma(const RationalVector& mu) const {
    RationalVector sum(dim_), cur = mu;
    for (int k = 0; k < sigma_order_; ++k) {
        for (int t = 0; t < dim_; ++t) sum[t] += cur[t];
        cur = sigma(cur);
    }
    for (auto& x : sum) x /= sigma_order_;
    return sum;
}

Coweight RootDatum::sigma_orbit_sum(const Coweight& mu) const {
    Coweight sum(dim_, 0), cur = mu;
    for (int k = 0; k < sigma_order_; ++k) {
        for (int t = 0; t < dim_; ++t) sum[t] += cur[t];
        cur = sigma(cur);
    }
    return sum;
}

bool RootDatum::is_sigma_stable(IndexSet set) const { return sigma_closure(set) == set; }

IndexSet RootDatum::sigma_closure(IndexSet set) const {
    IndexSet out = set;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rank_; ++i)
            if (contains(out, i) && !contains(out, sigma_perm_[i])) {
                out |= 1U << sigma_perm_[i];
                changed = true;
            }
    }
    return out;
}

std::vector<IndexSet> RootDatum::sigma_orbits() const {
    std::vector<IndexSet> orbits;
    IndexSet covered = 0;
    for (int i = 0; i < rank_; ++i) {
        if (contains(covered, i)) continue;
        IndexSet orbit = sigma_closure(1U << i);
        covered |= orbit;
        orbits.push_back(orbit);
    }
    return orbits;
}

int RootDatum::orbit_count(IndexSet set) const {
    int count = 0;
    for (IndexSet orbit : sigma_orbits())
        if (orbit & set) ++count;
    return count;
}

std::vector<IndexSet> RootDatum::sigma_stable_subsets() const {
    auto orbits = sigma_orbits();
    std::vector<IndexSet> out;
    for (std::uint32_t mask = 0; mask < (1U << orbits.size()); ++mask) {
        IndexSet set = 0;
        for (std::size_t k = 0; k < orbits.size(); ++k)
            if ((mask >> k) & 1U) set |= orbits[k];
        out.push_back(set);
    }
    std::sort(out.begin(), out.end(), [](IndexSet a, IndexSet b) {
        return set_size(a) != set_size(b) ? set_size(a) < set_size(b) : a < b;
    });
    return out;
}

std::vector<IndexSet> RootDatum::sigma_connected_components(IndexSet set) const {
    std::vector<IndexSet> plain;
    IndexSet covered = 0;
    for (int i = 0; i < rank_; ++i) {
        if (!contains(set, i) || contains(covered, i)) continue;
        IndexSet comp = 0;
        std::deque<int> q{i};
        covered |= 1U << i;
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            comp |= 1U << a;
            for (int b = 0; b < rank_; ++b)
                if (contains(set, b) && !contains(covered, b) && cartan_[a][b] != 0) {
                    covered |= 1U << b;
                    q.push_back(b);
                }
        }
        plain.push_back(comp);
    }
    // merge components that sigma permutes among each other
    std::vector<IndexSet> merged;
    std::vector<bool> used(plain.size(), false);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (used[i]) continue;
        IndexSet acc = plain[i];
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            IndexSet image = 0;
            for (int k = 0; k < rank_; ++k)
                if (contains(acc, k)) image |= 1U << sigma_perm_[k];
            for (std::size_t j = 0; j < plain.size(); ++j)
                if (!used[j] && (plain[j] & image)) {
                    acc |= plain[j];
                    used[j] = true;
                    grew = true;
                }
        }
        merged.push_back(acc);
    }
    return merged;
}

AffineRoot RootDatum::affine_simple(int a) const {
    if (a < 0 || a >= num_affine_simple()) throw std::out_of_range("affine simple index out of range");
    if (a < rank_) return {a, 0};
    return {negate(highest_roots_[a - rank_]), 1};
}

bool RootDatum::is_positive(const AffineRoot& a) const {
    return a.level >= (is_positive(a.root) ? 0 : 1);
}

std::optional<int> RootDatum::find_affine_simple(const AffineRoot& a) const {
    for (int b = 0; b < num_affine_simple(); ++b)
        if (affine_simple(b) == a) return b;
    return std::nullopt;
}

int RootDatum::affine_label(int a) const {
    if (a < rank_) return a + 1;
    return -(a - rank_);
}

int RootDatum::affine_index(int label) const {
    if (label >= 1 && label <= rank_) return label - 1;
    if (label <= 0 && -label < static_cast<int>(components_.size())) return rank_ - label;
    throw std::invalid_argument("no affine simple reflection with label " + std::to_string(label));
}

RationalVector RootDatum::pi_J(const RationalVector& lambda, IndexSet J) const {
    if (!is_sigma_stable(J)) throw std::invalid_argument("pi_J: J is not sigma-stable");
    std::vector<int> idx;
    for (int i = 0; i < rank_; ++i)
        if (contains(J, i)) idx.push_back(i);
    RationalVector p = lambda;
    if (!idx.empty()) {
        // p = lambda - sum_j c_j coroot_j with <p, alpha_k> = 0 for k in J
        RationalMatrix m(idx.size(), RationalVector(idx.size()));
        RationalVector rhs(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            rhs[a] = pairing(lambda, idx[a]);
            for (std::size_t b = 0; b < idx.size(); ++b) m[a][b] = cartan_[idx[b]][idx[a]];
        }
        auto c = solve_unique(m, rhs);
        for (std::size_t b = 0; b < idx.size(); ++b)
            for (int t = 0; t < dim_; ++t) p[t] -= (*c)[b] * simple_coroots_[idx[b]][t];
    }
    return avg_sigma(p);
}

RationalVector RootDatum::conv(const RationalVector& lambda) const {
    std::vector<RationalVector> candidates;
    for (IndexSet J : sigma_stable_subsets()) {
        auto p = pi_J(lambda, J);
        if (std::find(candidates.begin(), candidates.end(), p) == candidates.end()) candidates.push_back(p);
    }
    RationalVector best = candidates.front();
    for (const auto& p : candidates)
        if (dominance_leq(best, p)) best = p;
    for (const auto& p : candidates)
        if (!dominance_leq(p, best)) throw InvariantViolation("conv: projections have no unique maximum");
    return best;
}

std::optional<RationalVector> RootDatum::coroot_coordinates(const RationalVector& v) const {
    RationalVector c(rank_);
    for (int i = 0; i < rank_; ++i)
        for (int e = 0; e < rank_; ++e)
            if (coroot_solver_[i][e] != 0) c[i] += coroot_solver_[i][e] * v[coroot_rows_[e]];
    for (int t = 0; t < dim_; ++t) {
        Rational s = 0;
        for (int i = 0; i < rank_; ++i)
            if (simple_coroots_[i][t] != 0) s += c[i] * simple_coroots_[i][t];
        if (s != v[t]) return std::nullopt;
    }
    return c;
}

bool RootDatum::dominance_leq(const RationalVector& a, const RationalVector& b) const {
    RationalVector d(dim_);
    for (int t = 0; t < dim_; ++t) d[t] = b[t] - a[t];
    auto c = coroot_coordinates(d);
    if (!c) return false;
    return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; });
}

bool RootDatum::integral_leq(const Coweight& a, const Coweight& b) const {
    RationalVector d(dim_);
    for (int t = 0; t < dim_; ++t) d[t] = b[t] - a[t];
    auto c = coroot_coordinates(d);
    if (!c) return false;
    return std::all_of(c->begin(), c->end(),
                       [](const Rational& x) { return x >= 0 && boost::multiprecision::denominator(x) == 1; });
}

bool RootDatum::is_dominant(const RationalVector& mu) const {
    for (int i = 0; i < rank_; ++i)
        if (pairing(mu, i) < 0) return false;
    return true;
}

bool RootDatum::is_dominant(const Coweight& mu) const {
    for (int i = 0; i < rank_; ++i)
        if (pairing(mu, i) < 0) return false;
    return true;
}

std::pair<RationalVector, std::vector<int>> RootDatum::dominant_rep(const RationalVector& mu) const {
    RationalVector cur = mu;
    std::vector<int> word;
    while (true) {
        int i = 0;
        while (i < rank_ && pairing(cur, i) >= 0) ++i;
        if (i == rank_) break;
        cur = simple_reflect(cur, i);
        word.push_back(i);
    }
    return {cur, word};
}

std::pair<Coweight, std::vector<int>> RootDatum::dominant_rep(const Coweight& mu) const {
    Coweight cur = mu;
    std::vector<int> word;
    while (true) {
        int i = 0;
        while (i < rank_ && pairing(cur, i) >= 0) ++i;
        if (i == rank_) break;
        cur = simple_reflect(cur, i);
        word.push_back(i);
    }
    return {cur, word};
}

IndexSet RootDatum::vanishing_set(const RationalVector& nu) const {
    IndexSet out = 0;
    for (int i = 0; i < rank_; ++i)
        if (pairing(nu, i) == 0) out |= 1U << i;
    return out;
}

nlohmann::json RootDatum::to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    j["cartan"] = cartan_;
    j["coroots"] = simple_coroots_;
    j["roots"] = simple_roots_;
    std::vector<int> perm;
    for (int x : sigma_perm_) perm.push_back(x + 1);
    j["sigma_perm"] = perm;
    j["sigma_matrix"] = sigma_matrix_;
    return j;
}

std::string format_index_set(IndexSet set, bool one_based) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (contains(set, i)) {
            if (!first) out += ",";
            out += std::to_string(one_based ? i + 1 : i);
            first = false;
        }
    return out + "}";
}

// ---- construction from text ----

namespace {

std::vector<std::vector<int>> single_type(char family, int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (family) {
        case 'A':
            if (n < 1) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            return a;
        case 'B':
            if (n < 2) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2;
            return a;
        case 'C':
            if (n < 2) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2;
            return a;
        case 'D':
            if (n < 3) break;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            return a;
        case 'E':
            if (n < 6 || n > 8) break;
            link(0, 2);
            link(1, 3);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            return a;
        case 'F':
            if (n != 4) break;
            link(0, 1);
            link(1, 2);
            a[2][1] = -2;
            link(2, 3);
            return a;
        case 'G':
            if (n != 2) break;
            a[0][1] = -3;
            a[1][0] = -1;
            return a;
        default:
            break;
    }
    throw std::invalid_argument(std::string("unknown Cartan type ") + family + std::to_string(n));
}

Matrix64 json_matrix(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be a matrix");
    Matrix64 m;
    for (const auto& row : j) {
        if (!row.is_array()) throw std::invalid_argument(std::string(what) + " must be a matrix");
        std::vector<std::int64_t> r;
        for (const auto& x : row) r.push_back(x.get<std::int64_t>());
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

std::vector<std::vector<int>> cartan_matrix_for_type(const std::string& type) {
    static const std::regex token(R"(([A-G])\s*(\d+))");
    std::vector<std::vector<std::vector<int>>> blocks;
    std::size_t total = 0;
    std::string rest;
    for (auto it = std::sregex_iterator(type.begin(), type.end(), token); it != std::sregex_iterator(); ++it) {
        blocks.push_back(single_type((*it)[1].str()[0], std::stoi((*it)[2].str())));
        total += blocks.back().size();
    }
    std::string stripped = std::regex_replace(type, token, "");
    stripped = std::regex_replace(stripped, std::regex(R"([\sx*]+)"), "");
    if (blocks.empty() || !stripped.empty()) throw std::invalid_argument("cannot parse Cartan type '" + type + "'");
    std::vector<std::vector<int>> a(total, std::vector<int>(total, 0));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) a[off + i][off + j] = b[i][j];
        off += b.size();
    }
    return a;
}

RootDatum parse_root_datum(const nlohmann::json& spec) {
    DatumConfig cfg;
    cfg.name = spec.value("name", spec.value("type", std::string("custom")));
    if (spec.contains("type")) {
        cfg.cartan = cartan_matrix_for_type(spec.at("type").get<std::string>());
    } else if (spec.contains("cartan")) {
        for (const auto& row : json_matrix(spec.at("cartan"), "cartan"))
            cfg.cartan.emplace_back(row.begin(), row.end());
    } else {
        throw std::invalid_argument("root datum needs 'type' or 'cartan'");
    }
    const int r = static_cast<int>(cfg.cartan.size());
    for (const auto& row : cfg.cartan)
        if (static_cast<int>(row.size()) != r) throw std::invalid_argument("Cartan matrix is not square");

    std::string preset = "simply_connected";
    if (spec.contains("coroots") || spec.contains("roots")) {
        cfg.coroots = json_matrix(spec.at("coroots"), "coroots");
        cfg.roots = json_matrix(spec.at("roots"), "roots");
        preset.clear();
    } else if (spec.contains("lattice_basis") && spec.at("lattice_basis").is_string()) {
        preset = spec.at("lattice_basis").get<std::string>();
    } else if (spec.contains("lattice_basis")) {
        // rows: basis vectors of X in fundamental coweight coordinates
        Matrix64 b = json_matrix(spec.at("lattice_basis"), "lattice_basis");
        if (static_cast<int>(b.size()) != r) throw std::invalid_argument("lattice_basis must be square of size rank");
        RationalMatrix bt(r, RationalVector(r));
        for (int k = 0; k < r; ++k) {
            if (static_cast<int>(b[k].size()) != r) throw std::invalid_argument("lattice_basis must be square");
            for (int j = 0; j < r; ++j) bt[j][k] = b[k][j];
        }
        if (rank(bt) != static_cast<std::size_t>(r)) throw std::invalid_argument("lattice_basis is singular");
        cfg.roots.assign(r, std::vector<std::int64_t>(r, 0));
        cfg.coroots.assign(r, std::vector<std::int64_t>(r, 0));
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < r; ++k) cfg.roots[i][k] = b[k][i];
            RationalVector target(r);
            for (int j = 0; j < r; ++j) target[j] = cfg.cartan[i][j];
            auto c = solve_unique(bt, target);
            for (int k = 0; k < r; ++k) {
                if (boost::multiprecision::denominator((*c)[k]) != 1)
                    throw std::invalid_argument("lattice does not contain the coroot lattice");
                cfg.coroots[i][k] = static_cast<std::int64_t>(boost::multiprecision::numerator((*c)[k]));
            }
        }
        preset.clear();
    }

    if (spec.contains("sigma_perm")) {
        for (const auto& x : spec.at("sigma_perm")) cfg.sigma_perm.push_back(x.get<int>() - 1);
    }
    if (spec.contains("sigma_matrix")) cfg.sigma_matrix = json_matrix(spec.at("sigma_matrix"), "sigma_matrix");

    if (preset == "simply_connected" || preset == "sc") {
        cfg.coroots.assign(r, std::vector<std::int64_t>(r, 0));
        cfg.roots.assign(r, std::vector<std::int64_t>(r, 0));
        for (int i = 0; i < r; ++i) {
            cfg.coroots[i][i] = 1;
            for (int j = 0; j < r; ++j) cfg.roots[i][j] = cfg.cartan[j][i];
        }
    } else if (preset == "adjoint") {
        cfg.coroots.assign(r, std::vector<std::int64_t>(r, 0));
        cfg.roots.assign(r, std::vector<std::int64_t>(r, 0));
        for (int i = 0; i < r; ++i) {
            cfg.roots[i][i] = 1;
            for (int j = 0; j < r; ++j) cfg.coroots[i][j] = cfg.cartan[i][j];
        }
    } else if (preset == "gl") {
        auto a = single_type('A', r);
        if (a != cfg.cartan) throw std::invalid_argument("the gl lattice needs a single type A Cartan matrix");
        const int n = r + 1;
        cfg.coroots.assign(r, std::vector<std::int64_t>(n, 0));
        for (int i = 0; i < r; ++i) {
            cfg.coroots[i][i] = 1;
            cfg.coroots[i][i + 1] = -1;
        }
        cfg.roots = cfg.coroots;
        bool flip = !cfg.sigma_perm.empty();
        for (int i = 0; i < static_cast<int>(cfg.sigma_perm.size()); ++i)
            if (cfg.sigma_perm[i] != r - 1 - i) flip = false;
        bool trivial = true;
        for (int i = 0; i < static_cast<int>(cfg.sigma_perm.size()); ++i)
            if (cfg.sigma_perm[i] != i) trivial = false;
        if (!cfg.sigma_matrix && flip && !trivial) {
            // e_i -> -e_{n+1-i}
            Matrix64 m(n, std::vector<std::int64_t>(n, 0));
            for (int i = 0; i < n; ++i) m[n - 1 - i][i] = -1;
            cfg.sigma_matrix = m;
        }
    } else if (!preset.empty()) {
        throw std::invalid_argument("unknown lattice preset '" + preset + "'");
    }
    return RootDatum(std::move(cfg));
}

RootDatum load_root_datum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open datum file " + path);
    nlohmann::json j;
    in >> j;
    return parse_root_datum(j);
}

}  // namespace adlv
