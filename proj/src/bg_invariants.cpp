#include "adlv/bg_invariants.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace adlv {

namespace {

Coweight mat_vec(const Matrix64& m, const Coweight& v) {
    Coweight out(v.size(), 0);
    for (std::size_t s = 0; s < v.size(); ++s)
        for (std::size_t t = 0; t < v.size(); ++t) out[s] += m[s][t] * v[t];
    return out;
}

Matrix64 mat_mul(const Matrix64& a, const Matrix64& b) {
    const std::size_t n = a.size();
    Matrix64 out(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t l = 0; l < n; ++l)
            if (a[s][l] != 0)
                for (std::size_t t = 0; t < n; ++t) out[s][t] += a[s][l] * b[l][t];
    return out;
}

bool is_identity(const Matrix64& m) {
    for (std::size_t s = 0; s < m.size(); ++s)
        for (std::size_t t = 0; t < m.size(); ++t)
            if (m[s][t] != (s == t ? 1 : 0)) return false;
    return true;
}

}  // namespace

nlohmann::json rational_vector_json(const RationalVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

RationalVector rational_vector_from_json(const nlohmann::json& j) {
    RationalVector out;
    for (const auto& e : j) out.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<std::int64_t>()));
    return out;
}

nlohmann::json integer_vector_json(const std::vector<Integer>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) {
        if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
            out.push_back(static_cast<std::int64_t>(x));
        else
            out.push_back(x.str());
    }
    return out;
}

BGInvariants::BGInvariants(std::shared_ptr<const AffineWeylGroup> affine) : affine_(std::move(affine)) {}

NewtonData BGInvariants::newton_data(const AffineElement& x) const {
    const RootDatum& d = datum();
    const Matrix64 step = mat_mul(d.sigma_matrix(), affine_->weyl().matrix(x.w));
    NewtonData out;
    Matrix64 power = step;
    Coweight cur = mat_vec(step, x.mu);
    Coweight sum = cur;
    int order = 1;
    while (!is_identity(power)) {
        power = mat_mul(step, power);
        cur = mat_vec(step, cur);
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += cur[t];
        if (++order > 100000) throw ComputationError("sigma o w has no finite order");
    }
    out.order = order;
    out.raw.resize(sum.size());
    for (std::size_t t = 0; t < sum.size(); ++t) out.raw[t] = Rational(sum[t], order);
    out.dominant = d.dominant_rep(out.raw).first;
    return out;
}

RationalVector BGInvariants::newton_by_power(const AffineElement& x) const {
    const AffineWeylGroup& A = *affine_;
    const int sigma_order = datum().sigma_order();
    AffineElement product = A.identity();
    AffineElement twisted = x;
    for (int k = 1;; ++k) {
        product = A.mul(product, twisted);
        twisted = A.sigma(twisted);
        if (k % sigma_order == 0 && product.w.is_identity()) {
            RationalVector nu(product.mu.size());
            for (std::size_t t = 0; t < nu.size(); ++t) nu[t] = Rational(product.mu[t], k);
            return datum().dominant_rep(nu).first;
        }
        if (k > 100000) throw ComputationError("power of x sigma is never a translation");
    }
}

std::vector<Integer> BGInvariants::kappa(const Coweight& mu) const { return datum().pi1_gamma().project(mu); }

BGClass BGInvariants::class_of(const AffineElement& x) const { return {kappa(x), newton(x)}; }

BGClass BGInvariants::class_of_lambda(const Coweight& lambda) const {
    return class_of(affine_->translation(lambda));
}

bool BGInvariants::gamma_leq(const Coweight& lambda, const Coweight& lambda2) const {
    const RootDatum& d = datum();
    const int n = d.dim();
    Coweight diff(n);
    for (int t = 0; t < n; ++t) diff[t] = lambda2[t] - lambda[t];
    const auto orbits = d.sigma_orbits();
    std::vector<int> reps;
    for (IndexSet o : orbits) reps.push_back(__builtin_ctz(o));
    // apply the orbit sum, which kills (1 - sigma)X, and solve on orbit representatives
    RationalMatrix m(n, RationalVector(reps.size()));
    for (std::size_t k = 0; k < reps.size(); ++k) {
        Coweight s = d.sigma_orbit_sum(d.root(reps[k]).coroot);
        for (int t = 0; t < n; ++t) m[t][k] = s[t];
    }
    Coweight target = d.sigma_orbit_sum(diff);
    RationalVector rhs(target.begin(), target.end());
    auto c = solve_unique(m, rhs);
    if (!c) return false;
    Coweight rest = diff;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        const Rational& q = (*c)[k];
        if (q < 0 || boost::multiprecision::denominator(q) != 1) return false;
        auto coeff = static_cast<std::int64_t>(boost::multiprecision::numerator(q));
        const auto& cor = d.root(reps[k]).coroot;
        for (int t = 0; t < n; ++t) rest[t] -= coeff * cor[t];
    }
    return d.coinvariants().is_zero(to_integer(rest));
}

bool BGInvariants::gamma_equal(const Coweight& lambda, const Coweight& lambda2) const {
    return datum().coinvariants().project(lambda) == datum().coinvariants().project(lambda2);
}

LambdaInvariant BGInvariants::lambda(const BGClass& b) const {
    {
        std::shared_lock lock(lambda_mutex_);
        auto it = lambda_memo_.find(b);
        if (it != lambda_memo_.end()) return it->second;
    }
    const RootDatum& d = datum();
    const int n = d.dim();
    Rational largest = 0;
    for (const auto& q : b.nu) largest = std::max(largest, q < 0 ? Rational(-q) : q);
    Integer ceil_largest = boost::multiprecision::numerator(largest) / boost::multiprecision::denominator(largest) + 1;
    const std::int64_t bound = static_cast<std::int64_t>(ceil_largest) * d.sigma_order() + 2;

    std::map<std::vector<Integer>, Coweight> found;  // residue -> representative
    Coweight lambda(n, -bound);
    while (true) {
        if (kappa(lambda) == b.kappa) {
            RationalVector avg = d.avg_sigma(to_rational(lambda));
            if (d.dominance_leq(avg, b.nu)) {
                auto residue = d.coinvariants().project(lambda);
                found.emplace(std::move(residue), lambda);
            }
        }
        int t = 0;
        while (t < n && lambda[t] == bound) lambda[t++] = -bound;
        if (t == n) break;
        ++lambda[t];
    }
    if (found.empty())
        throw ComputationError("lambda-invariant search found no candidate within the window |coordinates| <= " +
                               std::to_string(bound));

    const Coweight* best = nullptr;
    for (const auto& [residue, rep] : found)
        if (!best || d.pairing_2rho(rep) > d.pairing_2rho(*best)) best = &rep;
    for (const auto& [residue, rep] : found)
        if (!gamma_leq(rep, *best))
            throw InvariantViolation("lambda-invariant: candidate set has no unique maximum (window " +
                                     std::to_string(bound) + ")");

    LambdaInvariant out{*best, d.coinvariants().project(*best), d.avg_sigma(to_rational(*best))};
    if (d.conv(to_rational(*best)) != b.nu) throw InvariantViolation("lambda-invariant: conv(lambda) != nu");
    std::unique_lock lock(lambda_mutex_);
    lambda_memo_.emplace(b, out);
    return out;
}

std::int64_t BGInvariants::defect(const BGClass& b) const {
    const Rational value = datum().pairing_2rho(b.nu) - datum().pairing_2rho(to_rational(lambda(b).representative));
    if (value < 0 || boost::multiprecision::denominator(value) != 1)
        throw InvariantViolation("defect is not a non-negative integer: " + to_string(value));
    return static_cast<std::int64_t>(boost::multiprecision::numerator(value));
}

bool BGInvariants::leq(const BGClass& b1, const BGClass& b2) const {
    return b1.kappa == b2.kappa && datum().dominance_leq(b1.nu, b2.nu);
}

IndexSet BGInvariants::I_one(const BGClass& b) const {
    const RootDatum& d = datum();
    RationalVector diff = b.nu;
    const auto& avg = lambda(b).average;
    for (std::size_t t = 0; t < diff.size(); ++t) diff[t] -= avg[t];
    auto c = d.coroot_coordinates(diff);
    if (!c) throw InvariantViolation("nu - avg(lambda) is not in the coroot span");
    IndexSet out = 0;
    for (int i = 0; i < d.rank(); ++i) {
        if ((*c)[i] < 0) throw InvariantViolation("nu - avg(lambda) is not a non-negative combination");
        if ((*c)[i] != 0) out |= 1U << i;
    }
    return out;
}

std::int64_t BGInvariants::virtual_dimension(const AffineElement& x, const BGClass& b) const {
    if (kappa(x) != b.kappa) throw ComputationError("virtual dimension: Kottwitz points of x and b differ");
    const AffineWeylGroup& A = *affine_;
    const Rational total = Rational(A.length(x) + A.weyl().length(A.eta_sigma(x))) - datum().pairing_2rho(b.nu) -
                           Rational(defect(b));
    const Rational half = total / 2;
    if (boost::multiprecision::denominator(half) != 1)
        throw ComputationError("virtual dimension is not an integer: " + to_string(half));
    return static_cast<std::int64_t>(boost::multiprecision::numerator(half));
}

nlohmann::json BGInvariants::to_json(const BGClass& b) const {
    return {{"kappa", integer_vector_json(b.kappa)}, {"nu", rational_vector_json(b.nu)}};
}

BGClass BGInvariants::from_json(const nlohmann::json& j) const {
    BGClass b;
    for (const auto& e : j.at("kappa")) b.kappa.push_back(e.is_string() ? Integer(e.get<std::string>()) : Integer(e.get<std::int64_t>()));
    b.nu = rational_vector_from_json(j.at("nu"));
    if (static_cast<int>(b.nu.size()) != datum().dim()) throw std::invalid_argument("class 'nu' has wrong dimension");
    if (b.kappa.size() != datum().pi1_gamma().ambient_rank()) throw std::invalid_argument("class 'kappa' has wrong size");
    return b;
}

std::string BGInvariants::format(const BGClass& b) const { return to_json(b).dump(); }

}  // namespace adlv
