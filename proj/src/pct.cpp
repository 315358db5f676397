#include "adlv/pct.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace adlv {

namespace {

Coweight minus(Coweight a, const Coweight& b) {
    for (std::size_t t = 0; t < a.size(); ++t) a[t] -= b[t];
    return a;
}

Coweight plus_scaled(Coweight a, const Coweight& b, std::int64_t k) {
    for (std::size_t t = 0; t < a.size(); ++t) a[t] += k * b[t];
    return a;
}

std::int64_t exact_integer(const Rational& q, const char* what) {
    if (boost::multiprecision::denominator(q) != 1)
        throw InvariantViolation(std::string(what) + " is not an integer: " + to_string(q));
    return static_cast<std::int64_t>(boost::multiprecision::numerator(q));
}

std::vector<int> one_based(const std::vector<int>& word) {
    std::vector<int> out;
    for (int letter : word) out.push_back(letter + 1);
    return out;
}

std::vector<IndexSet> connected_components(const RootDatum& d, IndexSet set) {
    std::vector<IndexSet> out;
    IndexSet covered = 0;
    for (int i = 0; i < d.rank(); ++i) {
        if (!contains(set, i) || contains(covered, i)) continue;
        IndexSet comp = 0;
        std::deque<int> queue{i};
        covered |= 1U << i;
        while (!queue.empty()) {
            int a = queue.front();
            queue.pop_front();
            comp |= 1U << a;
            for (int b = 0; b < d.rank(); ++b)
                if (contains(set, b) && !contains(covered, b) && d.cartan()[a][b] != 0) {
                    covered |= 1U << b;
                    queue.push_back(b);
                }
        }
        out.push_back(comp);
    }
    return out;
}

// Odometer over non-negative vectors of the given size with entry sum <= total.
void for_each_bounded(std::size_t size, std::int64_t total, const std::function<void(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::int64_t> c(size, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
        if (k == size) {
            f(c);
            return;
        }
        for (std::int64_t value = 0; value <= left; ++value) {
            c[k] = value;
            rec(k + 1, left - value);
        }
        c[k] = 0;
    };
    rec(0, total);
}

}  // namespace

int count_positive_roots(const std::vector<std::vector<int>>& cartan) {
    const std::size_t n = cartan.size();
    std::set<std::vector<int>> found;
    std::deque<std::vector<int>> queue;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        found.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        auto root = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            int p = 0;
            for (std::size_t j = 0; j < n; ++j) p += root[j] * cartan[i][j];
            if (p == 0) continue;
            auto image = root;
            image[i] -= p;
            if (std::any_of(image.begin(), image.end(), [](int x) { return x < 0; })) continue;
            if (found.insert(image).second) queue.push_back(image);
            if (found.size() > 5000) throw std::invalid_argument("Cartan matrix is not of finite type");
        }
    }
    return static_cast<int>(found.size());
}

PctAnalyzer::PctAnalyzer(std::shared_ptr<const ReductionEngine> engine, std::shared_ptr<const QuantumBruhatGraph> qbg)
    : engine_(std::move(engine)), qbg_(std::move(qbg)) {}

std::optional<PositiveCoxeterPair> PctAnalyzer::make_pair(const AffineElement& x, WeylElement v) const {
    const WeylGroup& W = weyl();
    if (!affine().is_length_positive(x, v)) return std::nullopt;
    const WeylElement c = W.mul(W.inverse(v), W.sigma(W.mul(x.w, v)));
    if (!W.is_partial_sigma_coxeter_word(c)) return std::nullopt;
    auto words = W.all_reduced_words(c);
    return PositiveCoxeterPair{x, v, W.sigma_support(c), c, *std::min_element(words.begin(), words.end())};
}

std::vector<PositiveCoxeterPair> PctAnalyzer::positive_coxeter_pairs(const AffineElement& x) const {
    std::vector<PositiveCoxeterPair> out;
    for (WeylElement v : affine().lp_set(x))
        if (auto pair = make_pair(x, v)) out.push_back(std::move(*pair));
    return out;
}

bool PctAnalyzer::has_finite_coxeter_part(const AffineElement& x) const {
    return weyl().is_partial_sigma_coxeter_word(affine().eta_sigma(x));
}

PairTransport PctAnalyzer::transport(const PositiveCoxeterPair& pair, int a) const {
    const WeylGroup& W = weyl();
    const RootDatum& d = datum();
    const AffineElement& x = pair.x;
    const SigmaMove move = affine().simple_sigma_conjugate(x, a);
    const int alpha = d.classical_part(a);
    const int sigma_alpha = d.classical_part(d.sigma_affine(a));
    const WeylElement s_sigma_alpha = W.reflection(d.positive_part(sigma_alpha));

    PairTransport out;
    out.type = move.type;
    out.simple = a;
    if (move.type == MoveType::Up2) throw std::invalid_argument("transport: the move increases the length");

    if (move.type == MoveType::LengthPreserving) {
        const AffineElement& y = move.result;
        std::vector<WeylElement> candidates{W.mul(s_sigma_alpha, pair.v), pair.v};
        const int beta = W.act_root(W.inverse(pair.v), sigma_alpha);
        if (d.is_positive(beta)) {
            for (const auto& word : W.all_reduced_words(pair.c)) {
                WeylElement prefix = W.identity();
                for (int letter : word) {
                    if (W.act_root(prefix, letter) == beta) candidates.push_back(W.mul(pair.v, prefix));
                    prefix = W.mul_simple(prefix, letter);
                }
            }
        }
        for (WeylElement v : candidates) {
            auto next = make_pair(y, v);
            if (next && next->J == pair.J) {
                out.pairs.push_back(std::move(*next));
                return out;
            }
        }
        for (WeylElement v : affine().lp_set(y)) {
            auto next = make_pair(y, v);
            if (next && next->J == pair.J) {
                out.pairs.push_back(std::move(*next));
                out.by_construction = false;
                return out;
            }
        }
        throw InvariantViolation("transport: no positive Coxeter pair with equal support after a length-preserving move");
    }

    // down-2
    const WeylElement target = W.mul(W.inverse(pair.v), W.sigma(W.mul(W.mul(W.reflection(d.positive_part(alpha)), x.w), pair.v)));
    int hits = 0;
    for (std::size_t i = 0; i < pair.c_word.size(); ++i) {
        std::vector<int> shorter = pair.c_word;
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
        if (W.from_word(shorter) == target) {
            out.deleted_position = static_cast<int>(i);
            ++hits;
        }
    }
    if (hits != 1) throw InvariantViolation("transport: the deleted letter is not unique (" + std::to_string(hits) + " matches)");
    const int letter = pair.c_word[out.deleted_position];

    auto one = make_pair(move.left_only, pair.v);
    auto two = make_pair(move.result, W.mul(s_sigma_alpha, pair.v));
    if (!one || !two) throw InvariantViolation("transport: a child of a down-2 move is not a positive Coxeter pair");
    if (one->J != (pair.J & ~d.sigma_closure(1U << letter)))
        throw InvariantViolation("transport: type I child has unexpected support");
    if (!invariants().gamma_equal(lambda_max(*one), lambda_max(pair)))
        throw InvariantViolation("transport: type I child changes the generic class");
    if (!invariants().gamma_equal(lambda_max(*two), minus(lambda_max(pair), d.root(letter).coroot)))
        throw InvariantViolation("transport: type II child does not lower lambda_max by the dropped coroot");
    out.pairs.push_back(std::move(*one));
    out.pairs.push_back(std::move(*two));
    return out;
}

Coweight PctAnalyzer::lambda_max(const PositiveCoxeterPair& pair) const {
    const WeylGroup& W = weyl();
    const WeylElement end = W.sigma(W.mul(pair.x.w, pair.v));
    const auto dw = qbg_->distance_weight(pair.v, end);
    const auto path = qbg_->coxeter_path(pair.v, pair.c_word);
    if (path.vertices.back() != end || path.weight != dw.weight)
        throw InvariantViolation("lambda_max: Coxeter path disagrees with the quantum Bruhat graph");
    return minus(W.act(W.inverse(pair.v), pair.x.mu), qbg_->weight_in_lattice(dw.weight));
}

std::pair<Coweight, WeylElement> PctAnalyzer::lambda_max_over_lp(const AffineElement& x) const {
    const WeylGroup& W = weyl();
    std::vector<std::pair<Coweight, WeylElement>> values;
    for (WeylElement v : affine().lp_set(x)) {
        const auto dw = qbg_->distance_weight(v, W.sigma(W.mul(x.w, v)));
        values.emplace_back(minus(W.act(W.inverse(v), x.mu), qbg_->weight_in_lattice(dw.weight)), v);
    }
    const auto* best = &values.front();
    for (const auto& entry : values)
        if (datum().pairing_2rho(entry.first) > datum().pairing_2rho(best->first)) best = &entry;
    for (const auto& entry : values)
        if (!invariants().gamma_leq(entry.first, best->first))
            throw InvariantViolation("lambda_max over LP(x) has no unique maximum");
    return *best;
}

NewtonExtremes PctAnalyzer::min_and_generic_newton(const PositiveCoxeterPair& pair) const {
    const RootDatum& d = datum();
    NewtonExtremes out;
    const Coweight shifted = weyl().act(weyl().inverse(pair.v), pair.x.mu);
    out.minimum_by_projection = d.pi_J(to_rational(shifted), pair.J);
    out.minimum = {invariants().kappa(pair.x), d.dominant_rep(out.minimum_by_projection).first};
    out.lambda_max = lambda_max(pair);
    std::tie(out.lambda_max_over_lp, out.lp_argmax) = lambda_max_over_lp(pair.x);
    return out;
}

std::optional<std::vector<Integer>> PctAnalyzer::cone_membership(const Coweight& lambda, const Coweight& lambda2,
                                                                 IndexSet J) const {
    const RootDatum& d = datum();
    const auto& coinv = d.coinvariants();
    std::vector<std::vector<Integer>> generators;
    std::size_t orbit_count = 0;
    for (IndexSet orbit : d.sigma_orbits()) {
        if ((orbit & J) != orbit) continue;
        generators.push_back(coinv.project(d.root(__builtin_ctz(orbit)).coroot));
        ++orbit_count;
    }
    const auto& diag = coinv.snf_diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 0) continue;
        std::vector<Integer> g(diag.size(), 0);
        g[i] = diag[i];
        generators.push_back(std::move(g));
    }
    const auto target = coinv.project(minus(lambda2, lambda));
    auto solution = solve_in_cone(target, generators, CoeffDomain::Integers);
    if (!solution) return std::nullopt;
    std::vector<Integer> coeffs(solution->begin(), solution->begin() + static_cast<std::ptrdiff_t>(orbit_count));
    for (const auto& c : coeffs)
        if (c < 0) return std::nullopt;
    return coeffs;
}

BgxReport PctAnalyzer::bgx_report(const AffineElement& x) const {
    auto pairs = positive_coxeter_pairs(x);
    if (pairs.empty()) throw ComputationError("element is not of positive Coxeter type");
    BgxReport report = bgx_report(pairs.front());
    report.all_pairs = std::move(pairs);
    return report;
}

BgxReport PctAnalyzer::bgx_report(const PositiveCoxeterPair& pair) const {
    const RootDatum& d = datum();
    const BGInvariants& bg = invariants();
    const AffineWeylGroup& A = affine();
    const AffineElement& x = pair.x;
    const std::int64_t length = A.length(x);
    const int coxeter_length = weyl().length(pair.c);

    BgxReport report;
    report.pair = pair;
    report.lambda_max = lambda_max(pair);
    report.b_max = {bg.kappa(x), d.conv(to_rational(report.lambda_max))};
    if (!bg.gamma_equal(bg.lambda(report.b_max).representative, report.lambda_max))
        report.mismatches.push_back("lambda(b_max) differs from v^{-1}mu - wt(v => sigma(wv))");
    report.b_min = bg.class_of(x);
    const Coweight shifted = weyl().act(weyl().inverse(pair.v), x.mu);
    if (d.pi_J(to_rational(shifted), pair.J) != report.b_min.nu)
        report.mismatches.push_back("nu(b_min) differs from pi_J(v^{-1}mu)");

    // classes b whose lambda-invariant lies in lambda_max - (non-negative J-coroot cone) in X_Gamma
    auto candidates = [&](IndexSet support, std::int64_t total) {
        std::vector<IndexSet> orbits;
        for (IndexSet o : d.sigma_orbits())
            if ((o & support) == o) orbits.push_back(o);
        std::map<BGClass, std::pair<Coweight, std::vector<std::int64_t>>> found;
        for_each_bounded(orbits.size(), total, [&](const std::vector<std::int64_t>& c) {
            Coweight lambda = report.lambda_max;
            for (std::size_t k = 0; k < orbits.size(); ++k)
                lambda = plus_scaled(lambda, d.root(__builtin_ctz(orbits[k])).coroot, -c[k]);
            BGClass b{bg.kappa(lambda), d.conv(to_rational(lambda))};
            if (!bg.gamma_equal(bg.lambda(b).representative, lambda)) return;
            found.emplace(std::move(b), std::make_pair(lambda, c));
        });
        return found;
    };

    const auto members = candidates(pair.J, length / 2);
    const Rational span_to_min = d.pairing_rho(to_rational(minus(report.lambda_max, bg.lambda(report.b_min).representative)));
    const std::int64_t interval_total = std::max<std::int64_t>(length / 2, exact_integer(span_to_min, "<lambda_max - lambda(b_min), rho>"));
    for (const auto& [b, entry] : candidates(d.all_simple(), interval_total))
        if (bg.leq(report.b_min, b) && bg.leq(b, report.b_max)) report.interval.push_back(b);

    std::vector<BGClass> member_classes;
    for (const auto& [b, entry] : members) {
        const auto& [lambda, coeffs] = entry;
        member_classes.push_back(b);
        ClassRow row;
        row.b = b;
        row.lambda = lambda;
        auto witness = cone_membership(lambda, report.lambda_max, pair.J);
        if (!witness) {
            report.mismatches.push_back("cone membership has no witness for " + bg.format(b));
        } else {
            row.membership = *witness;
            for (std::size_t k = 0; k < coeffs.size(); ++k)
                if (row.membership[k] != coeffs[k]) report.mismatches.push_back("cone witness differs from the enumeration");
        }
        row.defect = bg.defect(b);
        const IndexSet I_nu = bg.I_nu(b);
        row.I_one = bg.I_one(b);
        row.J_b = pair.J & I_nu;
        row.type_one = d.orbit_count(pair.J & ~I_nu);
        row.type_two = static_cast<int>(exact_integer(d.pairing_rho(to_rational(minus(report.lambda_max, lambda))), "l_II"));
        const Rational nu_2rho = d.pairing_2rho(b.nu);
        row.type_two_by_length = static_cast<int>(exact_integer(
            (Rational(length - d.orbit_count(pair.J)) - nu_2rho + Rational(row.defect)) / 2, "l_II by length"));
        row.dimension = exact_integer((Rational(length + coxeter_length) - nu_2rho - Rational(row.defect)) / 2, "dimension");
        row.endpoint_length = exact_integer(nu_2rho + Rational(d.orbit_count(row.J_b & ~row.I_one)), "endpoint length");
        if (row.type_two != row.type_two_by_length)
            report.mismatches.push_back("l_II formulas disagree for " + bg.format(b));
        const Rational path_dim = Rational(row.type_one + row.type_two + row.endpoint_length) - nu_2rho;
        if (path_dim != Rational(row.dimension))
            report.mismatches.push_back("dimension differs from the path statistic for " + bg.format(b));
        report.rows.push_back(std::move(row));
    }
    std::sort(report.interval.begin(), report.interval.end());
    report.interval_matches = member_classes == report.interval;

    const std::size_t before = report.mismatches.size();
    const auto tree = engine_->bgx(x);
    if (tree.size() != report.rows.size())
        report.mismatches.push_back("tree has " + std::to_string(tree.size()) + " classes, the formula " +
                                    std::to_string(report.rows.size()));
    for (const auto& row : report.rows) {
        auto it = tree.find(row.b);
        if (it == tree.end()) {
            report.mismatches.push_back("class " + bg.format(row.b) + " is not a tree endpoint");
            continue;
        }
        if (it->second.size() != 1) {
            report.mismatches.push_back("class " + bg.format(row.b) + " has " + std::to_string(it->second.size()) + " tree paths");
            continue;
        }
        const auto& s = it->second.front();
        if (s.type_one != row.type_one || s.type_two != row.type_two || s.endpoint_length != row.endpoint_length ||
            s.dimension != row.dimension)
            report.mismatches.push_back("tree path statistics differ for " + bg.format(row.b));
    }
    report.tree_matches = report.mismatches.size() == before;
    return report;
}

WeylElement PctAnalyzer::j_truncation(const std::vector<int>& c_word, IndexSet J_prime) const {
    const WeylGroup& W = weyl();
    if (!datum().is_sigma_stable(J_prime)) throw std::invalid_argument("j_truncation: subset is not sigma-stable");
    auto truncate = [&](const std::vector<int>& word) {
        std::vector<int> kept;
        for (int letter : word)
            if (contains(J_prime, letter)) kept.push_back(letter);
        return W.from_word(kept);
    };
    const WeylElement out = truncate(c_word);
    if (c_word.size() <= 6)
        for (const auto& word : W.all_reduced_words(W.from_word(c_word)))
            if (truncate(word) != out) throw InvariantViolation("j_truncation depends on the reduced word");
    return out;
}

PointSpace PctAnalyzer::point_space(const std::vector<int>& c_word, IndexSet J_prime, bool literal_tail) const {
    const WeylGroup& W = weyl();
    const RootDatum& d = datum();
    PointSpace out;
    out.c_word = c_word;
    out.J_prime = J_prime;
    out.truncation = j_truncation(c_word, J_prime);
    const int n = d.dim();
    for (int s = 0; s < n; ++s) {
        Coweight e(n, 0);
        e[s] = 1;
        Coweight rel = minus(e, d.sigma(W.act(out.truncation, e)));
        if (std::any_of(rel.begin(), rel.end(), [](std::int64_t v) { return v != 0; })) out.relations.push_back(rel);
    }
    const WeylElement c = W.from_word(c_word);
    std::size_t last_kept = c_word.size();
    for (std::size_t l = 0; l < c_word.size(); ++l)
        if (contains(J_prime, c_word[l])) last_kept = l;
    WeylElement prefix = W.identity();
    for (std::size_t l = 0; l < c_word.size(); ++l) {
        const int letter = c_word[l];
        if (contains(J_prime, letter)) {
            prefix = W.mul_simple(prefix, letter);
            continue;
        }
        const bool tail = last_kept < c_word.size() && l > last_kept;
        const WeylElement rotate = literal_tail && tail ? c : prefix;
        out.relations.push_back(d.sigma(W.act(rotate, d.root(letter).coroot)));
    }
    out.quotient = QuotientPresentation::from_int64(static_cast<std::size_t>(n), out.relations);
    return out;
}

bool PctAnalyzer::point_space_rules_agree(const std::vector<int>& c_word, IndexSet J_prime) const {
    const PointSpace uniform = point_space(c_word, J_prime, false);
    const PointSpace literal = point_space(c_word, J_prime, true);
    auto inside = [](const PointSpace& a, const PointSpace& b) {
        for (const auto& rel : a.relations)
            if (!b.quotient.is_zero(to_integer(rel))) return false;
        return true;
    };
    return inside(uniform, literal) && inside(literal, uniform);
}

std::vector<Integer> PctAnalyzer::j_point(const PositiveCoxeterPair& pair) const {
    return j_point_image(pair, pair.J);
}

std::vector<Integer> PctAnalyzer::j_point_image(const PositiveCoxeterPair& pair, IndexSet J_prime) const {
    const Coweight point = datum().sigma(weyl().act(weyl().inverse(pair.v), pair.x.mu));
    return point_space(pair.c_word, J_prime).quotient.project(point);
}

EndpointCertificate PctAnalyzer::endpoint_class(const PositiveCoxeterPair& pair, const BGClass& b) const {
    const RootDatum& d = datum();
    const BGInvariants& bg = invariants();
    EndpointCertificate cert;
    cert.b = b;
    cert.J_b = pair.J & bg.I_nu(b);
    const PointSpace space = point_space(pair.c_word, cert.J_b);
    cert.truncation = space.truncation;

    const Coweight lambda_b = bg.lambda(b).representative;
    const Coweight point = d.sigma(weyl().act(weyl().inverse(pair.v), pair.x.mu));
    // lambda = lambda_b + sum y_j g_j with g_j spanning Z Phi^v_{J(b)} + (1 - sigma)X,
    // and lambda - point in the relation lattice of X(c, J(b))
    std::vector<Coweight> shifts;
    for (int i = 0; i < d.rank(); ++i)
        if (contains(cert.J_b, i)) shifts.push_back(d.root(i).coroot);
    for (int s = 0; s < d.dim(); ++s) {
        Coweight e(d.dim(), 0);
        e[s] = 1;
        Coweight g = minus(e, d.sigma(e));
        if (std::any_of(g.begin(), g.end(), [](std::int64_t v) { return v != 0; })) shifts.push_back(g);
    }
    std::vector<std::vector<Integer>> generators;
    for (const auto& g : shifts) generators.push_back(to_integer(g));
    for (const auto& r : space.relations) {
        Coweight negated = r;
        for (auto& v : negated) v = -v;
        generators.push_back(to_integer(negated));
    }
    auto solution = solve_in_cone(to_integer(minus(point, lambda_b)), generators, CoeffDomain::Integers);
    if (!solution) throw ComputationError("endpoint congruences are infeasible for class " + bg.format(b));
    cert.lambda = lambda_b;
    for (std::size_t j = 0; j < shifts.size(); ++j)
        cert.lambda = plus_scaled(cert.lambda, shifts[j], static_cast<std::int64_t>((*solution)[j]));
    cert.element = {cert.truncation, cert.lambda};
    cert.key = engine_->class_key(cert.element);
    return cert;
}

Characterization PctAnalyzer::characterize(const AffineElement& x) const {
    const RootDatum& d = datum();
    const BGInvariants& bg = invariants();
    const AffineWeylGroup& A = affine();
    Characterization out;
    out.condition_one = weyl().sigma_conjugate_to_partial_coxeter(x.w);

    const ReductionTree tree = engine_->build_tree(x);
    int node = 0, type_two = 0;
    while (tree.nodes[node].simple >= 0) {
        node = tree.nodes[node].child_two;
        ++type_two;
    }
    const AffineElement& end = tree.nodes[node].element;
    const BGClass b = bg.class_of(x);
    if (bg.class_of(end) != b) throw InvariantViolation("the type II path does not end in the class of x");
    out.path_dimension = exact_integer(Rational(type_two + A.length(end)) - d.pairing_2rho(b.nu), "path dimension");

    const Rational base = Rational(A.length(x)) - d.pairing_2rho(b.nu) - Rational(bg.defect(b));
    for (WeylElement v : A.lp_set(x)) {
        const WeylElement c = weyl().mul(weyl().inverse(v), weyl().sigma(weyl().mul(x.w, v)));
        if ((base + weyl().length(c)) / 2 == Rational(out.path_dimension)) {
            out.condition_two = true;
            out.witness = v;
            break;
        }
    }
    return out;
}

MinimalLengthComparison PctAnalyzer::min_length_pct(const AffineElement& x) const {
    if (!engine_->is_minimal(x)) throw std::invalid_argument("min_length_pct: element is not of minimal length in its class");
    return {weyl().sigma_conjugate_to_partial_coxeter(x.w), !positive_coxeter_pairs(x).empty()};
}

LargeSupportResult PctAnalyzer::large_support_check(const PositiveCoxeterPair& pair) const {
    const IndexSet I = invariants().I_nu(invariants().class_of(pair.x));
    LargeSupportResult out;
    out.hypothesis = true;
    for (IndexSet comp : datum().sigma_connected_components(I))
        if ((comp & ~pair.J) == 0) out.hypothesis = false;
    if (out.hypothesis) out.minimal = engine_->is_minimal(pair.x);
    return out;
}

std::optional<WeylElement> PctAnalyzer::support_conjugator(IndexSet J1, IndexSet J2, IndexSet I) const {
    const WeylGroup& W = weyl();
    if (set_size(J1) != set_size(J2)) return std::nullopt;
    for (WeylElement n : W.parabolic_elements(I)) {
        if (W.sigma(n) != n) continue;
        bool ok = true;
        for (int j = 0; j < datum().rank() && ok; ++j) {
            if (!contains(J1, j)) continue;
            const int image = W.act_root(n, j);
            ok = image < datum().rank() && contains(J2, image);
        }
        if (ok) return n;
    }
    return std::nullopt;
}

LeviDiagram PctAnalyzer::levi_diagram(IndexSet J) const {
    const RootDatum& d = datum();
    LeviDiagram out;
    out.J = J;
    for (int i = 0; i < d.rank(); ++i)
        if (contains(J, i)) {
            out.nodes.push_back({i, 0});
            out.labels.push_back(i + 1);
        }
    int component = 0;
    for (IndexSet comp : connected_components(d, J)) {
        int highest = -1;
        for (int r = 0; r < d.num_positive(); ++r) {
            bool inside = true;
            for (int i = 0; i < d.rank(); ++i)
                if (d.root(r).coeffs[i] != 0 && !contains(comp, i)) inside = false;
            if (inside && (highest < 0 || d.root(r).height > d.root(highest).height)) highest = r;
        }
        out.nodes.push_back({d.negate(highest), 1});
        out.labels.push_back(-component);
        ++component;
    }
    const std::size_t n = out.nodes.size();
    out.cartan.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.cartan[i][j] = static_cast<int>(d.pairing(d.root(out.nodes[i].root).coroot, out.nodes[j].root));
    return out;
}

std::vector<int> PctAnalyzer::node_permutation(const LeviDiagram& diagram, const AffineElement& tau) const {
    const RootDatum& d = datum();
    std::vector<int> out;
    for (const auto& node : diagram.nodes) {
        const AffineRoot image = affine().act(tau, {d.sigma_root(node.root), node.level});
        auto it = std::find(diagram.nodes.begin(), diagram.nodes.end(), image);
        if (it == diagram.nodes.end()) throw InvariantViolation("Ad(tau) o sigma does not preserve the affine diagram");
        out.push_back(static_cast<int>(it - diagram.nodes.begin()));
    }
    return out;
}

std::vector<std::vector<int>> PctAnalyzer::very_special_subsets(const LeviDiagram& diagram, const AffineElement& tau,
                                                                int* longest_length) const {
    const auto perm = node_permutation(diagram, tau);
    const std::size_t n = diagram.nodes.size();
    // each component of the affine diagram: its finite nodes plus its affine node
    const auto comps = connected_components(datum(), diagram.J);
    std::vector<std::uint32_t> full_components;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        std::uint32_t mask = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (diagram.nodes[k].level == 0 && contains(comps[c], diagram.nodes[k].root)) mask |= 1U << k;
        mask |= 1U << (n - comps.size() + c);
        full_components.push_back(mask);
    }
    std::vector<std::vector<int>> best;
    int best_length = -1;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        bool stable = true;
        for (std::size_t k = 0; k < n; ++k)
            if (contains(mask, static_cast<int>(k)) && !contains(mask, perm[k])) stable = false;
        if (!stable) continue;
        if (std::any_of(full_components.begin(), full_components.end(), [&](std::uint32_t f) { return (mask & f) == f; }))
            continue;
        std::vector<int> subset;
        for (std::size_t k = 0; k < n; ++k)
            if (contains(mask, static_cast<int>(k))) subset.push_back(static_cast<int>(k));
        std::vector<std::vector<int>> sub(subset.size(), std::vector<int>(subset.size()));
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = 0; b < subset.size(); ++b) sub[a][b] = diagram.cartan[subset[a]][subset[b]];
        const int len = subset.empty() ? 0 : count_positive_roots(sub);
        if (len > best_length) {
            best_length = len;
            best.clear();
        }
        if (len == best_length) best.push_back(std::move(subset));
    }
    if (longest_length) *longest_length = best_length;
    return best;
}

VerySpecialData PctAnalyzer::very_special_data(const PositiveCoxeterPair& pair, const BGClass& b) const {
    const RootDatum& d = datum();
    const WeylGroup& W = weyl();
    const AffineWeylGroup& A = affine();
    const BGInvariants& bg = invariants();
    const IndexSet J_b = pair.J & bg.I_nu(b);
    const LeviDiagram diagram = levi_diagram(J_b);

    // the tree endpoint in b, moved into the Levi
    const ReductionTree tree = engine_->build_tree(pair.x);
    std::optional<AffineElement> endpoint;
    for (int leaf : tree.leaves())
        if (bg.class_of(tree.nodes[leaf].element) == b) endpoint = tree.nodes[leaf].element;
    if (!endpoint) throw ComputationError("class is not an endpoint of the reduction tree");
    std::optional<PositiveCoxeterPair> end_pair;
    for (auto& p : positive_coxeter_pairs(*endpoint))
        if (p.J == J_b) {
            end_pair = std::move(p);
            break;
        }
    if (!end_pair) throw InvariantViolation("endpoint has no positive Coxeter pair with support J(b)");
    WeylElement u = W.mul(endpoint->w, end_pair->v);
    for (bool moved = true; moved;) {
        moved = false;
        for (int j = 0; j < d.rank(); ++j)
            if (contains(J_b, j) && W.length(W.mul_simple(u, j)) < W.length(u)) {
                u = W.mul_simple(u, j);
                moved = true;
            }
    }
    const AffineElement inside = A.sigma_conjugate(*endpoint, A.finite(u));
    if (!W.in_parabolic(inside.w, J_b)) throw InvariantViolation("endpoint is not an alcove element for J(b)");

    auto reflection = [&](const AffineRoot& node) {
        const int root = d.positive_part(node.root);
        Coweight shift(d.dim(), 0);
        shift = plus_scaled(shift, d.root(node.root).coroot, node.level);
        return A.mul(A.finite(W.reflection(root)), A.translation(shift));
    };
    // peel simple reflections of the Levi off the left until length zero
    AffineElement tau = inside;
    std::vector<int> word;
    for (bool moved = true; moved;) {
        moved = false;
        const AffineElement inv = A.inverse(tau);
        for (std::size_t k = 0; k < diagram.nodes.size(); ++k)
            if (!d.is_positive(A.act(inv, diagram.nodes[k]))) {
                tau = A.mul(reflection(diagram.nodes[k]), tau);
                word.push_back(static_cast<int>(k));
                moved = true;
                break;
            }
    }
    auto matches = [&](const AffineElement& t) {
        return bg.kappa(t) == b.kappa && bg.newton_data(t).raw == b.nu;
    };
    bool from_endpoint = matches(tau);
    if (!from_endpoint) {
        Rational largest = 0;
        for (const auto& q : b.nu) largest = std::max(largest, q < 0 ? Rational(-q) : q);
        const std::int64_t bound =
            static_cast<std::int64_t>(boost::multiprecision::numerator(largest) / boost::multiprecision::denominator(largest)) + 2;
        std::optional<AffineElement> found;
        for (WeylElement w : W.parabolic_elements(J_b)) {
            Coweight mu(d.dim(), -bound);
            while (!found) {
                AffineElement t{w, mu};
                const AffineElement inv = A.inverse(t);
                bool zero = std::all_of(diagram.nodes.begin(), diagram.nodes.end(),
                                        [&](const AffineRoot& node) { return d.is_positive(A.act(inv, node)); });
                if (zero && matches(t)) found = t;
                int s = 0;
                while (s < d.dim() && mu[s] == bound) mu[s++] = -bound;
                if (s == d.dim()) break;
                ++mu[s];
            }
            if (found) break;
        }
        if (!found) throw ComputationError("no length-zero element of the Levi matches the class");
        tau = *found;
    }

    VerySpecialData out;
    out.tau = tau;
    out.permutation = node_permutation(diagram, tau);
    out.all_very_special = very_special_subsets(diagram, tau, &out.longest_length);
    out.K = out.all_very_special.front();
    if (from_endpoint) {
        std::vector<int> support(word);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        // the word must use each orbit of its support exactly once
        std::set<std::set<int>> orbits;
        for (int k : support) {
            std::set<int> orbit{k};
            for (int next = out.permutation[k]; next != k; next = out.permutation[next]) orbit.insert(next);
            orbits.insert(orbit);
        }
        std::size_t covered = 0;
        for (const auto& orbit : orbits) covered += orbit.size();
        const bool coxeter = covered == support.size() && orbits.size() == word.size();
        auto it = std::find(out.all_very_special.begin(), out.all_very_special.end(), support);
        if (coxeter && it != out.all_very_special.end()) {
            out.K = *it;
            // inside = r_{k_1} ... r_{k_n} tau
            out.coxeter_word = word;
        }
    }
    return out;
}

nlohmann::json PctAnalyzer::pair_json(const PositiveCoxeterPair& pair) const {
    return {{"x", affine().to_json(pair.x)},
            {"v", one_based(weyl().reduced_word(pair.v))},
            {"J", format_index_set(pair.J)},
            {"c", one_based(pair.c_word)}};
}

nlohmann::json PctAnalyzer::report_json(const BgxReport& report) const {
    const BGInvariants& bg = invariants();
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.all_pairs) pairs.push_back(pair_json(p));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"class", bg.to_json(row.b)},
                        {"membership", {{"lambda", row.lambda}, {"orbit_coefficients", integer_vector_json(row.membership)}}},
                        {"dimension", row.dimension},
                        {"defect", row.defect},
                        {"type_I", row.type_one},
                        {"type_II", row.type_two},
                        {"type_II_by_length", row.type_two_by_length},
                        {"endpoint", {{"support", format_index_set(row.J_b)},
                                      {"I_1", format_index_set(row.I_one)},
                                      {"length", row.endpoint_length}}}});
    }
    nlohmann::json interval = nlohmann::json::array();
    for (const auto& b : report.interval) interval.push_back(bg.to_json(b));
    return {{"pair", pair_json(report.pair)},
            {"pairs", pairs},
            {"lambda_max", report.lambda_max},
            {"b_min", bg.to_json(report.b_min)},
            {"b_max", bg.to_json(report.b_max)},
            {"classes", rows},
            {"interval", interval},
            {"interval_matches", report.interval_matches},
            {"tree_matches", report.tree_matches},
            {"mismatches", report.mismatches}};
}

nlohmann::json PctAnalyzer::certificate_json(const EndpointCertificate& cert) const {
    return {{"class", invariants().to_json(cert.b)},
            {"support", format_index_set(cert.J_b)},
            {"truncation", one_based(weyl().reduced_word(cert.truncation))},
            {"lambda", cert.lambda},
            {"element", affine().to_json(cert.element)},
            {"key", engine_->key_json(cert.key)}};
}

}  // namespace adlv
