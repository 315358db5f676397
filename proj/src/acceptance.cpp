#include "adlv/acceptance.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#ifndef ADLV_DATA_DIR
#define ADLV_DATA_DIR "data"
#endif

namespace adlv {

bool ElementReport::consistent() const {
    return characterization && polynomials_match && one_path_per_class && interval_matches && newton_extremes_match &&
           endpoints_match;
}

ElementReport analyze_element(const Workspace& ws, const AffineElement& x) {
    const PctAnalyzer& P = ws.pct();
    const ReductionEngine& R = ws.reduction();
    const BGInvariants& bg = ws.invariants();
    ElementReport out;
    out.x = x;
    out.length = ws.affine().length(x);
    const auto pairs = P.positive_coxeter_pairs(x);
    out.positive_coxeter = !pairs.empty();
    out.finite_coxeter_part = P.has_finite_coxeter_part(x);
    const Characterization ch = P.characterize(x);
    out.characterization = ch.result() == out.positive_coxeter;
    if (!out.characterization) out.messages.push_back("characterization disagrees with the pair search");

    const ReductionTree tree = R.build_tree(x);
    const auto polys = R.class_polynomials(tree);
    const auto paths = R.bgx_from_tree(tree);
    nlohmann::json poly_json = nlohmann::json::array();
    for (const auto& [key, f] : polys)
        poly_json.push_back({{"class", R.key_json(key)}, {"coefficients", f.coeffs()}});
    out.detail = {{"x", ws.affine().to_json(x)},
                  {"length", out.length},
                  {"positive_coxeter", out.positive_coxeter},
                  {"finite_coxeter_part", out.finite_coxeter_part},
                  {"class_polynomials", poly_json}};
    if (!out.positive_coxeter) return out;

    const BgxReport report = P.bgx_report(pairs.front());
    out.interval_matches = report.interval_matches;
    if (!report.interval_matches) out.messages.push_back("membership set differs from the interval [b_min, b_max]");
    for (const auto& m : report.mismatches) out.messages.push_back(m);
    for (const auto& [b, list] : paths)
        if (list.size() != 1) out.one_path_per_class = false;
    if (paths.size() != report.rows.size()) out.one_path_per_class = false;
    if (!report.tree_matches) out.one_path_per_class = false;

    const NewtonExtremes extremes = P.min_and_generic_newton(pairs.front());
    if (extremes.minimum_by_projection != bg.newton(x)) {
        out.newton_extremes_match = false;
        out.messages.push_back("nu(b_min) differs from pi_J(v^{-1}mu)");
    }
    if (!bg.gamma_equal(bg.lambda(report.b_max).representative, extremes.lambda_max) ||
        !bg.gamma_equal(extremes.lambda_max, extremes.lambda_max_over_lp)) {
        out.newton_extremes_match = false;
        out.messages.push_back("lambda(b_max) differs from the quantum Bruhat graph formula");
    }

    for (const auto& row : report.rows) {
        const Polynomial expected = Polynomial::monomial(row.type_two, row.type_one);
        bool found = false;
        for (const auto& [key, f] : polys) {
            if (key.invariants != row.b) continue;
            found = true;
            if (f != expected) {
                out.polynomials_match = false;
                out.messages.push_back("class polynomial " + f.format() + " differs from " + expected.format());
            }
        }
        if (!found) out.polynomials_match = false;

        const EndpointCertificate cert = P.endpoint_class(pairs.front(), row.b);
        bool matched = false;
        for (int leaf : tree.leaves())
            if (bg.class_of(tree.nodes[leaf].element) == row.b && R.class_key(tree.nodes[leaf].element) == cert.key)
                matched = true;
        if (!matched) {
            out.endpoints_match = false;
            out.messages.push_back("endpoint certificate for " + bg.format(row.b) + " does not match the tree leaf");
        }
    }
    out.detail["report"] = P.report_json(report);
    return out;
}

nlohmann::json element_report_json(const Workspace& /*ws*/, const ElementReport& report) {
    nlohmann::json j = report.detail;
    j["consistent"] = report.consistent();
    j["messages"] = report.messages;
    return j;
}

std::vector<AffineElement> scan_elements(const Workspace& ws, int max_length) {
    return ws.affine().enumerate(ws.affine().omega_elements(1), max_length);
}

std::string default_data_dir() {
    if (const char* env = std::getenv("ADLV_DATA_DIR")) return env;
    return ADLV_DATA_DIR;
}

namespace {

const char* criterion_title(int id) {
    static const char* titles[] = {"",
                                   "quantum Bruhat graph weights are well defined",
                                   "SL2 golden chain for s1 s0 s1",
                                   "class polynomials have the closed form",
                                   "B(G)_x is the saturated interval",
                                   "class polynomials do not depend on the tree",
                                   "worked examples",
                                   "reflection length detects partial sigma-Coxeter elements",
                                   "minimal length: positive Coxeter type iff partial sigma-Coxeter finite part",
                                   "converse characterization",
                                   "endpoint certificates match tree leaves"};
    return id >= 1 && id <= kCriterionCount ? titles[id] : "";
}

struct Check {
    std::ostringstream failures;
    int failed = 0;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        if (failed++ < 4) failures << (failed > 1 ? "; " : "") << what;
    }
    CriterionResult finish(int id, std::string title, const std::string& summary) const {
        CriterionResult r;
        r.id = id;
        r.title = std::move(title);
        r.pass = failed == 0;
        r.detail = failed == 0 ? summary : std::to_string(failed) + " failure(s): " + failures.str();
        return r;
    }
};

std::shared_ptr<Workspace> open(const AcceptanceOptions& options, const std::string& name) {
    return Workspace::load(options.data_dir + "/" + name + ".json");
}

CriterionResult qbg_weights(const AcceptanceOptions& options) {
    Check check;
    std::size_t vertices = 0;
    for (const char* name : {"sl2", "sl3", "a3", "b2", "g2", "a3_flip"}) {
        auto ws = open(options, name);
        try {
            ws->qbg().build_all();
            vertices += ws->weyl().order();
        } catch (const InvariantViolation& e) {
            check.expect(false, std::string(name) + ": " + e.what());
        }
    }
    return check.finish(1, criterion_title(1),
                        "all ordered pairs checked over " + std::to_string(vertices) + " vertices in A1, A2, A3, B2, G2, A3 flip");
}

CriterionResult sl2_chain(const AcceptanceOptions& options) {
    Check check;
    auto ws = open(options, "sl2");
    const auto& A = ws->affine();
    const auto& R = ws->reduction();
    const auto& P = ws->pct();
    const auto& bg = ws->invariants();
    const AffineElement x = A.parse(R"({"w":[1],"mu":[1]})");
    check.expect(A.from_affine_word(A.identity(), {0, 1, 0}) == x, "x is not s1 s0 s1");

    const ReductionTree tree = R.build_tree(x);
    std::set<AffineElement> leaves;
    for (int leaf : tree.leaves()) leaves.insert(tree.nodes[leaf].element);
    const std::set<AffineElement> expected_leaves{A.parse(R"({"w":[],"mu":[1]})"), A.parse(R"({"w":[1],"mu":[-1]})")};
    check.expect(leaves == expected_leaves, "tree leaves differ from {eps^alpha, s0}");

    std::set<Polynomial> polys;
    for (const auto& [key, f] : R.class_polynomials(tree)) polys.insert(f);
    check.expect(polys == std::set<Polynomial>{Polynomial::q_minus_one(), Polynomial::q()}, "class polynomials differ from {q-1, q}");

    const BgxReport report = P.bgx_report(x);
    std::set<BGClass> classes;
    std::set<std::pair<int, int>> types;
    for (const auto& row : report.rows) {
        classes.insert(row.b);
        types.insert({row.type_one, row.type_two});
        check.expect(row.dimension == 1, "dimension for " + bg.format(row.b) + " is " + std::to_string(row.dimension) + ", expected 1");
        const EndpointCertificate cert = P.endpoint_class(report.pair, row.b);
        bool matched = false;
        for (int leaf : tree.leaves())
            if (R.class_key(tree.nodes[leaf].element) == cert.key) matched = true;
        check.expect(matched, "endpoint certificate for " + bg.format(row.b) + " matches no leaf");
    }
    const BGClass basic = bg.class_of(A.identity());
    const BGClass translation = bg.class_of(A.translation({1}));
    check.expect(classes == std::set<BGClass>{basic, translation}, "B(G)_x differs from {basic, [eps^alpha]}");
    check.expect(types == std::set<std::pair<int, int>>{{0, 1}, {1, 0}}, "(l_I, l_II) differ from {(0,1), (1,0)}");
    check.expect(report.mismatches.empty(), "report has internal mismatches");
    return check.finish(2, criterion_title(2), "leaves, polynomials, classes, path types, dimensions and endpoints agree");
}

// Shared scan over SL2, SL3, GL3, Sp4 with l(x) <= 6.
struct ScanEntry {
    std::string where;
    ElementReport report;
};

struct ScanSummary {
    std::size_t elements = 0;
    std::size_t positive = 0;
    std::vector<ScanEntry> reports;
};

ScanSummary scan(const AcceptanceOptions& options) {
    ScanSummary out;
    for (const char* name : {"sl2", "sl3", "gl3", "sp4"}) {
        auto ws = open(options, name);
        for (const auto& x : scan_elements(*ws, 6)) {
            ElementReport r = analyze_element(*ws, x);
            ++out.elements;
            if (r.positive_coxeter) ++out.positive;
            out.reports.push_back({std::string(name) + " " + ws->affine().format(x), std::move(r)});
        }
    }
    return out;
}

CriterionResult scan_criterion(int id, const AcceptanceOptions& options) {
    Check check;
    const ScanSummary s = scan(options);
    for (const auto& [where, r] : s.reports) {
        switch (id) {
            case 3:
                if (!r.positive_coxeter) break;
                check.expect(r.polynomials_match, where + ": class polynomial not of the closed form");
                check.expect(r.one_path_per_class, where + ": not exactly one tree path per class");
                break;
            case 4:
                if (!r.positive_coxeter) break;
                check.expect(r.interval_matches, where + ": membership set is not the interval");
                check.expect(r.newton_extremes_match, where + ": b_min or b_max formula fails");
                break;
            case 9:
                check.expect(r.characterization, where + ": characterization disagrees with the pair search");
                break;
            case 10:
                if (!r.positive_coxeter) break;
                check.expect(r.endpoints_match, where + ": endpoint certificate differs from the tree leaf");
                break;
            default:
                break;
        }
    }
    return check.finish(id, criterion_title(id),
                        std::to_string(s.positive) + " positive Coxeter elements among " + std::to_string(s.elements) +
                            " with length <= 6 in SL2, SL3, GL3, Sp4");
}

CriterionResult tree_independence(const AcceptanceOptions& options) {
    Check check;
    std::size_t count = 0;
    for (const char* name : {"sl2", "sl3"}) {
        auto ws = open(options, name);
        const auto& R = ws->reduction();
        for (const auto& x : scan_elements(*ws, 7)) {
            ++count;
            const auto reference = R.class_polynomials(R.build_tree(x, TreePolicy::seeded(1)));
            for (std::uint64_t seed : {2, 3})
                check.expect(R.class_polynomials(R.build_tree(x, TreePolicy::seeded(seed))) == reference,
                             std::string(name) + " " + ws->affine().format(x) + ": seed " + std::to_string(seed) + " differs");
        }
    }
    return check.finish(5, criterion_title(5),
                        "3 seeded trees agree on " + std::to_string(count) + " elements of length <= 7 in SL2, SL3");
}

std::optional<AffineElement> omega_with_node_image(const Workspace& ws, int from_label, int to_label) {
    const auto& d = ws.datum();
    for (const auto& tau : ws.affine().omega_elements(1)) {
        auto image = d.find_affine_simple(ws.affine().act(tau, d.affine_simple(d.affine_index(from_label))));
        if (image && d.affine_label(*image) == to_label) return tau;
    }
    return std::nullopt;
}

CriterionResult worked_examples(const AcceptanceOptions& options) {
    Check check;
    {
        auto ws = open(options, "gl3");
        int with = 0;
        for (int a = 0; a < ws->affine().num_simple(); ++a)
            if (ws->pct().has_finite_coxeter_part(ws->affine().simple_reflection(a))) ++with;
        check.expect(with == 2, "GL3: " + std::to_string(with) + " simple affine reflections have finite Coxeter part");
    }
    {
        auto ws = open(options, "c2_adjoint");
        const auto& A = ws->affine();
        auto tau = omega_with_node_image(*ws, 0, 2);
        check.expect(tau.has_value(), "C2: no length-zero element swapping 0 and 2");
        if (tau) {
            check.expect(ws->pct().has_finite_coxeter_part(A.mul(*tau, A.simple_reflection(1))), "C2: tau s2 lacks finite Coxeter part");
            check.expect(!ws->pct().has_finite_coxeter_part(A.mul(*tau, A.simple_reflection(0))), "C2: tau s1 has finite Coxeter part");
            const auto& P = ws->pct();
            const LeviDiagram diagram = P.levi_diagram(ws->datum().all_simple());
            const auto subsets = P.very_special_subsets(diagram, *tau);
            auto node = [&](int label) { return ws->datum().affine_index(label); };
            const std::vector<int> zero_two{std::min(node(0), node(2)), std::max(node(0), node(2))};
            const bool has_zero_two = std::find(subsets.begin(), subsets.end(), zero_two) != subsets.end();
            const bool has_two = std::find(subsets.begin(), subsets.end(), std::vector<int>{node(2)}) != subsets.end();
            check.expect(has_zero_two && !has_two, "C2: very special subsets are not as expected");
        }
    }
    {
        auto ws = open(options, "a5_adjoint");
        const auto& A = ws->affine();
        const auto& W = ws->weyl();
        auto tau = omega_with_node_image(*ws, 0, 3);
        check.expect(tau.has_value(), "A5: no tau_3");
        if (tau) {
            const AffineElement x = A.mul(*tau, A.simple_reflection(0));
            const auto pairs = ws->pct().positive_coxeter_pairs(x);
            auto support_of = [&](std::vector<int> word) -> std::optional<IndexSet> {
                for (auto& letter : word) --letter;
                const WeylElement v = W.from_word(word);
                for (const auto& p : pairs)
                    if (p.v == v) return p.J;
                return std::nullopt;
            };
            auto first = support_of({3, 4, 2});
            auto second = support_of({5, 2, 3, 4, 3, 1, 2});
            check.expect(first && *first == 0b10111U, "A5: pair for s3 s4 s2 missing or support is not {1,2,3,5}");
            check.expect(second && *second == 0b11101U, "A5: pair for s5 s2 s3 s4 s3 s1 s2 missing or support is not {1,3,4,5}");
            const BGClass b = ws->invariants().class_of(x);
            check.expect(ws->invariants().I_one(b) == 0b10101U, "A5: I_1(b) is not {1,3,5}");
            check.expect(ws->invariants().I_nu(b) == 0b11111U, "A5: I(nu(b)) is not {1,...,5}");
        }
    }
    {
        auto ws = open(options, "e6_adjoint");
        std::optional<AffineElement> tau;
        for (const auto& t : ws->affine().omega_elements(1))
            if (t != ws->affine().identity()) {
                tau = t;
                break;
            }
        check.expect(tau.has_value(), "E6: no length-zero element");
        if (tau) {
            const auto& P = ws->pct();
            const LeviDiagram diagram = P.levi_diagram(ws->datum().all_simple());
            const auto subsets = P.very_special_subsets(diagram, *tau);
            std::vector<int> expected;
            for (int label : {2, 3, 4, 5}) expected.push_back(ws->datum().affine_index(label));
            std::sort(expected.begin(), expected.end());
            check.expect(subsets == std::vector<std::vector<int>>{expected}, "E6: {2,3,4,5} is not the unique very special subset");
        }
    }
    return check.finish(6, criterion_title(6), "GL3 reflections, C2 twisted elements, A5 pairs, C2/E6 very special subsets");
}

CriterionResult reflection_length(const AcceptanceOptions& options) {
    Check check;
    std::size_t count = 0;
    for (const char* name : {"sl2", "sl3", "a2_flip", "a3", "a3_flip", "b2", "g2"}) {
        auto ws = open(options, name);
        const auto& W = ws->weyl();
        for (std::size_t id = 0; id < W.order(); ++id) {
            const WeylElement w = W.element(id);
            ++count;
            check.expect((W.reflection_length_sigma(w) == W.length(w)) == W.is_partial_sigma_coxeter_word(w),
                         std::string(name) + " " + W.format(w));
        }
    }
    return check.finish(7, criterion_title(7),
                        std::to_string(count) + " elements in A1, A2, A2 flip, A3, A3 flip, B2, G2");
}

CriterionResult minimal_length(const AcceptanceOptions& options) {
    Check check;
    std::size_t count = 0;
    for (const char* name : {"sl2", "sl3", "sp4"}) {
        auto ws = open(options, name);
        for (const auto& x : scan_elements(*ws, 5)) {
            if (!ws->reduction().is_minimal(x)) continue;
            ++count;
            check.expect(ws->pct().min_length_pct(x).agree(), std::string(name) + " " + ws->affine().format(x));
        }
    }
    return check.finish(8, criterion_title(8),
                        std::to_string(count) + " minimal elements of length <= 5 in SL2, SL3, Sp4");
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
        switch (id) {
            case 1: result = qbg_weights(options); break;
            case 2: result = sl2_chain(options); break;
            case 3:
            case 4:
            case 9:
            case 10: result = scan_criterion(id, options); break;
            case 5: result = tree_independence(options); break;
            case 6: result = worked_examples(options); break;
            case 7: result = reflection_length(options); break;
            case 8: result = minimal_length(options); break;
            default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        result.id = id;
        result.title = criterion_title(id);
        result.pass = false;
        result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
    return out;
}

std::string format_result(const CriterionResult& result) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "criterion " << result.id << " " << (result.pass ? "PASS" : "FAIL") << ": " << result.title << " -- "
        << result.detail << " (" << result.seconds << " s)";
    return out.str();
}

}  // namespace adlv
