#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace adlv;
using adlv::testing::element;
using adlv::testing::workspace;

namespace {

std::vector<Polynomial> sorted_values(const std::map<ClassKey, Polynomial>& polys) {
    std::vector<Polynomial> out;
    for (const auto& [key, p] : polys) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<AffineElement> sample(const Workspace& ws, int max_length) {
    return ws.affine().enumerate(ws.affine().omega_elements(1), max_length);
}

}  // namespace

TEST(Polynomial, Arithmetic) {
    EXPECT_EQ(Polynomial::monomial(1, 1).coeffs(), (std::vector<std::int64_t>{0, -1, 1}));
    EXPECT_EQ(Polynomial::monomial(0, 0), Polynomial::constant(1));
    EXPECT_EQ((Polynomial::q() * Polynomial::q_minus_one()), Polynomial::monomial(1, 1));
    EXPECT_EQ((Polynomial::q() + Polynomial::constant(-1)), Polynomial::q_minus_one());
    EXPECT_EQ(Polynomial::monomial(2, 1).evaluate(3), 18);
    EXPECT_EQ(Polynomial::q().in_q_minus_one_basis(), (std::vector<std::int64_t>{1, 1}));
    EXPECT_TRUE((Polynomial::q() + Polynomial::constant(0) * Polynomial::q()).coeffs().size() == 2);
    EXPECT_TRUE(Polynomial({0, 0}).is_zero());
}

TEST(Reduction, Sl2GoldenTree) {
    const auto& ws = workspace("sl2");
    const auto& A = ws.affine();
    const auto& R = ws.reduction();
    auto x = element(ws, R"({"w":[1],"mu":[1]})");
    auto tree = R.build_tree(x);
    const auto& root = tree.nodes[0];
    ASSERT_GE(root.child_one, 0);
    ASSERT_GE(root.child_two, 0);
    EXPECT_EQ(tree.nodes[root.child_one].element, A.translation({1}));
    EXPECT_EQ(tree.nodes[root.child_two].element, A.simple_reflection(1));
    EXPECT_EQ(tree.leaves().size(), 2u);

    auto polys = R.class_polynomials(x);
    ASSERT_EQ(polys.size(), 2u);
    EXPECT_EQ(polys.at(R.class_key(A.translation({1}))), Polynomial::q_minus_one());
    EXPECT_EQ(polys.at(R.class_key(A.simple_reflection(1))), Polynomial::q());

    auto bgx = R.bgx(x);
    ASSERT_EQ(bgx.size(), 2u);
    const auto& upper = bgx.at(ws.invariants().class_of_lambda({1}));
    ASSERT_EQ(upper.size(), 1u);
    EXPECT_EQ(upper[0].type_one, 1);
    EXPECT_EQ(upper[0].type_two, 0);
    EXPECT_EQ(upper[0].endpoint_length, 2);
    EXPECT_EQ(upper[0].dimension, 1);
    const auto& basic = bgx.at(BGClass{ws.invariants().kappa(Coweight{0}), {0}});
    ASSERT_EQ(basic.size(), 1u);
    EXPECT_EQ(basic[0].type_one, 0);
    EXPECT_EQ(basic[0].type_two, 1);
    EXPECT_EQ(basic[0].endpoint_length, 1);
}

TEST(Reduction, MinimalElements) {
    const auto& ws = workspace("sl3");
    const auto& R = ws.reduction();
    for (const auto& x : sample(ws, 4)) {
        if (!R.is_minimal(x)) continue;
        EXPECT_EQ(R.build_tree(x).nodes.size(), 1u);
        auto polys = R.class_polynomials(x);
        ASSERT_EQ(polys.size(), 1u);
        EXPECT_EQ(polys.begin()->second, Polynomial::constant(1));
        auto bgx = R.bgx(x);
        ASSERT_EQ(bgx.size(), 1u);
        const auto& stat = bgx.begin()->second.at(0);
        EXPECT_EQ(Rational(stat.dimension), Rational(ws.affine().length(x)) - ws.datum().pairing_2rho(bgx.begin()->first.nu));
    }
    auto dominant = ws.affine().translation(ws.datum().coroot_combination({1, 2}));
    EXPECT_EQ(R.descend_to_minimal(dominant).minimum, dominant);
    for (const auto& tau : workspace("pgl3").affine().omega_elements(1))
        EXPECT_EQ(workspace("pgl3").reduction().descend_to_minimal(tau).minimum, tau);
}

TEST(Reduction, DescentReachesMinimalElementOfSameClass) {
    for (const std::string name : {"sl3", "a2_flip", "sp4"}) {
        const auto& ws = workspace(name);
        const auto& R = ws.reduction();
        for (const auto& x : sample(ws, 4)) {
            auto descent = R.descend_to_minimal(x);
            EXPECT_TRUE(R.is_minimal(descent.minimum));
            EXPECT_LE(ws.affine().length(descent.minimum), ws.affine().length(x));
        }
    }
}

TEST(Reduction, ClassKeys) {
    const auto& ws = workspace("sl2");
    const auto& R = ws.reduction();
    EXPECT_EQ(R.class_key(ws.affine().translation({1})), R.class_key(ws.affine().translation({-1})));
    EXPECT_NE(R.class_key(ws.affine().translation({1})), R.class_key(ws.affine().translation({2})));
    for (const auto& x : sample(ws, 5))
        for (int a = 0; a < ws.affine().num_simple(); ++a) {
            auto y = ws.affine().simple_sigma_conjugate(x, a).result;
            EXPECT_TRUE(R.same_class(x, y));
        }
}

TEST(Reduction, DeligneLusztigRecursionForEveryDrop) {
    for (const std::string name : {"sl3", "a2_flip"}) {
        const auto& ws = workspace(name);
        const auto& A = ws.affine();
        const auto& R = ws.reduction();
        for (const auto& x : sample(ws, 5))
            for (int a = 0; a < A.num_simple(); ++a) {
                auto move = A.simple_sigma_conjugate(x, a);
                if (move.type != MoveType::Down2) continue;
                std::map<ClassKey, Polynomial> expected;
                for (const auto& [key, p] : R.class_polynomials(move.result)) expected[key] += Polynomial::q() * p;
                for (const auto& [key, p] : R.class_polynomials(move.left_only)) expected[key] += Polynomial::q_minus_one() * p;
                EXPECT_EQ(R.class_polynomials(x), expected) << name << " " << A.format(x) << " a=" << a;
            }
    }
}

TEST(Reduction, SeededTreesAgree) {
    const auto& ws = workspace("gl3");
    const auto& R = ws.reduction();
    for (const auto& x : sample(ws, 5)) {
        auto reference = R.class_polynomials(R.build_tree(x));
        for (std::uint64_t seed : {5u, 17u}) EXPECT_EQ(R.class_polynomials(R.build_tree(x, TreePolicy::seeded(seed))), reference);
    }
}

TEST(Reduction, PolynomialsArePositiveInQMinusOne) {
    for (const std::string name : {"sl3", "sp4", "a2_flip"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5))
            for (const auto& [key, p] : ws.reduction().class_polynomials(x))
                for (auto c : p.in_q_minus_one_basis()) EXPECT_GE(c, 0) << name << " " << ws.affine().format(x);
    }
}

TEST(Reduction, PathCountAtQEqualsOne) {
    const auto& ws = workspace("sl3");
    const auto& R = ws.reduction();
    for (const auto& x : sample(ws, 5)) {
        auto tree = R.build_tree(x);
        std::int64_t untwisted_paths = 0;
        for (const auto& path : R.paths(tree))
            if (path.type_one == 0) ++untwisted_paths;
        std::int64_t total = 0;
        for (const auto& [key, p] : R.class_polynomials(tree)) total += p.evaluate(1);
        EXPECT_EQ(total, untwisted_paths) << ws.affine().format(x);
    }
}

TEST(Reduction, InverseHasSamePolynomials) {
    for (const std::string name : {"sl3", "gl3", "sp4"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            auto forward = sorted_values(ws.reduction().class_polynomials(x));
            auto backward = sorted_values(ws.reduction().class_polynomials(ws.affine().inverse(x)));
            EXPECT_EQ(forward, backward) << name << " " << ws.affine().format(x);
        }
    }
}

TEST(Reduction, TreeExports) {
    const auto& ws = workspace("sl2");
    auto tree = ws.reduction().build_tree(element(ws, R"({"w":[1],"mu":[1]})"));
    auto json = ws.reduction().tree_json(tree);
    EXPECT_EQ(json.at("nodes").size(), 3u);
    EXPECT_EQ(ws.reduction().tree_dot(tree).rfind("digraph", 0), 0u);
}
