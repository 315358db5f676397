#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace adlv;
using adlv::testing::element;
using adlv::testing::workspace;

TEST(BGInvariants, NewtonPoints) {
    const auto& sl3 = workspace("sl3");
    const auto& d = sl3.datum();
    auto mu = d.coroot_combination({-1, 2});
    EXPECT_EQ(sl3.invariants().newton(sl3.affine().translation(mu)), to_rational(d.dominant_rep(mu).first));
    for (std::size_t id = 0; id < sl3.weyl().order(); ++id)
        EXPECT_EQ(sl3.invariants().newton(sl3.affine().finite(sl3.weyl().element(id))), (RationalVector{0, 0}));
    const auto& sl2 = workspace("sl2");
    EXPECT_EQ(sl2.invariants().newton(element(sl2, R"({"w":[1],"mu":[1]})")), (RationalVector{0}));
}

TEST(BGInvariants, NewtonMatchesPowerComputation) {
    for (const std::string name : {"sl3", "gl3", "a2_flip", "sp4", "g2"}) {
        const auto& ws = workspace(name);
        for (const auto& x : ws.affine().enumerate(ws.affine().omega_elements(1), 4))
            EXPECT_EQ(ws.invariants().newton(x), ws.invariants().newton_by_power(x)) << name << " " << ws.affine().format(x);
    }
}

TEST(BGInvariants, KottwitzPoints) {
    const auto& gl3 = workspace("gl3");
    auto zero = gl3.invariants().kappa(Coweight{0, 0, 0});
    for (const auto& c : zero) EXPECT_EQ(c, 0);
    // the residue of (1,0,0) generates the free rank-one quotient
    auto generator = gl3.invariants().kappa(Coweight{1, 0, 0});
    int nonzero = 0;
    for (const auto& c : generator)
        if (c != 0) {
            ++nonzero;
            EXPECT_EQ(abs(c), 1);
        }
    EXPECT_EQ(nonzero, 1);
    EXPECT_EQ(gl3.invariants().kappa(Coweight{0, 1, 0}), generator);
    EXPECT_EQ(gl3.invariants().kappa(Coweight{1, -1, 0}), zero);

    const auto& pgl3 = workspace("pgl3");
    Coweight omega{1, 0};  // fundamental coweight in the adjoint lattice
    auto residue = pgl3.invariants().kappa(omega);
    EXPECT_NE(residue, pgl3.invariants().kappa(Coweight{0, 0}));
    EXPECT_EQ(pgl3.invariants().kappa(Coweight{3, 0}), pgl3.invariants().kappa(Coweight{0, 0}));
}

TEST(BGInvariants, LambdaAndDefect) {
    const auto& sl2 = workspace("sl2");
    BGClass basic{sl2.invariants().kappa(Coweight{0}), {0}};
    EXPECT_EQ(sl2.invariants().lambda(basic).representative, (Coweight{0}));
    EXPECT_EQ(sl2.invariants().defect(basic), 0);

    const auto& gl3 = workspace("gl3");
    const auto third = Rational(1, 3);
    BGClass b{gl3.invariants().kappa(Coweight{0, 0, 1}), {third, third, third}};
    auto lambda = gl3.invariants().lambda(b);
    EXPECT_TRUE(gl3.invariants().gamma_equal(lambda.representative, Coweight{0, 0, 1}));
    EXPECT_EQ(gl3.invariants().defect(b), 2);

    const auto& sl3 = workspace("sl3");
    auto mu = sl3.datum().coroot_combination({1, 1});
    auto translation = sl3.invariants().class_of_lambda(mu);
    EXPECT_TRUE(sl3.invariants().gamma_equal(sl3.invariants().lambda(translation).representative, mu));
    EXPECT_EQ(sl3.invariants().defect(translation), 0);
}

TEST(BGInvariants, LambdaProperties) {
    for (const std::string name : {"sl3", "gl3", "a2_flip", "sp4"}) {
        const auto& ws = workspace(name);
        const auto& inv = ws.invariants();
        std::set<BGClass> classes;
        for (const auto& x : ws.affine().enumerate(ws.affine().omega_elements(1), 4)) classes.insert(inv.class_of(x));
        for (const auto& b : classes) {
            auto lambda = inv.lambda(b);
            EXPECT_EQ(inv.kappa(lambda.representative), b.kappa) << name;
            auto defect = inv.defect(b);
            EXPECT_GE(defect, 0) << name;
            EXPECT_LE(defect, ws.datum().rank()) << name;
            EXPECT_EQ(Rational(defect), ws.datum().pairing_2rho(b.nu) - ws.datum().pairing_2rho(lambda.average)) << name;
            EXPECT_TRUE(ws.datum().dominance_leq(lambda.average, b.nu)) << name;
            EXPECT_EQ(inv.from_json(inv.to_json(b)), b);
        }
    }
}

TEST(BGInvariants, PartialOrder) {
    const auto& sl2 = workspace("sl2");
    const auto& inv = sl2.invariants();
    BGClass basic{inv.kappa(Coweight{0}), {0}};
    auto upper = inv.class_of_lambda({1});
    EXPECT_TRUE(inv.leq(basic, basic));
    EXPECT_TRUE(inv.leq(basic, upper));
    EXPECT_FALSE(inv.leq(upper, basic));

    const auto& gl3 = workspace("gl3");
    auto zero = gl3.invariants().class_of_lambda({0, 0, 0});
    auto one = gl3.invariants().class_of_lambda({1, 0, 0});
    EXPECT_FALSE(gl3.invariants().leq(zero, one));
    EXPECT_FALSE(gl3.invariants().leq(one, zero));
}

TEST(BGInvariants, VanishingSets) {
    const auto& sl3 = workspace("sl3");
    const auto& inv = sl3.invariants();
    auto regular = inv.class_of_lambda(sl3.datum().coroot_combination({1, 1}));
    EXPECT_EQ(inv.I_nu(regular), 0u);
    EXPECT_EQ(inv.I_one(regular), 0u);
    BGClass basic{inv.kappa(Coweight{0, 0}), {0, 0}};
    EXPECT_EQ(inv.I_nu(basic), 0b11u);
    EXPECT_EQ(inv.I_one(basic), 0u);
}

TEST(BGInvariants, VirtualDimension) {
    const auto& sl2 = workspace("sl2");
    const auto& inv = sl2.invariants();
    auto x = element(sl2, R"({"w":[1],"mu":[1]})");
    EXPECT_EQ(inv.virtual_dimension(x, inv.class_of_lambda({1})), 1);
    EXPECT_EQ(inv.virtual_dimension(x, BGClass{inv.kappa(Coweight{0}), {0}}), 2);

    const auto& sl3 = workspace("sl3");
    auto mu = sl3.datum().coroot_combination({2, 1});
    auto t = sl3.affine().translation(mu);
    EXPECT_EQ(sl3.invariants().virtual_dimension(t, sl3.invariants().class_of(t)), 0);
}
