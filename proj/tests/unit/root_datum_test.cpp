#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace adlv;
using adlv::testing::workspace;

namespace {

// Root system generated from the Cartan matrix by simple reflections, in simple-root coordinates.
std::set<std::vector<int>> roots_by_closure(const std::vector<std::vector<int>>& cartan) {
    const int n = static_cast<int>(cartan.size());
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> frontier;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        auto r = frontier.back();
        frontier.pop_back();
        if (!roots.insert(r).second) continue;
        for (int i = 0; i < n; ++i) {
            // <alpha_i^vee, r> = sum_j r_j cartan[i][j]
            int pairing = 0;
            for (int j = 0; j < n; ++j) pairing += r[j] * cartan[i][j];
            auto s = r;
            s[i] -= pairing;
            frontier.push_back(s);
        }
    }
    return roots;
}

}  // namespace

TEST(RootDatum, RootCountsByType) {
    const std::vector<std::pair<std::string, int>> expected{{"sl2", 2}, {"sl3", 6},   {"a3", 12},         {"b2", 8},
                                                            {"g2", 12}, {"sp4", 8},   {"a5_adjoint", 30}, {"e6_adjoint", 72}};
    for (const auto& [name, count] : expected) {
        const auto& d = workspace(name).datum();
        EXPECT_EQ(d.num_roots(), count) << name;
        EXPECT_EQ(d.num_positive() * 2, count) << name;
    }
}

TEST(RootDatum, RootsMatchReflectionClosure) {
    for (const std::string name : {"sl3", "a3", "b2", "g2", "e6_adjoint"}) {
        const auto& d = workspace(name).datum();
        auto oracle = roots_by_closure(d.cartan());
        std::set<std::vector<int>> actual;
        for (int i = 0; i < d.num_roots(); ++i) actual.insert(d.root(i).coeffs);
        EXPECT_EQ(actual, oracle) << name;
    }
}

TEST(RootDatum, Pairings) {
    const auto& d = workspace("sl3").datum();
    EXPECT_EQ(d.pairing(d.coroot_combination({1, 0}), 0), 2);
    EXPECT_EQ(d.pairing(d.coroot_combination({1, 0}), 1), -1);
    EXPECT_EQ(d.pairing_2rho(d.coroot_combination({1, 1})), 4);
}

TEST(RootDatum, FundamentalGroups) {
    const auto& gl3 = workspace("gl3").datum();
    EXPECT_EQ(gl3.pi1().free_rank(), 1u);
    EXPECT_TRUE(gl3.pi1().torsion().empty());
    const auto& pgl3 = workspace("pgl3").datum();
    EXPECT_EQ(pgl3.pi1().free_rank(), 0u);
    EXPECT_EQ(pgl3.pi1().torsion(), (std::vector<Integer>{3}));
    const auto& sl3 = workspace("sl3").datum();
    EXPECT_EQ(sl3.pi1().free_rank(), 0u);
    EXPECT_TRUE(sl3.pi1().torsion().empty());
}

TEST(RootDatum, DiagramAutomorphism) {
    const auto& d = workspace("a3_flip").datum();
    EXPECT_EQ(d.sigma_order(), 2);
    EXPECT_EQ(d.sigma_simple(0), 2);
    EXPECT_EQ(d.sigma_simple(1), 1);
    EXPECT_EQ(d.orbit_count(d.all_simple()), 2);
    for (int i = 0; i < d.num_roots(); ++i) EXPECT_EQ(d.sigma_root(d.sigma_root(i)), i);
}

TEST(RootDatum, RejectsNonAutomorphism) {
    nlohmann::json spec{{"type", "A3"}, {"sigma_perm", {2, 1, 3}}};
    EXPECT_THROW(parse_root_datum(spec), std::invalid_argument);
    nlohmann::json bad_type{{"type", "Q7"}};
    EXPECT_THROW(parse_root_datum(bad_type), std::invalid_argument);
}

TEST(RootDatum, Projections) {
    const auto& d = workspace("sl3").datum();
    auto a1 = to_rational(d.coroot_combination({1, 0}));
    EXPECT_EQ(d.pi_J(a1, 0), a1);
    EXPECT_EQ(d.pi_J(a1, 0b01), (RationalVector{0, 0}));
    EXPECT_EQ(d.pi_J(a1, 0b11), (RationalVector{0, 0}));
    EXPECT_EQ(d.conv(a1), (RationalVector{1, Rational(1, 2)}));
    EXPECT_EQ(d.conv(RationalVector{0, 0}), (RationalVector{0, 0}));
    // regular dominant input is its own convex hull maximum
    auto regular = to_rational(d.coroot_combination({2, 2}));
    EXPECT_EQ(d.conv(regular), regular);
}

TEST(RootDatum, DominanceOrder) {
    const auto& sl3 = workspace("sl3").datum();
    EXPECT_TRUE(sl3.dominance_leq({0, 0}, to_rational(sl3.coroot_combination({1, 0}))));
    const auto& gl3 = workspace("gl3").datum();
    EXPECT_FALSE(gl3.dominance_leq({1, 0, 0}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST(RootDatum, DominantRepresentative) {
    const auto& d = workspace("sl3").datum();
    const auto& W = workspace("sl3").weyl();
    auto mu = d.coroot_combination({-1, 0});
    auto [dominant, witness] = d.dominant_rep(mu);
    EXPECT_TRUE(d.is_dominant(dominant));
    auto v = W.from_word(witness);
    EXPECT_EQ(W.act(v, dominant), mu);
    // minimality: no shorter v carries the dominant representative to mu
    for (std::size_t id = 0; id < W.order(); ++id) {
        auto u = W.element(id);
        if (W.act(u, dominant) == mu) EXPECT_GE(W.length(u), W.length(v));
    }
    EXPECT_EQ(W.format(v), "s:[1,2]");
}

TEST(RootDatum, JsonRoundTrip) {
    for (const std::string name : {"gl3", "a3_flip", "g2"}) {
        const auto& d = workspace(name).datum();
        auto again = parse_root_datum(d.to_json());
        EXPECT_EQ(again.cartan(), d.cartan());
        EXPECT_EQ(again.sigma_matrix(), d.sigma_matrix());
        EXPECT_EQ(again.dim(), d.dim());
    }
}
