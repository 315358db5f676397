#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace adlv;
using adlv::testing::element;
using adlv::testing::word;
using adlv::testing::workspace;

namespace {

std::vector<AffineElement> sample(const Workspace& ws, int max_length) {
    return ws.affine().enumerate(ws.affine().omega_elements(1), max_length);
}

const char* kSl2Element = R"({"w":[1],"mu":[1]})";

}  // namespace

TEST(PositiveCoxeter, Sl2Pairs) {
    const auto& ws = workspace("sl2");
    auto pairs = ws.pct().positive_coxeter_pairs(element(ws, kSl2Element));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].v, ws.weyl().identity());
    EXPECT_EQ(pairs[0].J, 0b1u);
    EXPECT_EQ(pairs[0].c, ws.weyl().simple(0));
}

TEST(PositiveCoxeter, RegularTranslation) {
    const auto& ws = workspace("sl3");
    auto x = ws.affine().translation(ws.datum().coroot_combination({2, 3}));
    auto pairs = ws.pct().positive_coxeter_pairs(x);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].v, ws.weyl().identity());
    EXPECT_EQ(pairs[0].J, 0u);
    EXPECT_TRUE(ws.pct().has_finite_coxeter_part(ws.affine().translation(ws.datum().coroot_combination({1, 0}))));
}

TEST(PositiveCoxeter, Gl3SimpleAffineReflections) {
    const auto& ws = workspace("gl3");
    int with_part = 0;
    for (int a = 0; a < ws.affine().num_simple(); ++a)
        if (ws.pct().has_finite_coxeter_part(ws.affine().simple_reflection(a))) ++with_part;
    EXPECT_EQ(with_part, 2);
}

TEST(PositiveCoxeter, A5PairSupports) {
    const auto& ws = workspace("a5_adjoint");
    auto tau = element(ws, R"({"mu":[0,0,-1,0,0],"w":[3,2,1,4,3,2,5,4,3]})");
    ASSERT_EQ(ws.affine().length(tau), 0);
    auto x = ws.affine().mul(tau, ws.affine().simple_reflection(0));
    auto first = ws.pct().make_pair(x, word(ws, {3, 4, 2}));
    auto second = ws.pct().make_pair(x, word(ws, {5, 2, 3, 4, 3, 1, 2}));
    ASSERT_TRUE(first);
    ASSERT_TRUE(second);
    EXPECT_EQ(first->J, 0b10111u);
    EXPECT_EQ(second->J, 0b11101u);

    auto n = ws.pct().support_conjugator(first->J, second->J, ws.datum().all_simple());
    ASSERT_TRUE(n);
    const auto& W = ws.weyl();
    EXPECT_EQ(W.sigma(*n), *n);
    for (int i = 0; i < 5; ++i) {
        if (!contains(first->J, i)) continue;
        int image = W.act_root(*n, i);
        EXPECT_LT(image, 5);
        EXPECT_TRUE(contains(second->J, image));
    }
}

TEST(PositiveCoxeter, SupportsOfOneElementAreConjugate) {
    for (const std::string name : {"sl3", "gl3", "sp4"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            auto pairs = ws.pct().positive_coxeter_pairs(x);
            if (pairs.size() < 2) continue;
            auto report = ws.pct().bgx_report(pairs.front());
            IndexSet I = ws.invariants().I_nu(report.b_min);
            for (const auto& p : pairs)
                EXPECT_TRUE(ws.pct().support_conjugator(pairs.front().J, p.J, I)) << name << " " << ws.affine().format(x);
        }
    }
}

TEST(PositiveCoxeter, TransportKeepsPairsValid) {
    for (const std::string name : {"sl3", "a2_flip", "sp4"}) {
        const auto& ws = workspace(name);
        const auto& A = ws.affine();
        const auto& P = ws.pct();
        for (const auto& x : sample(ws, 5)) {
            auto pairs = P.positive_coxeter_pairs(x);
            if (pairs.empty()) continue;
            for (int a = 0; a < A.num_simple(); ++a) {
                auto move = A.simple_sigma_conjugate(x, a);
                if (move.type == MoveType::Up2) continue;
                auto t = P.transport(pairs.front(), a);
                if (move.type == MoveType::LengthPreserving) {
                    ASSERT_EQ(t.pairs.size(), 1u);
                    EXPECT_EQ(t.pairs[0].x, move.result);
                    EXPECT_EQ(t.pairs[0].J, pairs.front().J);
                    EXPECT_TRUE(P.make_pair(move.result, t.pairs[0].v));
                } else {
                    ASSERT_EQ(t.pairs.size(), 2u);
                    EXPECT_EQ(t.pairs[0].x, move.left_only);
                    EXPECT_EQ(t.pairs[1].x, move.result);
                    ASSERT_GE(t.deleted_position, 0);
                    auto shortened = pairs.front().c_word;
                    shortened.erase(shortened.begin() + t.deleted_position);
                    // type I child: c with one letter deleted; type II child keeps c
                    EXPECT_EQ(t.pairs[0].c, ws.weyl().from_word(shortened));
                    EXPECT_EQ(t.pairs[1].c, pairs.front().c);
                    EXPECT_EQ(t.pairs[0].J, pairs.front().J & ~ws.datum().sigma_closure(1U << pairs.front().c_word[t.deleted_position]));
                    for (const auto& child : t.pairs) EXPECT_TRUE(P.make_pair(child.x, child.v));
                }
            }
        }
    }
}

TEST(BgxReport, Sl2Report) {
    const auto& ws = workspace("sl2");
    auto report = ws.pct().bgx_report(element(ws, kSl2Element));
    EXPECT_TRUE(report.interval_matches);
    EXPECT_TRUE(report.tree_matches);
    ASSERT_EQ(report.rows.size(), 2u);
    EXPECT_EQ(report.lambda_max, (Coweight{1}));
    const auto& basic = report.rows[0].b.nu == RationalVector{0} ? report.rows[0] : report.rows[1];
    const auto& upper = &basic == &report.rows[0] ? report.rows[1] : report.rows[0];
    EXPECT_EQ(basic.type_one, 0);
    EXPECT_EQ(basic.type_two, 1);
    EXPECT_EQ(upper.type_one, 1);
    EXPECT_EQ(upper.type_two, 0);
    EXPECT_EQ(upper.dimension, 1);
    EXPECT_EQ(basic.dimension, 2);

    auto extremes = ws.pct().min_and_generic_newton(report.pair);
    EXPECT_EQ(extremes.minimum.nu, (RationalVector{0}));
    EXPECT_EQ(extremes.minimum_by_projection, (RationalVector{0}));
    EXPECT_EQ(extremes.lambda_max, (Coweight{1}));
}

TEST(BgxReport, MinimalLengthBaseCase) {
    for (const std::string name : {"sl3", "sp4"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            if (!ws.reduction().is_minimal(x)) continue;
            auto pairs = ws.pct().positive_coxeter_pairs(x);
            if (pairs.empty()) continue;
            auto report = ws.pct().bgx_report(pairs.front());
            ASSERT_EQ(report.rows.size(), 1u);
            EXPECT_EQ(report.rows[0].dimension,
                      static_cast<std::int64_t>(pairs.front().c_word.size()) - report.rows[0].defect);
        }
    }
}

TEST(BgxReport, RowIdentitiesOnScan) {
    for (const std::string name : {"sl3", "gl3", "a2_flip", "sp4"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            auto pairs = ws.pct().positive_coxeter_pairs(x);
            if (pairs.empty()) {
                EXPECT_THROW(ws.pct().bgx_report(x), ComputationError);
                continue;
            }
            auto report = ws.pct().bgx_report(x);
            EXPECT_TRUE(report.interval_matches) << name << " " << ws.affine().format(x);
            EXPECT_TRUE(report.tree_matches) << name << " " << ws.affine().format(x);
            for (const auto& row : report.rows) EXPECT_EQ(row.type_two, row.type_two_by_length);
            auto extremes = ws.pct().min_and_generic_newton(report.pair);
            EXPECT_EQ(extremes.minimum.nu, extremes.minimum_by_projection);
            EXPECT_EQ(extremes.lambda_max, extremes.lambda_max_over_lp);
        }
    }
}

TEST(BgxReport, CoxeterPathsAreShortest) {
    const auto& ws = workspace("gl3");
    const auto& W = ws.weyl();
    for (const auto& x : sample(ws, 5))
        for (const auto& pair : ws.pct().positive_coxeter_pairs(x)) {
            auto target = W.sigma(W.mul(x.w, pair.v));
            auto path = ws.qbg().coxeter_path(pair.v, pair.c_word);
            EXPECT_EQ(path.vertices.back(), target);
            EXPECT_EQ(static_cast<int>(path.vertices.size()) - 1, ws.qbg().distance_weight(pair.v, target).distance);
        }
}

TEST(Truncation, Examples) {
    const auto& ws = workspace("a3");
    const auto& P = ws.pct();
    const std::vector<int> c{0, 1, 2};
    EXPECT_EQ(P.j_truncation(c, 0b101), word(ws, {1, 3}));
    EXPECT_EQ(P.j_truncation(c, 0b111), word(ws, {1, 2, 3}));
    EXPECT_EQ(P.j_truncation(c, 0), ws.weyl().identity());
}

TEST(Truncation, IndependentOfReducedWord) {
    for (const std::string name : {"a3", "a3_flip", "b2"}) {
        const auto& ws = workspace(name);
        const auto& W = ws.weyl();
        for (std::size_t id = 0; id < W.order(); ++id) {
            auto c = W.element(id);
            if (!W.is_partial_sigma_coxeter_word(c) || W.length(c) > 6) continue;
            auto words = W.all_reduced_words(c);
            for (IndexSet J = 0; J <= ws.datum().all_simple(); ++J) {
                if (!ws.datum().is_sigma_stable(J)) continue;
                auto reference = ws.pct().j_truncation(words.front(), J);
                for (const auto& w : words) EXPECT_EQ(ws.pct().j_truncation(w, J), reference) << name;
            }
        }
    }
}

TEST(PointSpace, RulesAgree) {
    for (const std::string name : {"sl2", "a3", "a3_flip", "gl3"}) {
        const auto& ws = workspace(name);
        const auto& W = ws.weyl();
        for (std::size_t id = 0; id < W.order(); ++id) {
            auto c = W.element(id);
            if (!W.is_partial_sigma_coxeter_word(c)) continue;
            for (IndexSet J = 0; J <= ws.datum().all_simple(); ++J)
                if (ws.datum().is_sigma_stable(J)) EXPECT_TRUE(ws.pct().point_space_rules_agree(W.reduced_word(c), J)) << name;
        }
    }
}

TEST(PointSpace, Sl2EmptyTruncation) {
    const auto& ws = workspace("sl2");
    auto space = ws.pct().point_space({0}, 0);
    EXPECT_EQ(space.truncation, ws.weyl().identity());
    EXPECT_EQ(space.quotient.free_rank(), 0u);
}

TEST(PointSpace, FullSupportIsCoinvariants) {
    const auto& ws = workspace("sl2");
    auto x = element(ws, kSl2Element);
    auto pair = ws.pct().positive_coxeter_pairs(x).front();
    EXPECT_EQ(ws.pct().j_point_image(pair, pair.J), ws.pct().j_point(pair));
}

TEST(Endpoint, Sl2Certificates) {
    const auto& ws = workspace("sl2");
    const auto& P = ws.pct();
    const auto& R = ws.reduction();
    auto x = element(ws, kSl2Element);
    auto pair = P.positive_coxeter_pairs(x).front();
    BGClass basic{ws.invariants().kappa(Coweight{0}), {0}};
    auto low = P.endpoint_class(pair, basic);
    EXPECT_EQ(low.J_b, 0b1u);
    EXPECT_EQ(low.truncation, ws.weyl().simple(0));
    EXPECT_EQ(low.key, R.class_key(ws.affine().simple_reflection(1)));
    auto high = P.endpoint_class(pair, ws.invariants().class_of_lambda({1}));
    EXPECT_EQ(high.J_b, 0u);
    EXPECT_EQ(high.truncation, ws.weyl().identity());
    EXPECT_EQ(high.key, R.class_key(ws.affine().translation({1})));
}

TEST(Endpoint, VerySpecialDataForEmptySupport) {
    const auto& ws = workspace("sl2");
    auto pair = ws.pct().positive_coxeter_pairs(element(ws, kSl2Element)).front();
    auto data = ws.pct().very_special_data(pair, ws.invariants().class_of_lambda({1}));
    EXPECT_TRUE(data.K.empty());
    EXPECT_EQ(ws.reduction().class_key(data.tau), ws.reduction().class_key(ws.affine().translation({1})));
}

TEST(Characterization, AgreesWithPairSearch) {
    for (const std::string name : {"sl3", "a2_flip", "sp4"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            bool positive = !ws.pct().positive_coxeter_pairs(x).empty();
            EXPECT_EQ(ws.pct().characterize(x).result(), positive) << name << " " << ws.affine().format(x);
        }
    }
}

TEST(Characterization, StraightB2Element) {
    // x = s_beta s_alpha s_beta eps^{-lambda} with <lambda, alpha> = 0, <lambda, beta> = 1
    int found = 0;
    for (const std::string name : {"b2", "sp4", "c2_adjoint"}) {
        const auto& ws = workspace(name);
        const auto& d = ws.datum();
        for (int alpha = 0; alpha < 2; ++alpha) {
            int beta = 1 - alpha;
            for (std::int64_t a = -2; a <= 2; ++a)
                for (std::int64_t b = -2; b <= 2; ++b) {
                    Coweight lambda{a, b};
                    if (d.pairing(lambda, alpha) != 0 || d.pairing(lambda, beta) != 1) continue;
                    ++found;
                    Coweight minus{-a, -b};
                    AffineElement x{ws.weyl().from_word(std::vector<int>{beta, alpha, beta}), minus};
                    bool positive = !ws.pct().positive_coxeter_pairs(x).empty();
                    EXPECT_EQ(ws.pct().characterize(x).result(), positive) << name;
                }
        }
    }
    EXPECT_GT(found, 0);
}

TEST(MinimalLength, Comparisons) {
    const auto& sl2 = workspace("sl2");
    auto translation = sl2.pct().min_length_pct(sl2.affine().translation({1}));
    EXPECT_TRUE(translation.finite_side);
    EXPECT_TRUE(translation.pct_side);
    EXPECT_THROW(sl2.pct().min_length_pct(element(sl2, kSl2Element)), std::invalid_argument);

    const auto& b2 = workspace("b2");
    auto longest = b2.pct().min_length_pct(b2.affine().finite(b2.weyl().longest()));
    EXPECT_FALSE(longest.finite_side);
    EXPECT_FALSE(longest.pct_side);

    const auto& pgl3 = workspace("pgl3");
    for (const auto& tau : pgl3.affine().omega_elements(1)) EXPECT_TRUE(pgl3.pct().min_length_pct(tau).pct_side);
}

TEST(MinimalLength, LargeSupport) {
    const auto& ws = workspace("sl2");
    auto pair = ws.pct().positive_coxeter_pairs(element(ws, kSl2Element)).front();
    EXPECT_FALSE(ws.pct().large_support_check(pair).hypothesis);
    for (const std::string name : {"sl3", "gl3", "sp4"}) {
        const auto& w = workspace(name);
        for (const auto& x : sample(w, 4))
            for (const auto& p : w.pct().positive_coxeter_pairs(x)) EXPECT_TRUE(w.pct().large_support_check(p).consistent()) << name;
    }
}

TEST(Symmetry, InverseKeepsPositiveCoxeterType) {
    for (const std::string name : {"sl3", "gl3", "sp4", "a2_flip"}) {
        const auto& ws = workspace(name);
        for (const auto& x : sample(ws, 5)) {
            bool forward = !ws.pct().positive_coxeter_pairs(x).empty();
            bool backward = !ws.pct().positive_coxeter_pairs(ws.affine().inverse(x)).empty();
            EXPECT_EQ(forward, backward) << name << " " << ws.affine().format(x);
        }
    }
}

TEST(Json, ReportsRoundTripElements) {
    const auto& ws = workspace("gl3");
    for (const auto& x : sample(ws, 3)) {
        auto pairs = ws.pct().positive_coxeter_pairs(x);
        if (pairs.empty()) continue;
        auto report = ws.pct().report_json(ws.pct().bgx_report(pairs.front()));
        EXPECT_EQ(ws.affine().from_json(report.at("pair").at("x")), x);
        auto text = report.dump();
        EXPECT_EQ(nlohmann::json::parse(text), report);
    }
}
