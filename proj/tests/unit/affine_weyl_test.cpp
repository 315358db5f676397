#include "support.hpp"

#include <gtest/gtest.h>

#include <deque>

using namespace adlv;
using adlv::testing::element;
using adlv::testing::workspace;

namespace {

// Word length over the simple affine reflections, by BFS from the length-zero elements.
std::map<AffineElement, int> word_lengths(const AffineWeylGroup& A, int depth) {
    std::map<AffineElement, int> dist;
    std::deque<AffineElement> queue;
    for (const auto& tau : A.omega_elements(1)) {
        dist[tau] = 0;
        queue.push_back(tau);
    }
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        if (dist[x] == depth) continue;
        for (int a = 0; a < A.num_simple(); ++a) {
            auto y = A.mul_simple(x, a);
            if (!dist.count(y)) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

// Number of positive affine roots (alpha, k) sent to negative ones, with
// x (alpha, k) = (w alpha, k - <mu, alpha>).
std::int64_t inverted_affine_roots(const AffineWeylGroup& A, const AffineElement& x) {
    const auto& d = A.datum();
    std::int64_t count = 0;
    for (int r = 0; r < d.num_roots(); ++r) {
        std::int64_t shift = d.pairing(x.mu, r);
        std::int64_t bound = std::abs(shift) + 1;
        for (std::int64_t k = -bound; k <= bound; ++k) {
            bool positive = k > 0 || (k == 0 && d.is_positive(r));
            std::int64_t k2 = k - shift;
            bool image_positive = k2 > 0 || (k2 == 0 && d.is_positive(A.weyl().act_root(x.w, r)));
            if (positive && !image_positive) ++count;
        }
    }
    return count;
}

}  // namespace

TEST(AffineWeyl, Sl2Conventions) {
    const auto& ws = workspace("sl2");
    const auto& A = ws.affine();
    auto s1 = A.simple_reflection(0);
    auto s0 = A.simple_reflection(1);
    EXPECT_EQ(s0, element(ws, R"({"w":[1],"mu":[-1]})"));
    EXPECT_EQ(A.mul(A.mul(s1, s0), s1), element(ws, R"({"w":[1],"mu":[1]})"));
    EXPECT_EQ(A.mul(s0, s1), A.translation({1}));
    EXPECT_EQ(A.length(A.translation({1})), 2);
}

TEST(AffineWeyl, LengthMatchesWordLength) {
    for (const std::string name : {"sl2", "sl3", "gl3", "sp4", "a2_flip"}) {
        const auto& A = workspace(name).affine();
        for (const auto& [x, len] : word_lengths(A, 5)) {
            ASSERT_EQ(A.length(x), len) << name << " " << A.format(x);
            ASSERT_EQ(inverted_affine_roots(A, x), len) << name << " " << A.format(x);
        }
    }
}

TEST(AffineWeyl, LengthExamples) {
    const auto& ws = workspace("sl3");
    const auto& A = ws.affine();
    EXPECT_EQ(A.length(A.identity()), 0);
    EXPECT_EQ(A.length(A.translation(ws.datum().coroot_combination({1, 1}))), 4);
    EXPECT_EQ(A.length(A.simple_reflection(0)), 1);
}

TEST(AffineWeyl, GroupLaws) {
    const auto& A = workspace("sl3").affine();
    auto elements = A.enumerate(A.omega_elements(1), 3);
    for (int a = 0; a < A.num_simple(); ++a) EXPECT_EQ(A.mul(A.simple_reflection(a), A.simple_reflection(a)), A.identity());
    // braid relation on the affine A2 triangle
    auto r0 = A.simple_reflection(2), r1 = A.simple_reflection(0);
    EXPECT_EQ(A.mul(A.mul(r0, r1), r0), A.mul(A.mul(r1, r0), r1));
    for (std::size_t i = 0; i < elements.size(); i += 2)
        for (std::size_t j = 0; j < elements.size(); j += 3) {
            const auto& x = elements[i];
            const auto& y = elements[j];
            EXPECT_EQ(A.mul(A.mul(x, y), A.inverse(y)), x);
            EXPECT_EQ(A.mul(A.mul(x, y), x), A.mul(x, A.mul(y, x)));
        }
}

TEST(AffineWeyl, LengthFunctional) {
    const auto& ws = workspace("sl3");
    const auto& A = ws.affine();
    const auto& d = ws.datum();
    for (int r = 0; r < d.num_roots(); ++r) EXPECT_EQ(A.length_functional(A.identity(), r), 0);
    Coweight mu = d.coroot_combination({2, -1});
    for (int r = 0; r < d.num_roots(); ++r) EXPECT_EQ(A.length_functional(A.translation(mu), r), d.pairing(mu, r));
    EXPECT_EQ(A.length_functional(A.simple_reflection(0), 0), 1);
}

TEST(AffineWeyl, LengthPositiveSets) {
    const auto& sl3 = workspace("sl3");
    const auto& A = sl3.affine();
    auto regular = A.translation(sl3.datum().coroot_combination({2, 2}));
    EXPECT_EQ(A.lp_set(regular), std::vector<WeylElement>{sl3.weyl().identity()});
    EXPECT_EQ(A.lp_set(A.identity()).size(), sl3.weyl().order());

    const auto& sl2 = workspace("sl2");
    auto lp = sl2.affine().lp_set(element(sl2, R"({"w":[1],"mu":[1]})"));
    EXPECT_EQ(lp, std::vector<WeylElement>{sl2.weyl().identity()});
}

TEST(AffineWeyl, LpTransportCases) {
    const auto& ws = workspace("sl3");
    const auto& A = ws.affine();
    for (const auto& x : A.enumerate(A.omega_elements(1), 5))
        for (int a = 0; a < A.num_simple(); ++a) {
            auto t = A.lp_transport(x, a);
            auto functional = A.length_functional(x, A.datum().classical_part(a));
            auto expected = functional > 0 ? LpCase::Positive : functional < 0 ? LpCase::Negative : LpCase::Zero;
            EXPECT_EQ(t.kind, expected) << A.format(x) << " a=" << a;
            EXPECT_TRUE(t.containment_holds) << A.format(x) << " a=" << a;
            EXPECT_TRUE(t.pointwise_holds) << A.format(x) << " a=" << a;
        }
}

TEST(AffineWeyl, SimpleSigmaConjugation) {
    const auto& ws = workspace("sl2");
    const auto& A = ws.affine();
    auto move = A.simple_sigma_conjugate(element(ws, R"({"w":[1],"mu":[1]})"), 0);
    EXPECT_EQ(move.type, MoveType::Down2);
    EXPECT_EQ(move.result, A.simple_reflection(1));
    EXPECT_EQ(move.left_only, A.translation({1}));

    auto swap = A.simple_sigma_conjugate(A.translation({1}), 0);
    EXPECT_EQ(swap.type, MoveType::LengthPreserving);
    EXPECT_EQ(swap.result, A.translation({-1}));

    // length zero never drops; it is preserved exactly when tau fixes the node
    const auto& pgl3 = workspace("pgl3").affine();
    const auto& d = pgl3.datum();
    for (const auto& tau : pgl3.omega_elements(1))
        for (int a = 0; a < pgl3.num_simple(); ++a) {
            auto type = pgl3.simple_sigma_conjugate(tau, a).type;
            bool fixed = pgl3.act(tau, d.affine_simple(a)) == d.affine_simple(a);
            EXPECT_EQ(type, fixed ? MoveType::LengthPreserving : MoveType::Up2);
        }
}

TEST(AffineWeyl, AlcoveElements) {
    const auto& sl2 = workspace("sl2");
    EXPECT_TRUE(sl2.affine().is_alcove_element(element(sl2, R"({"w":[1],"mu":[1]})"), 0b1, sl2.weyl().identity()));
    const auto& sl3 = workspace("sl3");
    auto x = sl3.affine().translation(sl3.datum().coroot_combination({1, 0}));
    EXPECT_FALSE(sl3.affine().is_alcove_element(x, 0, sl3.weyl().identity()));
    for (const auto& y : sl3.affine().enumerate(sl3.affine().omega_elements(1), 3))
        EXPECT_TRUE(sl3.affine().is_alcove_element(y, sl3.datum().all_simple(), sl3.weyl().identity()));
}

TEST(AffineWeyl, EtaSigma) {
    const auto& ws = workspace("sl3");
    const auto& A = ws.affine();
    auto dominant = A.translation(ws.datum().coroot_combination({1, 1}));
    EXPECT_EQ(A.eta_sigma(dominant), ws.weyl().identity());
    for (std::size_t id = 0; id < ws.weyl().order(); ++id)
        EXPECT_EQ(A.eta_sigma(A.finite(ws.weyl().element(id))), ws.weyl().element(id));
    // s1 eps^{-a1}: v = dominance witness of -a1, eta = sigma^{-1}(v)^{-1} s1 v
    AffineElement x{ws.weyl().simple(0), ws.datum().coroot_combination({-1, 0})};
    auto v = A.dominance_witness(x.mu);
    const auto& W = ws.weyl();
    EXPECT_EQ(A.eta_sigma(x), W.mul(W.mul(W.inverse(W.sigma_inverse(v)), x.w), v));
}

TEST(AffineWeyl, LengthZeroElements) {
    EXPECT_EQ(workspace("pgl3").affine().omega_elements(1).size(), 3u);
    EXPECT_EQ(workspace("sl3").affine().omega_elements(1).size(), 1u);
    const auto& gl3 = workspace("gl3").affine();
    auto taus = gl3.omega_elements(0, 1);
    bool generator = false;
    for (const auto& tau : taus) {
        EXPECT_EQ(gl3.length(tau), 0);
        if (gl3.power(tau, 3) == gl3.translation({1, 1, 1}) && tau != gl3.translation({1, 1, 1})) generator = true;
    }
    EXPECT_TRUE(generator);
}

TEST(AffineWeyl, WordsAndJsonRoundTrip) {
    for (const std::string name : {"gl3", "sp4", "a2_flip"}) {
        const auto& A = workspace(name).affine();
        for (const auto& x : A.enumerate(A.omega_elements(1), 3)) {
            auto w = A.affine_word(x);
            EXPECT_EQ(static_cast<std::int64_t>(w.word.size()), A.length(x));
            EXPECT_EQ(A.from_affine_word(w.tau, w.word), x);
            EXPECT_EQ(A.parse(A.format(x)), x);
            EXPECT_EQ(A.omega_part(x), w.tau);
        }
    }
}

TEST(AffineWeyl, SigmaPreservesLength) {
    const auto& A = workspace("a2_flip").affine();
    for (const auto& x : A.enumerate(A.omega_elements(1), 4)) {
        EXPECT_EQ(A.length(A.sigma(x)), A.length(x));
        EXPECT_EQ(A.sigma_inverse(A.sigma(x)), x);
    }
}

TEST(AffineWeyl, RejectsMalformedElements) {
    const auto& ws = workspace("sl3");
    EXPECT_THROW(ws.affine().parse("{\"w\":[1]}"), std::invalid_argument);
    EXPECT_THROW(ws.affine().parse("{\"w\":[1],\"mu\":[1]}"), std::invalid_argument);
    EXPECT_THROW(ws.affine().parse("not json"), std::invalid_argument);
}
