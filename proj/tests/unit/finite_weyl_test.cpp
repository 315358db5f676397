#include "support.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <set>

using namespace adlv;
using adlv::testing::word;
using adlv::testing::workspace;

namespace {

int inversion_count(const WeylGroup& W, WeylElement w) {
    const auto& d = W.datum();
    int count = 0;
    for (int r = 0; r < d.num_positive(); ++r)
        if (!d.is_positive(W.act_root(w, r))) ++count;
    return count;
}

// Reflection length for sigma = id: BFS in the Cayley graph on all reflections.
std::vector<int> reflection_length_bfs(const WeylGroup& W) {
    std::vector<int> dist(W.order(), -1);
    std::deque<WeylElement> queue{W.identity()};
    dist[0] = 0;
    while (!queue.empty()) {
        auto w = queue.front();
        queue.pop_front();
        for (int r = 0; r < W.datum().num_positive(); ++r) {
            auto next = W.mul(w, W.reflection(r));
            if (dist[next.id()] < 0) {
                dist[next.id()] = dist[w.id()] + 1;
                queue.push_back(next);
            }
        }
    }
    return dist;
}

// u <= w iff some subword of a reduced word of w is a word for u.
bool bruhat_by_subwords(const WeylGroup& W, WeylElement u, WeylElement w) {
    const auto& letters = W.reduced_word(w);
    const std::size_t n = letters.size();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        auto x = W.identity();
        for (std::size_t k = 0; k < n; ++k)
            if ((mask >> k) & 1U) x = W.mul_simple(x, letters[k]);
        if (x == u) return true;
    }
    return false;
}

}  // namespace

TEST(WeylGroup, Orders) {
    const std::vector<std::pair<std::string, std::size_t>> expected{
        {"sl2", 2}, {"sl3", 6}, {"a3", 24}, {"b2", 8}, {"g2", 12}, {"a5_adjoint", 720}};
    for (const auto& [name, order] : expected) EXPECT_EQ(workspace(name).weyl().order(), order) << name;
}

TEST(WeylGroup, Lengths) {
    const auto& a2 = workspace("sl3");
    EXPECT_EQ(a2.weyl().length(word(a2, {1, 1})), 0);
    EXPECT_EQ(a2.weyl().length(word(a2, {1, 2, 1})), 3);
    const auto& b2 = workspace("b2");
    EXPECT_EQ(b2.weyl().length(word(b2, {1, 2, 1, 2})), 4);
    for (const std::string name : {"a3", "b2", "g2"}) {
        const auto& W = workspace(name).weyl();
        for (std::size_t id = 0; id < W.order(); ++id)
            EXPECT_EQ(W.length(W.element(id)), inversion_count(W, W.element(id))) << name;
    }
}

TEST(WeylGroup, GroupLaws) {
    const auto& W = workspace("b2").weyl();
    for (std::size_t a = 0; a < W.order(); ++a) {
        auto x = W.element(a);
        EXPECT_EQ(W.mul(x, W.inverse(x)), W.identity());
        EXPECT_EQ(W.from_word(W.reduced_word(x)), x);
        for (std::size_t b = 0; b < W.order(); ++b) {
            auto y = W.element(b);
            for (std::size_t c = 0; c < W.order(); c += 3) {
                auto z = W.element(c);
                ASSERT_EQ(W.mul(W.mul(x, y), z), W.mul(x, W.mul(y, z)));
            }
        }
    }
}

TEST(WeylGroup, BruhatMatchesSubwordProperty) {
    for (const std::string name : {"sl3", "b2", "a3"}) {
        const auto& W = workspace(name).weyl();
        for (std::size_t a = 0; a < W.order(); ++a)
            for (std::size_t b = 0; b < W.order(); ++b)
                ASSERT_EQ(W.bruhat_leq(W.element(a), W.element(b)), bruhat_by_subwords(W, W.element(a), W.element(b)))
                    << name;
    }
}

TEST(WeylGroup, ReflectionLengthExamples) {
    const auto& ws = workspace("sl3");
    const auto& W = ws.weyl();
    EXPECT_EQ(W.reflection_length_sigma(W.identity()), 0);
    EXPECT_EQ(W.reflection_length_sigma(word(ws, {1, 2})), 2);
    EXPECT_EQ(W.reflection_length_sigma(word(ws, {1, 2, 1})), 1);
    EXPECT_TRUE(W.is_partial_sigma_coxeter(W.identity()));
    EXPECT_TRUE(W.is_partial_sigma_coxeter(word(ws, {1, 2})));
    EXPECT_FALSE(W.is_partial_sigma_coxeter(word(ws, {1, 2, 1})));
}

TEST(WeylGroup, ReflectionLengthMatchesBfsWhenSplit) {
    for (const std::string name : {"sl3", "a3", "b2", "g2"}) {
        const auto& W = workspace(name).weyl();
        auto oracle = reflection_length_bfs(W);
        for (std::size_t id = 0; id < W.order(); ++id)
            EXPECT_EQ(W.reflection_length_sigma(W.element(id)), oracle[id]) << name << " " << W.format(W.element(id));
    }
}

TEST(WeylGroup, PartialCoxeterCharacterizations) {
    for (const std::string name : {"sl3", "a2_flip", "a3", "a3_flip", "b2", "g2"}) {
        const auto& W = workspace(name).weyl();
        for (std::size_t id = 0; id < W.order(); ++id) {
            auto w = W.element(id);
            EXPECT_EQ(W.is_partial_sigma_coxeter(w), W.is_partial_sigma_coxeter_word(w)) << name << " " << W.format(w);
        }
    }
}

TEST(WeylGroup, Ellipticity) {
    const auto& a2 = workspace("sl3");
    EXPECT_TRUE(a2.weyl().is_sigma_elliptic(word(a2, {1, 2})));
    EXPECT_FALSE(a2.weyl().is_sigma_elliptic(a2.weyl().longest()));
    const auto& b2 = workspace("b2");
    EXPECT_TRUE(b2.weyl().is_sigma_elliptic(b2.weyl().longest()));
    for (const std::string name : {"sl3", "a2_flip", "a3", "a3_flip", "b2", "g2"}) {
        const auto& W = workspace(name).weyl();
        for (std::size_t id = 0; id < W.order(); ++id) {
            auto w = W.element(id);
            EXPECT_EQ(W.is_sigma_elliptic(w), W.is_sigma_elliptic_bruteforce(w)) << name << " " << W.format(w);
        }
    }
}

TEST(WeylGroup, MinimalShiftStaysInClass) {
    const auto& W = workspace("a3_flip").weyl();
    for (std::size_t id = 0; id < W.order(); ++id) {
        auto w = W.element(id);
        auto shift = W.sigma_min_shift(w);
        auto y = w;
        for (int s : shift.path) {
            auto next = W.mul(W.simple_mul(s, y), W.sigma(W.simple(s)));
            EXPECT_LE(W.length(next), W.length(y));
            y = next;
        }
        EXPECT_EQ(y, shift.minimum);
    }
}

TEST(WeylGroup, CoxeterConjugator) {
    const auto& a2 = workspace("sl3");
    const auto& W = a2.weyl();
    auto c = word(a2, {1, 2});
    EXPECT_EQ(W.coxeter_conjugator(c, c, 0b11), W.identity());
    auto u = W.coxeter_conjugator(c, word(a2, {2, 1}), 0b11);
    EXPECT_EQ(W.sigma_conjugate(c, u), word(a2, {2, 1}));

    const auto& flip = workspace("a3_flip");
    const auto& F = flip.weyl();
    std::vector<WeylElement> coxeter;
    for (std::size_t id = 0; id < F.order(); ++id)
        if (F.is_sigma_coxeter(F.element(id), 0b111)) coxeter.push_back(F.element(id));
    ASSERT_GE(coxeter.size(), 2u);
    for (auto target : coxeter) EXPECT_EQ(F.sigma_conjugate(coxeter[0], F.coxeter_conjugator(coxeter[0], target, 0b111)), target);
}

TEST(WeylGroup, FormatParseRoundTrip) {
    const auto& W = workspace("g2").weyl();
    for (std::size_t id = 0; id < W.order(); ++id) EXPECT_EQ(W.parse(W.format(W.element(id))), W.element(id));
}
