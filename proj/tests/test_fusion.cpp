#include "qp/fusion.hpp"

#include <gtest/gtest.h>

using namespace qp;

namespace {

QPSpace hat(std::size_t n, std::vector<int> blocks) {
    return hatSpace(buildPi(parabolicQuadruple(n, std::move(blocks))));
}

std::string failures(const CheckReport& r) {
    std::string s;
    for (const auto& it : r.items())
        if (it.status != Status::pass) s += it.name + ": " + it.witness + "\n";
    return s;
}

// SL(2) sampled, with d = sl(2) acting by conjugation and zero bivector.
QPSpace conjugationSpace() {
    auto M = sampledModel(2);
    auto [sl, real] = slAlgebra(2);
    std::vector<PolyVectorField> act;
    for (const auto& v : real.basis)
        act.push_back(M.fieldFromMatrix(M.generic() * toPoly(v, M.ring) - toPoly(v, M.ring) * M.generic()));
    Sampler s = [](std::uint64_t seed, std::uint64_t i) {
        auto m = sampleSL(2, seed, i);
        return std::vector<Rational>{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    };
    return QPSpace(M.ring, {makeCasimir(makePairing(sl, traceGram(real.basis)))}, act,
                   PolyVectorField(M.ring, 2), s);
}

}  // namespace

TEST(Fuse, HatSpaceBivectorIsTheCrossTerm) {
    auto H = hat(3, {1, 1, 1});
    auto F = fuse(H, H);
    ProductEmbedding E(H.ring, H.ring);
    std::vector<PolyVectorField> r1, r2;
    for (const auto& f : H.action) {
        r1.push_back(E.lift1(f));
        r2.push_back(E.lift2(f));
    }
    PolyVectorField expected(E.ring, 2);
    for (std::size_t i = 0; i < r1.size(); ++i)
        for (std::size_t j = 0; j < r2.size(); ++j)
            if (!isZero(H.g.t(i, j))) expected += wedge(r1[i], r2[j]) * (-H.g.t(i, j) / 2);
    EXPECT_EQ(F.pi, expected);
    EXPECT_EQ(F.ring->name(0), H.ring->name(0) + "@1");
}

TEST(Fuse, Associative) {
    for (auto H : {hat(2, {1, 1}), hat(3, {1, 1, 1})}) {
        auto left = fuse(fuse(H, H), H), right = fuse(H, fuse(H, H));
        EXPECT_TRUE(positionallyEqual(left.pi, right.pi));
        EXPECT_EQ(left.ring->size(), 3 * H.ring->size());
        EXPECT_EQ(right.action.size(), H.action.size());
    }
}

TEST(Fuse, NotCommutativeCorrectionChangesSign) {
    auto H = hat(3, {1, 1, 1});
    auto F = fuse(H, H);
    auto swapped = swapFactors(F.pi, H.ring->size());
    ASSERT_FALSE(swapped == F.pi);
    ProductEmbedding E(H.ring, H.ring);
    std::vector<PolyVectorField> r1, r2;
    for (const auto& f : H.action) {
        r1.push_back(E.lift1(f));
        r2.push_back(E.lift2(f));
    }
    EXPECT_EQ(F.pi - swapped, Rational(2) * fusionTerm(H.g.t, r1, r2, E.ring));
    auto rep = checkFusionAlgebra(H);
    EXPECT_TRUE(rep.passed()) << failures(rep);
}

TEST(InternalFuse, OfProductEqualsFuse) {
    auto H = hat(3, {1, 2});
    EXPECT_EQ(internalFuse(product(H, H), 0, 1).pi, fuse(H, H).pi);
    EXPECT_THROW(internalFuse(H, 0, 1), InputError);
}

TEST(InternalFuse, CommutesWithFuse) {
    // fusing the first two factors of A x B x C inside the product, or fusing A and B first
    auto H = hat(2, {1, 1});
    auto inside = internalFuse(product(product(H, H), H), 0, 1);
    auto outside = product(fuse(H, H), H);
    EXPECT_TRUE(positionallyEqual(inside.pi, outside.pi));
}

TEST(Fuse, PreservesQuasiPoissonOnAffineExamples) {
    for (auto [n, blocks] : std::vector<std::pair<std::size_t, std::vector<int>>>{{3, {1, 1, 1}}, {3, {1, 2}}}) {
        auto S = buildPi(parabolicQuadruple(n, blocks));
        QPSpace G(S.ring(), {S.bialg.g}, S.action, S.pi);
        ASSERT_TRUE(checkQPSpace(G).passed());
        auto rep = checkQPSpace(fuse(G, G));
        EXPECT_TRUE(rep.passed()) << failures(rep);
        auto H = hatSpace(S);
        ASSERT_TRUE(checkQPSpace(H).passed());
        rep = checkQPSpace(fuse(H, H));
        EXPECT_TRUE(rep.passed()) << failures(rep);
    }
}

TEST(Coisotropic, HatSpacePasses) {
    auto rep = checkCoisotropicAction(hat(3, {1, 1, 1}));
    EXPECT_TRUE(rep.passed()) << failures(rep);
}

TEST(Coisotropic, OnePointSpacePasses) {
    auto R = makeRing({});
    auto T = makeCasimir(parabolicQuadruple(2, {1, 1}).d);
    std::vector<PolyVectorField> act(T.dim(), PolyVectorField(R, 1));
    QPSpace point(R, {T}, act, PolyVectorField(R, 2));
    EXPECT_TRUE(checkCoisotropicAction(point).passed());
    EXPECT_TRUE(checkQPSpace(point).passed());
}

TEST(Coisotropic, ConjugationFailsAtFirstSample) {
    auto C = conjugationSpace();
    EXPECT_TRUE(checkQPSpace(C, {10, 7, 1}).passed());
    auto rep = checkCoisotropicAction(C, {10, 7, 1});
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.items().front().mode, Mode::sampled);
    EXPECT_NE(rep.items().front().witness.find("sample 0"), std::string::npos);
}

TEST(Diagonal, HatSpacesPass) {
    EXPECT_TRUE(diagonalIsQP(hat(2, {1, 1})).passed());
    EXPECT_TRUE(diagonalIsQP(hat(3, {1, 1, 1})).passed());
}

TEST(Diagonal, FailsWithoutCoisotropy) {
    auto rep = diagonalIsQP(conjugationSpace(), {10, 7, 1});
    ASSERT_FALSE(rep.passed());
    EXPECT_NE(rep.items().front().witness.find("on the diagonal"), std::string::npos);

    auto R = makeRing({"u"});
    LieAlgebra L({"e"});
    QPSpace line(R, {makeCasimir(makePairing(L, identity(1)))},
                 {PolyVectorField::basis(R, 0, Poly(R, 1))}, PolyVectorField(R, 2));
    auto c = checkCoisotropicAction(line);
    ASSERT_FALSE(c.passed());
    EXPECT_NE(c.items().front().witness.find("rho(t) component (u,u)"), std::string::npos);
    auto d = diagonalIsQP(line);
    ASSERT_FALSE(d.passed());
    EXPECT_NE(d.items().front().witness.find("{u@1,u@2} on the diagonal"), std::string::npos);
}

TEST(DirectSum, BlockDiagonalCasimir) {
    auto T = makeCasimir(parabolicQuadruple(2, {1, 1}).d);
    auto S = directSum({T, T});
    EXPECT_EQ(S.dim(), 6u);
    EXPECT_EQ(S.t(0, 3), 0);
    EXPECT_EQ(S.t(3 + 0, 3 + 1), T.t(0, 1));
    EXPECT_TRUE(sameAlgebra(T, T));
}

TEST(Sampling, FirstFailureIsDeterministicAcrossThreads) {
    auto f = [](std::size_t i) -> std::string { return i % 7 == 5 ? "bad" : ""; };
    auto a = firstFailure(40, 1, f), b = firstFailure(40, 4, f);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->first, 5u);
    EXPECT_EQ(b->first, 5u);
}
