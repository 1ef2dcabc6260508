#include "qp/lie.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qp;

namespace {

Vec vec(std::initializer_list<Rational> v) { return Vec(v); }

// sl(2) in the basis (e, h, f) with the trace pairing.
CasimirT sl2() {
    LieAlgebra L({"e", "h", "f"});
    L.setBracket(1, 0, vec({2, 0, 0}));
    L.setBracket(1, 2, vec({0, 0, -2}));
    L.setBracket(0, 2, vec({0, 1, 0}));
    RatMatrix g(3, 3, 0);
    g(0, 2) = g(2, 0) = 1;
    g(1, 1) = 2;
    return makeCasimir(makePairing(L, g));
}

bool passes(const CheckReport& r) { return r.passed(); }

}  // namespace

TEST(Jacobi, Sl2Passes) { EXPECT_TRUE(passes(checkJacobi(sl2().algebra()))); }

TEST(Jacobi, AbelianPasses) { EXPECT_TRUE(passes(checkJacobi(LieAlgebra({"a", "b", "c"})))); }

namespace {

// Jacobiator of basis elements expanded straight from the structure constants.
Vec jacobiator(const LieAlgebra& L, std::size_t i, std::size_t j, std::size_t k) {
    auto br = [&](const Vec& a, const Vec& b) {
        Vec r(L.dim(), 0);
        for (std::size_t p = 0; p < L.dim(); ++p)
            for (std::size_t q = 0; q < L.dim(); ++q)
                if (!isZero(a[p]) && !isZero(b[q])) {
                    Vec c = L.bracket(L.unit(p), L.unit(q));
                    for (std::size_t m = 0; m < L.dim(); ++m) r[m] += a[p] * b[q] * c[m];
                }
        return r;
    };
    Vec x = L.unit(i), y = L.unit(j), z = L.unit(k);
    Vec r = br(x, br(y, z)), s = br(y, br(z, x)), t = br(z, br(x, y));
    for (std::size_t m = 0; m < L.dim(); ++m) r[m] += s[m] + t[m];
    return r;
}

}  // namespace

TEST(Jacobi, AllPlusOneConstantsFormALieAlgebra) {
    LieAlgebra L({"e1", "e2", "e3"});
    L.setBracket(0, 1, vec({0, 0, 1}));
    L.setBracket(0, 2, vec({0, 1, 0}));
    L.setBracket(1, 2, vec({1, 0, 0}));
    EXPECT_EQ(jacobiator(L, 0, 1, 2), vec({0, 0, 0}));
    EXPECT_TRUE(checkJacobi(L).passed());
}

TEST(Jacobi, ViolationIsReportedAtTheTriple) {
    LieAlgebra L({"e1", "e2", "e3"});
    L.setBracket(0, 1, vec({0, 0, 1}));
    L.setBracket(1, 2, vec({0, 1, 0}));
    ASSERT_EQ(jacobiator(L, 0, 1, 2), vec({0, 0, 1}));
    auto rep = checkJacobi(L);
    ASSERT_FALSE(rep.passed());
    EXPECT_NE(rep.items().front().witness.find("triple (e1,e2,e3)"), std::string::npos)
        << rep.items().front().witness;
}

TEST(Bracket, DefiningRelations) {
    auto T = sl2();
    const auto& L = T.algebra();
    EXPECT_EQ(L.bracket(L.unit(0), L.unit(2)), L.unit(1));
    EXPECT_EQ(L.bracket(L.unit(2), L.unit(0)), vec({0, -1, 0}));
}

TEST(TSharp, Sl2TracePairing) {
    auto T = sl2();
    EXPECT_EQ(tSharp(T, vec({1, 0, 0})), vec({0, 0, 1}));
    EXPECT_EQ(tSharp(T, vec({0, 1, 0})), vec({0, Rational(1, 2), 0}));
    EXPECT_EQ(tSharp(T, vec({0, 0, 0})), vec({0, 0, 0}));
}

TEST(TSharp, InvertsLowering) {
    auto T = sl2();
    std::mt19937 eng(4);
    for (int trial = 0; trial < 10; ++trial) {
        Vec x(3);
        for (auto& c : x) c = frac(int(eng() % 9) - 4, int(eng() % 3) + 1);
        EXPECT_EQ(tSharp(T, T.pairing.lower(x)), x);
    }
}

TEST(Phi, AbelianVanishes) {
    LieAlgebra L({"a", "b", "c"});
    auto T = makeCasimir(makePairing(L, identity(3)));
    EXPECT_TRUE(computePhi(T).isZero());
}

TEST(Phi, Sl2ValueIsQuarter) {
    auto T = sl2();
    Vec e = vec({1, 0, 0}), h = vec({0, 1, 0}), f = vec({0, 0, 1});
    EXPECT_EQ(phiFormula(T, e, h, f), Rational(1, 4));
    EXPECT_EQ(computePhi(T).evaluate({e, h, f}), Rational(1, 4));
}

TEST(Phi, StoredTrivectorReproducesFormula) {
    auto T = sl2();
    auto phi = computePhi(T);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c) {
                auto A = T.algebra().unit(a), B = T.algebra().unit(b), C = T.algebra().unit(c);
                EXPECT_EQ(phi.evaluate({A, B, C}), phiFormula(T, A, B, C));
            }
}

// Transport sl(2) along a random change of basis and compare phi on transported covectors.
TEST(Phi, BasisChangeInvariance) {
    auto T = sl2();
    const auto& L = T.algebra();
    RatMatrix P(3, 3, 0);
    P(0, 0) = 1, P(0, 1) = 2, P(1, 1) = 1, P(1, 2) = Rational(-1, 3), P(2, 0) = 5, P(2, 2) = 1;
    ASSERT_NE(determinant(P), 0);
    RatMatrix Pinv = inverse(P);
    auto column = [&](std::size_t i) {
        Vec v(3);
        for (std::size_t k = 0; k < 3; ++k) v[k] = P(k, i);
        return v;
    };
    LieAlgebra M({"u", "v", "w"});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            M.setBracket(i, j, matVec(Pinv, L.bracket(column(i), column(j))));
    auto T2 = makeCasimir(makePairing(M, P.transposed() * T.pairing.gram * P));
    auto phi = computePhi(T), phi2 = computePhi(T2);
    RatMatrix Pt = P.transposed();
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c) {
                Vec A = L.unit(a), B = L.unit(b), C = L.unit(c);
                EXPECT_EQ(phi2.evaluate({matVec(Pt, A), matVec(Pt, B), matVec(Pt, C)}),
                          phi.evaluate({A, B, C}));
            }
}

TEST(AdAction, Examples) {
    auto T = sl2();
    const auto& L = T.algebra();
    Tensor ef{3, 2, {}};
    ef.add({0, 2}, 1);
    EXPECT_TRUE(adAction(L, L.unit(1), ef).isZero());
    for (std::size_t x = 0; x < 3; ++x) EXPECT_TRUE(adAction(L, L.unit(x), matrixTensor(T.t)).isZero());
}

TEST(Pairing, RejectsNonInvariantAndDegenerate) {
    auto T = sl2();
    EXPECT_THROW(makePairing(T.algebra(), identity(3)), InputError);
    EXPECT_THROW(makePairing(T.algebra(), RatMatrix(3, 3, 0)), InputError);
    EXPECT_TRUE(checkPairing(T.pairing).passed());
}
