#include "qp/jet.hpp"
#include "qp/linalg.hpp"
#include "qp/polyvector.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qp;

namespace {

RingPtr xyz() { return makeRing({"x", "y", "z"}); }
Poly var(const RingPtr& r, std::size_t i) { return Poly::variable(r, i); }
PolyVectorField del(const RingPtr& r, std::size_t i) { return PolyVectorField::basis(r, i, Poly(r, 1)); }
PolyForm dx(const RingPtr& r, std::size_t i) { return PolyForm::basis(r, i, Poly(r, 1)); }

Poly randomPoly(std::mt19937& eng, const RingPtr& r, int terms = 3) {
    Poly p(r);
    std::uniform_int_distribution<int> coeff(-4, 4), den(1, 3), ex(0, 2);
    for (int t = 0; t < terms; ++t) {
        Poly m(r, frac(coeff(eng), den(eng)));
        for (std::size_t i = 0; i < r->size(); ++i)
            for (int e = ex(eng); e > 0; --e) m = m * var(r, i);
        p += m;
    }
    return p;
}

template <class K>
Alternating<Poly, K> randomAlternating(std::mt19937& eng, const RingPtr& r, int degree) {
    Alternating<Poly, K> a(r, degree);
    std::uniform_int_distribution<std::size_t> pick(0, r->size() - 1);
    for (int t = 0; t < 3; ++t) {
        std::vector<std::size_t> idx;
        for (int d = 0; d < degree; ++d) idx.push_back(pick(eng));
        a.addUnsorted(idx, randomPoly(eng, r, 2));
    }
    return a;
}

// Lie bracket of vector fields straight from the derivation formula.
PolyVectorField lieBracket(const PolyVectorField& X, const PolyVectorField& Y) {
    const auto& r = X.ring();
    PolyVectorField out(r, 1);
    for (std::size_t i = 0; i < r->size(); ++i) {
        Poly Yi = Y.find(Index{std::uint8_t(i)}) ? *Y.find(Index{std::uint8_t(i)}) : Poly(r);
        Poly Xi = X.find(Index{std::uint8_t(i)}) ? *X.find(Index{std::uint8_t(i)}) : Poly(r);
        out.add(Index{std::uint8_t(i)}, apply(X, Yi) - apply(Y, Xi));
    }
    return out;
}

}  // namespace

TEST(Rational, LowestTermsAndSign) {
    Rational r = parseRational("6/-4");
    EXPECT_EQ(r, Rational(-3, 2));
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(toString(parseRational("10/5")), "2");
    EXPECT_THROW(parseRational("1/0"), InputError);
    EXPECT_THROW(parseRational("one"), InputError);
}

TEST(Poly, DistributiveAndLowestTerms) {
    std::mt19937 eng(11);
    auto r = xyz();
    for (int trial = 0; trial < 40; ++trial) {
        Poly p = randomPoly(eng, r), q = randomPoly(eng, r), s = randomPoly(eng, r);
        EXPECT_EQ((p + q) * s, p * s + q * s);
        EXPECT_EQ(p * q, q * p);
        Poly prod = (p + q) * s;
        for (const auto& [m, c] : prod.terms()) {
            EXPECT_NE(c, 0);
            Rational copy = c;
            copy.canonicalize();
            EXPECT_EQ(copy.get_num(), c.get_num());
        }
    }
}

TEST(Poly, PrintsGradedLex) {
    auto r = makeRing({"x12", "x13", "x23"});
    Poly p = var(r, 1) - Rational(1, 2) * var(r, 0) * var(r, 2);
    EXPECT_EQ(p.str(), "x13 - 1/2*x12*x23");
}

TEST(Wedge, Examples) {
    auto r = xyz();
    EXPECT_TRUE(wedge(del(r, 0), del(r, 0)).isZero());
    EXPECT_EQ(wedge(del(r, 0), del(r, 1)), -wedge(del(r, 1), del(r, 0)));
    auto w = wedge(wedge(var(r, 0) * del(r, 0), var(r, 1) * del(r, 1)), del(r, 2));
    ASSERT_EQ(w.components().size(), 1u);
    EXPECT_EQ(*w.find(Index{0, 1, 2}), var(r, 0) * var(r, 1));
}

TEST(Interior, Examples) {
    auto r = xyz();
    EXPECT_EQ(interior(dx(r, 0), del(r, 0)), PolyVectorField::scalar(Poly(r, 1)));
    EXPECT_TRUE(interior(dx(r, 0), del(r, 1)).isZero());
    EXPECT_EQ(interior(dx(r, 0), wedge(del(r, 0), del(r, 1))), del(r, 1));
}

TEST(Interior, IsAnOddDerivation) {
    std::mt19937 eng(5);
    auto r = makeRing({"a", "b", "c", "d"});
    for (int trial = 0; trial < 20; ++trial) {
        auto alpha = randomAlternating<FormKind>(eng, r, 1);
        for (int p = 1; p <= 2; ++p) {
            auto P = randomAlternating<VectorKind>(eng, r, p);
            auto Q = randomAlternating<VectorKind>(eng, r, 2);
            auto lhs = interior(alpha, wedge(P, Q));
            auto rhs = wedge(interior(alpha, P), Q) +
                       (p % 2 ? Rational(-1) : Rational(1)) * wedge(P, interior(alpha, Q));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(DeRham, Examples) {
    auto r = xyz();
    auto x = var(r, 0), y = var(r, 1);
    EXPECT_EQ(differential(x * y), y * dx(r, 0) + x * dx(r, 1));
    EXPECT_TRUE(derham(dx(r, 0)).isZero());
    EXPECT_EQ(derham(x * dx(r, 1)), wedge(dx(r, 0), dx(r, 1)));
}

TEST(DeRham, SquaresToZero) {
    std::mt19937 eng(3);
    auto r = makeRing({"a", "b", "c", "d"});
    for (int trial = 0; trial < 20; ++trial)
        for (int deg = 0; deg <= 2; ++deg) {
            auto w = deg == 0 ? PolyForm::scalar(randomPoly(eng, r))
                              : randomAlternating<FormKind>(eng, r, deg);
            EXPECT_TRUE(derham(derham(w)).isZero());
        }
}

TEST(Schouten, Examples) {
    auto r = xyz();
    auto x = var(r, 0);
    EXPECT_EQ(schouten(del(r, 0), x * del(r, 0)), del(r, 0));
    auto pi = wedge(del(r, 0), del(r, 1));
    EXPECT_TRUE(schouten(pi, pi).isZero());
}

TEST(Schouten, VectorFieldOnFunctionIsDerivative) {
    std::mt19937 eng(8);
    auto r = xyz();
    for (int trial = 0; trial < 10; ++trial) {
        auto X = randomAlternating<VectorKind>(eng, r, 1);
        Poly f = randomPoly(eng, r);
        EXPECT_EQ(schouten(X, PolyVectorField::scalar(f)), PolyVectorField::scalar(apply(X, f)));
    }
}

// [a^b, c] = [a,c]^b + a^[b,c] for vector fields, with the Lie bracket computed
// independently from the derivation formula.
TEST(Schouten, LeibnizOracleOnDecomposables) {
    auto r = xyz();
    auto x = var(r, 0), y = var(r, 1);
    auto check = [&](const PolyVectorField& a, const PolyVectorField& b, const PolyVectorField& c) {
        EXPECT_EQ(schouten(wedge(a, b), c), wedge(lieBracket(a, c), b) + wedge(a, lieBracket(b, c)));
    };
    check(x * del(r, 1), del(r, 2), y * del(r, 0));
    std::mt19937 eng(21);
    for (int trial = 0; trial < 25; ++trial)
        check(randomAlternating<VectorKind>(eng, r, 1), randomAlternating<VectorKind>(eng, r, 1),
              randomAlternating<VectorKind>(eng, r, 1));
}

TEST(Schouten, GradedJacobi) {
    std::mt19937 eng(17);
    auto r = makeRing({"a", "b", "c", "d"});
    for (int trial = 0; trial < 12; ++trial)
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; q <= 2; ++q) {
                auto P = randomAlternating<VectorKind>(eng, r, p);
                auto Q = randomAlternating<VectorKind>(eng, r, q);
                auto R = randomAlternating<VectorKind>(eng, r, 2);
                Rational sign = ((p - 1) * (q - 1)) % 2 ? -1 : 1;
                EXPECT_EQ(schouten(P, schouten(Q, R)),
                          schouten(schouten(P, Q), R) + sign * schouten(Q, schouten(P, R)));
                EXPECT_EQ(schouten(P, Q), -sign * schouten(Q, P));
            }
}

TEST(Schouten, MismatchedRingsRejected) {
    auto a = makeRing({"x"}), b = makeRing({"y"});
    EXPECT_THROW(schouten(del(a, 0), del(b, 0)), InputError);
}

TEST(Jet, AgreesWithPolynomialExpansion) {
    std::mt19937 eng(2);
    auto r = xyz();
    std::vector<Rational> pt{2, Rational(-1, 3), 5};
    for (int trial = 0; trial < 10; ++trial) {
        Poly f = randomPoly(eng, r), g = randomPoly(eng, r);
        EXPECT_EQ(expandAt(f * g, pt, r, 2), expandAt(f, pt, r, 2) * expandAt(g, pt, r, 2));
    }
    Jet u = Jet::coordinate(r, 0, 3, 3);
    EXPECT_EQ(u * u.inverse(), Jet::constant(r, 1, 3));
}

TEST(Linalg, DeterminantAndInverse) {
    RatMatrix m(2, 2, 0);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 3;
    m(1, 1) = 2;
    EXPECT_EQ(determinant(m), 1);
    EXPECT_EQ(m * inverse(m), identity(2));
    RatMatrix s(2, 2, 1);
    EXPECT_FALSE(tryInverse(s).has_value());
}
