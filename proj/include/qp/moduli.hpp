#pragma once

#include "qp/moment.hpp"

namespace qp {

// Disks with two marked points each (first, second), glued at corners.
struct SurfaceConfig {
    std::vector<std::pair<std::string, std::string>> disks;
    std::vector<std::pair<std::string, std::string>> gluings;
};

struct ModuliSpace {
    SurfaceConfig config;
    std::size_t n = 0;
    std::vector<std::string> points;  // one per remaining summand of the acting algebra
    QPSpace space;
};

inline CasimirT traceCasimir(std::size_t n) {
    auto [L, R] = slAlgebra(n);
    return makeCasimir(makePairing(L, traceGram(R.basis)));
}

// Flattened entries of sampled SL(n) matrices, `count` independent factors.
inline Sampler slSampler(std::size_t n, std::size_t count) {
    return [n, count](std::uint64_t seed, std::uint64_t index) {
        std::vector<Rational> p;
        for (std::size_t k = 0; k < count; ++k) {
            RatMatrix g = sampleSL(n, seed, index * count + k);
            for (std::size_t i = 0; i < n * n; ++i) p.push_back(g(i / n, i % n));
        }
        return p;
    };
}

// Holonomy along each disk; the first marked point acts by g -> a g
// (generator -X^R), the second by g -> g b^{-1} (generator X^L).
inline ModuliSpace buildModuli(const SurfaceConfig& cfg, std::size_t n) {
    const std::size_t k = cfg.disks.size();
    if (k == 0) throw InputError("surface has no disks");
    std::vector<std::string> names;
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                names.push_back(entryName("x", r, c, n) + "@" + std::to_string(d + 1));
    if (names.size() > kMaxVars) throw InputError("too many disks for this matrix size");
    RingPtr ring = makeRing(names);
    auto [L, R] = slAlgebra(n);
    const CasimirT td = traceCasimir(n);

    std::vector<std::string> points;
    std::vector<CasimirT> parts;
    std::vector<PolyVectorField> act;
    for (std::size_t d = 0; d < k; ++d) {
        PolyMatrix g(n, n, Poly(ring));
        for (std::size_t i = 0; i < n * n; ++i) g(i / n, i % n) = Poly::variable(ring, d * n * n + i);
        auto field = [&](const PolyMatrix& V) {
            PolyVectorField f(ring, 1);
            for (std::size_t i = 0; i < n * n; ++i)
                f.add(Index{std::uint8_t(d * n * n + i)}, V(i / n, i % n));
            return f;
        };
        for (const auto& p : {cfg.disks[d].first, cfg.disks[d].second}) {
            if (std::find(points.begin(), points.end(), p) != points.end())
                throw InputError("marked point '" + p + "' used twice");
            points.push_back(p);
            parts.push_back(td);
        }
        for (const auto& X : R.basis) act.push_back(field(toPoly(X, ring) * g * Rational(-1)));
        for (const auto& X : R.basis) act.push_back(field(g * toPoly(X, ring)));
    }
    ModuliSpace out{cfg, n, points,
                    QPSpace(ring, parts, act, PolyVectorField(ring, 2), slSampler(n, k))};
    for (const auto& [x, y] : cfg.gluings) {
        auto i = std::find(out.points.begin(), out.points.end(), x);
        auto j = std::find(out.points.begin(), out.points.end(), y);
        if (i == out.points.end() || j == out.points.end() || i == j)
            throw InputError("gluing " + x + "," + y + " does not name two live marked points");
        const std::size_t a = i - out.points.begin(), b = j - out.points.begin();
        out.space = internalFuse(out.space, a, b);
        out.points[a] = x + "+" + y;
        out.points.erase(out.points.begin() + b);
    }
    return out;
}

inline SurfaceConfig annulusConfig() { return {{{"B1", "A1"}, {"B2", "A2"}}, {{"A1", "A2"}, {"B1", "B2"}}}; }
inline SurfaceConfig triangleConfig() { return {{{"P1", "Z1"}, {"P2", "Z2"}}, {{"Z1", "Z2"}}}; }

// 1/2[(E^i ^ E_i)^L - (E^i ^ E_i)^R - (e^a)^L ^ (e_a)^R] on all n^2 entries.
// `middle` = -1 flips the sign of the right-invariant term (negative control).
inline PolyVectorField annulusBivector(const ManinQuadruple& Q, const MatrixGroupModel& M,
                                       int middle = 1) {
    if (M.mode != GroupMode::sampled) throw InputError("annulus bivector lives on all of D");
    const auto& R = *Q.matrices;
    auto L = [&](const RatMatrix& X) { return leftInvariantField(M, X); };
    auto Rt = [&](const RatMatrix& X) { return rightInvariantField(M, X); };
    auto dual = dualBasisInC(Q);
    PolyVectorField pi(M.ring, 2);
    for (std::size_t i = 0; i < Q.a.size(); ++i) {
        RatMatrix E = R.toMatrix(Q.a[i]), Ed = R.toMatrix(dual[i]);
        pi += wedge(L(Ed), L(E));
        pi -= wedge(Rt(Ed), Rt(E)) * Rational(middle);
    }
    auto B = deriveBialgebra(Q);
    for (std::size_t a = 0; a < Q.b.size(); ++a) {
        Vec up(Q.dim(), 0);
        for (std::size_t b = 0; b < Q.b.size(); ++b)
            for (std::size_t k = 0; k < Q.dim(); ++k) up[k] += B.g.t(a, b) * Q.b[b][k];
        pi -= wedge(L(R.toMatrix(up)), Rt(R.toMatrix(Q.b[a])));
    }
    return pi * Rational(1, 2);
}

// D = SL(n) with the annulus bivector and g acting by conjugation.
inline QPSpace annulusSpace(const ManinQuadruple& Q, int middle = 1) {
    const std::size_t n = Q.matrices->n;
    auto M = sampledModel(n);
    auto B = deriveBialgebra(Q);
    std::vector<PolyVectorField> act;
    PolyMatrix x = M.generic();
    for (const auto& v : Q.b) {
        PolyMatrix V = toPoly(Q.matrices->toMatrix(v), M.ring);
        act.push_back(M.fieldFromMatrix(x * V - V * x));
    }
    return QPSpace(M.ring, {B.g}, act, annulusBivector(Q, M, middle), slSampler(n, 1));
}

inline RatMatrix evaluateMatrix(const PolyMatrix& m, const std::vector<Rational>& pt) {
    return mapMatrix(m, Rational(0), [&](const Poly& p) { return p.evaluate(pt); });
}

// Bivector with rational entries on an n x n matrix space, as an n^2 x n^2 matrix.
inline RatMatrix bivectorAt(const PolyVectorField& P, const std::vector<Rational>& pt,
                            std::size_t dim) {
    RatMatrix B(dim, dim, 0);
    for (const auto& [k, c] : P.components()) {
        Rational v = c.evaluate(pt);
        B(k[0], k[1]) += v;
        B(k[1], k[0]) -= v;
    }
    return B;
}

inline std::vector<Rational> flatten(const RatMatrix& g) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) v.push_back(g(i, j));
    return v;
}

// Multiplicativity of pi on D at sampled pairs (g, g').
inline Outcome multiplicativityAtSamples(const QPSpace& S, std::size_t n, const SampleOptions& opt) {
    const std::size_t m = n * n;
    auto bad = firstFailure(opt.samples, opt.threads, [&](std::size_t s) -> std::string {
        RatMatrix g = sampleSL(n, opt.seed, 2 * s), h = sampleSL(n, opt.seed, 2 * s + 1);
        auto pg = flatten(g), ph = flatten(h), pgh = flatten(g * h);
        RatMatrix lhs = bivectorAt(S.pi, pgh, m);
        RatMatrix Bg = bivectorAt(S.pi, pg, m), Bh = bivectorAt(S.pi, ph, m);
        auto unit = [&](std::size_t p) { return elementary(n, p / n, p % n); };
        auto addWedge = [&](RatMatrix& T, const RatMatrix& u, const RatMatrix& v, const Rational& c) {
            auto a = flatten(u), b = flatten(v);
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q) T(p, q) += c * (a[p] * b[q] - a[q] * b[p]);
        };
        RatMatrix rhs(m, m, 0);
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                if (!isZero(Bh(p, q))) addWedge(rhs, g * unit(p), g * unit(q), Bh(p, q));
                if (!isZero(Bg(p, q))) addWedge(rhs, unit(p) * h, unit(q) * h, Bg(p, q));
            }
        const auto& t = S.g.t;
        for (std::size_t i = 0; i < S.action.size(); ++i)
            for (std::size_t j = 0; j < S.action.size(); ++j)
                if (!isZero(t(i, j))) {
                    RatMatrix ri(n, n, 0), rj(n, n, 0);
                    for (const auto& [k, c] : S.action[i].components())
                        ri(k[0] / n, k[0] % n) = c.evaluate(pg);
                    for (const auto& [k, c] : S.action[j].components())
                        rj(k[0] / n, k[0] % n) = c.evaluate(ph);
                    addWedge(rhs, ri * h, g * rj, -t(i, j) / 2);
                }
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                if (lhs(p, q) != rhs(p, q))
                    return "component (" + S.ring->name(p) + "," + S.ring->name(q) + ") is " +
                           toString(lhs(p, q)) + " at gh but translates give " + toString(rhs(p, q));
        return {};
    });
    if (!bad) return {};
    return failure("sample pair " + std::to_string(bad->first) + ": " + bad->second);
}

// Restriction of the annulus bivector along the affine embedding H -> D.
inline Outcome restrictionMatches(const ManinQuadruple& Q) {
    auto S = buildPi(Q);
    auto D = annulusSpace(Q);
    const std::size_t n = Q.matrices->n;
    PolyMatrix h = S.model.generic();
    std::vector<Poly> images;
    for (std::size_t i = 0; i < n * n; ++i) images.push_back(h(i / n, i % n));
    PolyVectorField r(S.ring(), 2);
    for (const auto& [k, c] : D.pi.components()) {
        Poly v = c.substitute(images, S.ring());
        if (v.isZero()) continue;
        auto p = S.model.coordinateOf(k[0] / n, k[0] % n);
        auto q = S.model.coordinateOf(k[1] / n, k[1] % n);
        if (!p || !q)
            return failure("restricted bivector is not tangent to H: component (" +
                           D.ring->name(k[0]) + "," + D.ring->name(k[1]) + ") = " + v.str());
        r.addUnsorted({*p, *q}, v);
    }
    auto d = r - S.pi;
    if (!d.isZero()) return failure("restriction differs from pi on H: " + componentWitness(d));
    return {};
}

// Jets of the entries of sampled factors: variable offset + i is entry i.
inline Matrix<Jet> jetMatrix(const RingPtr& ring, const std::vector<Rational>& pt, std::size_t offset,
                             std::size_t n, int order) {
    Matrix<Jet> m(n, n, Jet::constant(ring, 0, order));
    for (std::size_t i = 0; i < n * n; ++i)
        m(i / n, i % n) = Jet::coordinate(ring, offset + i, pt[offset + i], order);
    return m;
}

// Pi(dF_a, dF_b) for a bivector with rational entries and first-order jets F.
inline Rational pushBracket(const RatMatrix& Pi, const Jet& F, const Jet& G) {
    const std::size_t N = Pi.rows();
    Vec a(N, 0), b(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        a[i] = F.poly().derivative(i).constantTerm();
        b[i] = G.poly().derivative(i).constantTerm();
    }
    Rational s = 0;
    for (std::size_t i = 0; i < N; ++i) {
        if (isZero(a[i])) continue;
        for (std::size_t j = 0; j < N; ++j)
            if (!isZero(Pi(i, j))) s += Pi(i, j) * a[i] * b[j];
    }
    return s;
}

// Compare the quotient bracket of the pulled-back coordinates with a target
// bivector at the image point. `quotient` returns the image as jets, or
// nothing outside the Gauss cell; `target` gives the bivector at the image.
struct QuotientComparison {
    std::size_t skipped = 0, compared = 0;
    std::optional<std::pair<std::size_t, std::string>> failure;
};

inline QuotientComparison compareQuotient(
    const QPSpace& M, const std::function<std::optional<std::vector<Jet>>(const std::vector<Rational>&)>&
                          quotient,
    const std::function<RatMatrix(const std::vector<Rational>&)>& target,
    const std::vector<std::string>& targetNames, const SampleOptions& opt) {
    std::vector<int> state(opt.samples, 0);
    const std::size_t N = M.ring->size();
    auto bad = firstFailure(opt.samples, opt.threads, [&](std::size_t s) -> std::string {
        auto pt = M.sampler(opt.seed, s);
        auto q = quotient(pt);
        if (!q) {
            state[s] = 1;
            return {};
        }
        std::vector<Rational> image;
        for (const auto& j : *q) image.push_back(j.value());
        RatMatrix Pi = bivectorAt(M.pi, pt, N), T = target(image);
        for (std::size_t a = 0; a < q->size(); ++a)
            for (std::size_t b = a + 1; b < q->size(); ++b) {
                Rational lhs = pushBracket(Pi, (*q)[a], (*q)[b]);
                if (lhs != T(a, b))
                    return "{" + targetNames[a] + "," + targetNames[b] + "} is " + toString(lhs) +
                           " on the quotient but " + toString(T(a, b)) + " on the target";
            }
        return {};
    });
    QuotientComparison r;
    for (int s : state) (s ? r.skipped : r.compared) += 1;
    r.failure = bad;
    if (bad) r.compared = bad->first + 1;
    return r;
}

inline Outcome comparisonOutcome(const QuotientComparison& c, std::size_t samples) {
    if (c.failure) return failure("sample " + std::to_string(c.failure->first) + ": " + c.failure->second);
    if (c.skipped == samples) return inconclusive("every sample point is outside the Gauss cell");
    if (c.skipped)
        return std::make_pair(Status::pass, std::to_string(c.skipped) +
                                                " sample point(s) outside the Gauss cell skipped");
    return {};
}

// The annulus from two bigons, reduced by P+ x H* through the section where
// the second holonomy is 1: q(g1, g2) = l^{-1} g1 u^{-1} with g2 = l u.
inline Outcome annulusConstructionMatches(const ManinQuadruple& Q, const SampleOptions& opt) {
    const std::size_t n = Q.matrices->n;
    const auto& part = Q.matrices->partition;
    auto mod = buildModuli(annulusConfig(), n);
    auto A = annulusSpace(Q);
    const RingPtr& ring = mod.space.ring;
    auto quotient = [&](const std::vector<Rational>& pt) -> std::optional<std::vector<Jet>> {
        auto g1 = jetMatrix(ring, pt, 0, n, 1), g2 = jetMatrix(ring, pt, n * n, n, 1);
        auto F = tryBlockLDU(g2, part);  // g2 = L G U
        if (!F) return std::nullopt;
        auto u = tryInverse(F->middle * F->upper);
        if (!u) return std::nullopt;
        Matrix<Jet> q = unipotentInverse(F->lower) * g1 * *u;
        std::vector<Jet> out;
        for (std::size_t i = 0; i < n * n; ++i) out.push_back(q(i / n, i % n));
        return out;
    };
    auto target = [&](const std::vector<Rational>& image) { return bivectorAt(A.pi, image, n * n); };
    return comparisonOutcome(compareQuotient(mod.space, quotient, target, A.ring->names(), opt),
                             opt.samples);
}

// Gauss projection D -> H*, d = h g h*, as jets.
inline JetMomentMap gaussMoment(const ManinQuadruple& Q) {
    const std::size_t n = Q.matrices->n;
    const auto part = Q.matrices->partition;
    const DualChart H(Q);
    return [n, part, coords = H.model.coords](const std::vector<Jet>& x)
               -> std::optional<std::vector<Jet>> {
        Matrix<Jet> d(n, n, x.front());
        for (std::size_t i = 0; i < n * n; ++i) d(i / n, i % n) = x[i];
        auto F = tryGaussUDL(d, part);
        if (!F) return std::nullopt;
        std::vector<Jet> mu;
        for (auto [r, c] : coords) mu.push_back(F->lower(r, c));
        return mu;
    };
}

inline CheckReport checkAnnulusClaims(const ManinQuadruple& Q, const SampleOptions& opt) {
    CheckReport rep;
    auto A = annulusSpace(Q);
    auto qp = checkQPSpace(A, opt);
    for (const auto& it : qp.items()) {
        auto item = it;
        item.name = "(a) " + it.name;
        rep.add(item);
    }
    rep.timed("(b) multiplicativity", Mode::sampled,
              [&] { return multiplicativityAtSamples(A, Q.matrices->n, opt); });
    rep.timed("(c) restriction to H", Mode::symbolic, [&] { return restrictionMatches(Q); });
    rep.merge(checkMomentAtSamples(A, Q, gaussMoment(Q), opt), "(d) ");
    rep.timed("(e) moduli construction", Mode::sampled,
              [&] { return annulusConstructionMatches(Q, opt); });
    return rep;
}

// Flipping the sign of the right-invariant term. Quasi-Jacobi cannot see the
// flip: left and right invariant fields commute and E^i ^ E_i is g-invariant,
// so all cross brackets vanish. Multiplicativity does see it.
inline CheckReport annulusNegativeControl(const ManinQuadruple& Q, const SampleOptions& opt) {
    CheckReport rep;
    auto A = annulusSpace(Q, -1);
    rep.timed("flipped annulus rejected at the first sample", Mode::sampled, [&]() -> Outcome {
        SampleOptions first = opt;
        first.samples = 1;
        auto qj = mustVanish(obligations("1/2[pi,pi]-rho(phi)",
                                         quasiJacobiResidual(A.pi, A.action, A.g)),
                             A.sampler, first);
        auto mult = multiplicativityAtSamples(A, Q.matrices->n, first);
        std::string note = qj ? "quasi-Jacobi: " + qj->second : "quasi-Jacobi unaffected";
        if (mult) return std::make_pair(Status::pass, "multiplicativity: " + mult->second + "; " + note);
        if (qj) return std::make_pair(Status::pass, note);
        return failure("the sign-flipped bivector passes every check at the first sample");
    });
    return rep;
}

// Triangle: two bigons glued at one corner, reduced by P- x P- x H via
// (g1, g2) -> U(g1) U(g2)^{-1}, compared with pi on H.
inline CheckReport triangleEquivalence(const ManinQuadruple& Q, const SampleOptions& opt) {
    CheckReport rep;
    const std::size_t n = Q.matrices->n;
    const auto& part = Q.matrices->partition;
    auto S = buildPi(Q);
    auto mod = buildModuli(triangleConfig(), n);
    const RingPtr& ring = mod.space.ring;
    rep.timed("sampled quotient", Mode::sampled, [&]() -> Outcome {
        auto quotient = [&](const std::vector<Rational>& pt) -> std::optional<std::vector<Jet>> {
            auto g1 = jetMatrix(ring, pt, 0, n, 1), g2 = jetMatrix(ring, pt, n * n, n, 1);
            auto F1 = tryBlockLDU(g1, part), F2 = tryBlockLDU(g2, part);
            if (!F1 || !F2) return std::nullopt;
            Matrix<Jet> q = F1->upper * unipotentInverse(F2->upper);
            std::vector<Jet> out;
            for (auto [r, c] : S.model.coords) out.push_back(q(r, c));
            return out;
        };
        auto target = [&](const std::vector<Rational>& image) {
            return bivectorAt(S.pi, image, S.model.size());
        };
        return comparisonOutcome(compareQuotient(mod.space, quotient, target, S.ring()->names(), opt),
                                 opt.samples);
    });
    rep.timed("symbolic pair reduction", Mode::symbolic, [&]() -> Outcome {
        auto d = reducePairToGroup(S) - S.pi;
        if (d.isZero()) return {};
        return failure(componentWitness(d));
    });
    return rep;
}

// The bivectors from gluing (x, y) and (y, x) differ somewhere.
inline CheckReport fusionOrderDependence(std::size_t n, const SampleOptions& opt) {
    CheckReport rep;
    rep.timed("fusion order matters", Mode::sampled, [&]() -> Outcome {
        auto swapped = annulusConfig();
        std::swap(swapped.gluings[1].first, swapped.gluings[1].second);
        auto a = buildModuli(annulusConfig(), n), b = buildModuli(swapped, n);
        auto diff = a.space.pi - b.space.pi;
        auto found = firstFailure(opt.samples, 1, [&](std::size_t s) -> std::string {
            auto pt = a.space.sampler(opt.seed, s);
            for (const auto& [k, c] : diff.components())
                if (!isZero(c.evaluate(pt))) return "differ at component (" + a.space.ring->name(k[0]) +
                                                    "," + a.space.ring->name(k[1]) + ")";
            return {};
        });
        if (found)
            return std::make_pair(Status::pass,
                                  "sample " + std::to_string(found->first) + ": " + found->second);
        return failure("both fusion orders agree at every sample point");
    });
    return rep;
}

}  // namespace qp
