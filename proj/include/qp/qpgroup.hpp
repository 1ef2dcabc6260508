#pragma once

#include "qp/fields.hpp"
#include "qp/jet.hpp"
#include "qp/manin.hpp"
#include "qp/report.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qp {

enum class GroupMode { affine, sampled };

using Entry = std::pair<std::size_t, std::size_t>;

// Coordinates on a matrix group. AFFINE: the free entries of a unipotent
// pattern, everything else constant. SAMPLED: all n^2 entries.
struct MatrixGroupModel {
    std::size_t n = 0;
    GroupMode mode = GroupMode::affine;
    std::vector<Entry> coords;
    RingPtr ring;
    std::string stem = "x";

    std::size_t size() const { return coords.size(); }

    std::optional<std::size_t> coordinateOf(std::size_t r, std::size_t c) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == Entry{r, c}) return i;
        return std::nullopt;
    }

    std::vector<std::string> names(const std::string& s) const {
        std::vector<std::string> v;
        for (auto [r, c] : coords) v.push_back(entryName(s, r, c, n));
        return v;
    }

    // The generic element, with coordinate i read as variable offset+i of `target`.
    PolyMatrix genericIn(const RingPtr& target, std::size_t offset = 0) const {
        PolyMatrix m(n, n, Poly(target));
        if (mode == GroupMode::affine)
            for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(target, 1);
        for (std::size_t i = 0; i < coords.size(); ++i)
            m(coords[i].first, coords[i].second) = Poly::variable(target, offset + i);
        return m;
    }
    PolyMatrix generic() const { return genericIn(ring); }

    // Tangent matrix -> vector field. With `strict`, entries outside the
    // coordinate pattern must vanish.
    PolyVectorField fieldFromMatrix(const PolyMatrix& V, bool strict = true) const {
        PolyVectorField f(ring, 1);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                auto i = coordinateOf(r, c);
                if (i) {
                    f.add(Index{std::uint8_t(*i)}, V(r, c));
                } else if (strict && !V(r, c).isZero()) {
                    throw InputError("tangent matrix leaves the coordinate pattern at entry (" +
                                     std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
                }
            }
        return f;
    }

    PolyMatrix matrixFromField(const PolyVectorField& f) const {
        PolyMatrix m(n, n, Poly(ring));
        for (const auto& [k, c] : f.components()) m(coords[k[0]].first, coords[k[0]].second) = c;
        return m;
    }
};

inline PolyMatrix toPoly(const RatMatrix& m, const RingPtr& ring) {
    return mapMatrix(m, Poly(ring), [&](const Rational& c) { return Poly(ring, c); });
}

inline MatrixGroupModel sampledModel(std::size_t n, const std::string& stem = "x") {
    MatrixGroupModel M;
    M.n = n;
    M.mode = GroupMode::sampled;
    M.stem = stem;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) M.coords.push_back({r, c});
    M.ring = makeRing(M.names(stem));
    return M;
}

inline MatrixGroupModel patternModel(std::size_t n, std::vector<Entry> coords,
                                     const std::string& stem = "x") {
    for (auto [r, c] : coords)
        if (r == c || r >= n || c >= n) throw InputError("invalid unipotent pattern entry");
    auto has = [&](std::size_t r, std::size_t c) {
        return std::find(coords.begin(), coords.end(), Entry{r, c}) != coords.end();
    };
    for (auto [r, s] : coords)
        for (auto [s2, c] : coords)
            if (s == s2 && (r == c || !has(r, c)))
                throw InputError("coordinate pattern is not closed under multiplication");
    MatrixGroupModel M;
    M.n = n;
    M.stem = stem;
    M.coords = std::move(coords);
    M.ring = makeRing(M.names(stem));
    return M;
}

// The unipotent group H = 1 + h, with h spanned by elementary matrices.
inline MatrixGroupModel affineModel(const ManinQuadruple& Q, const std::string& stem = "x") {
    if (!Q.matrices) throw InputError("quadruple has no matrix realization");
    const auto& R = *Q.matrices;
    std::vector<Entry> support;
    for (const auto& v : Q.a) {
        RatMatrix m = R.toMatrix(v);
        for (std::size_t r = 0; r < R.n; ++r)
            for (std::size_t c = 0; c < R.n; ++c)
                if (!isZero(m(r, c)) &&
                    std::find(support.begin(), support.end(), Entry{r, c}) == support.end())
                    support.push_back({r, c});
    }
    std::sort(support.begin(), support.end());
    if (support.size() != Q.a.size())
        throw InputError("h is not spanned by elementary matrices");
    for (auto [r, c] : support)
        if (!inSpan(Q.a, R.fromMatrix(elementary(R.n, r, c)), Q.dim()))
            throw InputError("h is not spanned by elementary matrices");
    return patternModel(R.n, support, stem);
}

// (1+N)^{-1} = 1 - N + N^2 - ... for nilpotent N.
template <class T>
Matrix<T> unipotentInverse(const Matrix<T>& X) {
    const std::size_t n = X.rows();
    Matrix<T> one = identityLike(n, X.sample());
    Matrix<T> N = X - one;
    Matrix<T> acc = one, power = one;
    for (std::size_t k = 1; k < n; ++k) {
        power = power * N * Rational(-1);
        acc += power;
    }
    return acc;
}

inline PolyVectorField leftInvariantField(const MatrixGroupModel& M, const RatMatrix& X) {
    return M.fieldFromMatrix(M.generic() * toPoly(X, M.ring));
}

inline PolyVectorField rightInvariantField(const MatrixGroupModel& M, const RatMatrix& X) {
    return M.fieldFromMatrix(toPoly(X, M.ring) * M.generic());
}

// The extended action of d on H: rhoHat(v)|_h = p(h v h^{-1}) h, with p the
// projection onto h along g + h*.
class RhoHat {
public:
    RhoHat(const MatrixGroupModel& M, const ManinQuadruple& Q) : M_(M), x_(M.generic()), xinv_(x_) {
        if (M.mode != GroupMode::affine) throw InputError("rhoHat needs the affine model of H");
        const auto& R = *Q.matrices;
        for (const auto& v : Q.a) E_.push_back(R.toMatrix(v));
        for (const auto& v : dualBasisInC(Q)) Ed_.push_back(R.toMatrix(v));
        xinv_ = unipotentInverse(x_);
    }

    PolyVectorField operator()(const RatMatrix& v) const {
        const std::size_t n = M_.n;
        PolyMatrix ad = x_ * toPoly(v, M_.ring) * xinv_;
        PolyMatrix p(n, n, Poly(M_.ring));
        for (std::size_t i = 0; i < E_.size(); ++i) {
            Poly tr(M_.ring);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (!isZero(Ed_[i](r, c))) tr += ad(c, r) * Ed_[i](r, c);
            if (tr.isZero()) continue;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (!isZero(E_[i](r, c))) p(r, c) += tr * E_[i](r, c);
        }
        return M_.fieldFromMatrix(p * x_);
    }

private:
    const MatrixGroupModel& M_;
    PolyMatrix x_, xinv_;
    std::vector<RatMatrix> E_, Ed_;
};

inline PolyVectorField rhoHat(const MatrixGroupModel& M, const ManinQuadruple& Q,
                              const RatMatrix& v) {
    return RhoHat(M, Q)(v);
}

struct QPGroupStructure {
    MatrixGroupModel model;
    ManinQuadruple quad;
    QuasiBialgebra bialg;
    std::vector<RatMatrix> hMats, hDualMats, gMats;
    std::vector<PolyVectorField> left;    // E_i^L
    std::vector<PolyVectorField> action;  // rho(e_alpha), alpha over the b-basis
    PolyVectorField pi;

    const RingPtr& ring() const { return model.ring; }
};

inline QPGroupStructure buildPi(const ManinQuadruple& Q, const MatrixGroupModel& M) {
    if (!Q.matrices) throw InputError("quadruple has no matrix realization");
    if (M.mode != GroupMode::affine || M.n != Q.matrices->n)
        throw InputError("group model does not match the quadruple");
    if (affineModel(Q, M.stem).coords != M.coords)
        throw InputError("group model pattern does not match h");
    QPGroupStructure S{M, Q, deriveBialgebra(Q), {}, {}, {}, {}, {}, PolyVectorField(M.ring, 2)};
    const auto& R = *Q.matrices;
    for (const auto& v : Q.a) S.hMats.push_back(R.toMatrix(v));
    for (const auto& v : dualBasisInC(Q)) S.hDualMats.push_back(R.toMatrix(v));
    for (const auto& v : Q.b) S.gMats.push_back(R.toMatrix(v));
    RhoHat hat(S.model, Q);
    for (const auto& X : S.hMats) S.left.push_back(leftInvariantField(S.model, X));
    for (const auto& v : S.gMats) S.action.push_back(hat(v));
    for (std::size_t i = 0; i < S.hMats.size(); ++i)
        S.pi += wedge(hat(S.hDualMats[i]), S.left[i]);
    S.pi *= Rational(1, 2);
    return S;
}

inline QPGroupStructure buildPi(const ManinQuadruple& Q) { return buildPi(Q, affineModel(Q)); }

inline Poly coordinateBracket(const QPGroupStructure& S, const Poly& f, const Poly& g) {
    requireSameRing(f.ring(), S.ring());
    requireSameRing(g.ring(), S.ring());
    return evaluate(S.pi, {differential(f), differential(g)}, Poly(S.ring()));
}

inline std::vector<int> blockIndex(const std::vector<int>& partition) {
    std::vector<int> block;
    for (std::size_t b = 0; b < partition.size(); ++b)
        for (int k = 0; k < partition[b]; ++k) block.push_back(int(b));
    return block;
}

// The explicit bracket of matrix entries on the block-unipotent group, with
// 1-based entry positions. Off-pattern entries are the constants 1 (diagonal) or 0.
inline Poly closedFormBracket(std::size_t N, const std::vector<int>& partition, Entry kl,
                              Entry mn) {
    auto Q = parabolicQuadruple(N, partition);
    auto M = affineModel(Q);
    auto block = blockIndex(partition);
    auto var = [&](std::size_t r, std::size_t c) {
        if (r == c) return Poly(M.ring, 1);
        auto i = M.coordinateOf(r, c);
        return i ? Poly::variable(M.ring, *i) : Poly(M.ring);
    };
    auto valid = [&](Entry e) {
        return e.first >= 1 && e.second >= 1 && M.coordinateOf(e.first - 1, e.second - 1);
    };
    if (!valid(kl) || !valid(mn)) throw InputError("entry is not a coordinate of the group");
    const std::size_t k = kl.first - 1, l = kl.second - 1, m = mn.first - 1, n = mn.second - 1;
    auto theta = [](int a, int b) { return a < b ? 1 : 0; };
    const int bk = block[k], bl = block[l], bm = block[m], bn = block[n];
    Poly r = var(k, n) * var(m, l) *
             Rational(theta(bl, bn) - theta(bn, bl) + theta(bk, bm) - theta(bm, bk));
    if (k == n)
        for (std::size_t s = 0; s < N; ++s)
            if (block[s] == bn) r += var(m, s) * var(s, l);
    if (m == l)
        for (std::size_t s = 0; s < N; ++s)
            if (block[s] == bl) r -= var(k, s) * var(s, n);
    return r * Rational(1, 2);
}

inline CheckReport checkQuasiJacobi(const QPGroupStructure& S) {
    CheckReport rep;
    rep.timed("quasi-Jacobi", Mode::symbolic, [&]() -> Outcome {
        auto res = quasiJacobiResidual(S.pi, S.action, S.bialg.g);
        if (res.isZero()) return {};
        return failure("1/2[pi,pi] - rho(phi) has " + componentWitness(res));
    });
    return rep;
}

inline CheckReport checkIdentityAndInvariance(const QPGroupStructure& S) {
    CheckReport rep;
    std::vector<Rational> origin(S.ring()->size(), 0);
    rep.timed("pi vanishes at 1", Mode::symbolic, [&]() -> Outcome {
        for (const auto& [k, c] : S.pi.components())
            if (!isZero(c.evaluate(origin)))
                return failure("component (" + S.ring()->name(k[0]) + "," + S.ring()->name(k[1]) +
                               ") is " + toString(c.evaluate(origin)) + " at 1");
        return {};
    });
    rep.timed("g-invariance", Mode::symbolic, [&]() -> Outcome {
        for (std::size_t a = 0; a < S.action.size(); ++a) {
            auto r = schouten(S.action[a], S.pi);
            if (!r.isZero())
                return failure("[rho(" + S.quad.bNames[a] + "), pi] has " + componentWitness(r));
        }
        return {};
    });
    rep.timed("g-action", Mode::symbolic, [&]() -> Outcome {
        auto w = actionWitness(S.bialg.g.algebra(), S.action, S.ring());
        return w.empty() ? Outcome{} : failure(w);
    });
    return rep;
}

// Both sides of the multiplicativity identity as antisymmetric matrices of
// polynomials in the doubled coordinates (x for h, y for h').
struct MultiplicativityTerms {
    RingPtr ring;
    PolyMatrix lhs{0, 0, Poly(nullptr)}, leftTranslate{0, 0, Poly(nullptr)},
        rightTranslate{0, 0, Poly(nullptr)}, correction{0, 0, Poly(nullptr)};
    PolyMatrix residual() const {
        return lhs - leftTranslate - rightTranslate + correction * Rational(1, 2);
    }
};

inline MultiplicativityTerms multiplicativityTerms(const QPGroupStructure& S) {
    const auto& M = S.model;
    const std::size_t m = M.size(), n = M.n;
    auto names = M.names("x");
    auto ys = M.names("y");
    names.insert(names.end(), ys.begin(), ys.end());
    MultiplicativityTerms T;
    T.ring = makeRing(names);
    const auto& D = T.ring;
    std::vector<std::size_t> toX(m), toY(m);
    for (std::size_t i = 0; i < m; ++i) toX[i] = i, toY[i] = m + i;
    PolyMatrix X = M.genericIn(D, 0), Y = M.genericIn(D, m), XY = X * Y;

    auto entries = [&](const PolyMatrix& V) {
        std::vector<Poly> v;
        for (auto [r, c] : M.coords) v.push_back(V(r, c));
        return v;
    };
    auto wedgeInto = [&](PolyMatrix& B, const std::vector<Poly>& u, const std::vector<Poly>& v,
                         const Poly& coeff) {
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q) {
                Poly w = u[p] * v[q] - u[q] * v[p];
                if (!w.isZero()) B(p, q) += coeff * w;
            }
    };
    PolyMatrix zero(m, m, Poly(D));
    T.lhs = T.leftTranslate = T.rightTranslate = T.correction = zero;

    std::vector<Poly> atXY = entries(XY);
    for (const auto& [k, c] : S.pi.components()) {
        Poly v = c.substitute(atXY, D);
        T.lhs(k[0], k[1]) += v;
        T.lhs(k[1], k[0]) -= v;
    }
    std::vector<PolyMatrix> Ep;
    for (auto [r, c] : M.coords) Ep.push_back(toPoly(elementary(n, r, c), D));
    for (const auto& [k, c] : S.pi.components()) {
        wedgeInto(T.leftTranslate, entries(X * Ep[k[0]]), entries(X * Ep[k[1]]), c.remap(D, toY));
        wedgeInto(T.rightTranslate, entries(Ep[k[0]] * Y), entries(Ep[k[1]] * Y), c.remap(D, toX));
    }
    const auto& t = S.bialg.g.t;
    std::vector<PolyMatrix> rx, ry;
    for (const auto& f : S.action) {
        PolyMatrix a = M.matrixFromField(f);
        rx.push_back(mapMatrix(a, Poly(D), [&](const Poly& p) { return p.remap(D, toX); }));
        ry.push_back(mapMatrix(a, Poly(D), [&](const Poly& p) { return p.remap(D, toY); }));
    }
    for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < ry.size(); ++j)
            if (!isZero(t(i, j)))
                wedgeInto(T.correction, entries(rx[i] * Y), entries(X * ry[j]), Poly(D, t(i, j)));
    return T;
}

inline CheckReport checkMultiplicativity(const QPGroupStructure& S) {
    CheckReport rep;
    rep.timed("multiplicativity", Mode::symbolic, [&]() -> Outcome {
        auto T = multiplicativityTerms(S);
        auto R = T.residual();
        for (std::size_t p = 0; p < R.rows(); ++p)
            for (std::size_t q = p + 1; q < R.cols(); ++q)
                if (!R(p, q).isZero())
                    return failure("component (" + S.ring()->name(p) + "," + S.ring()->name(q) +
                                   ") of pi(xy) minus translates is " + R(p, q).str());
        return {};
    });
    return rep;
}

// delta(E_i) read off from [E_i^L, pi] at the identity, as full antisymmetric matrices.
inline std::vector<RatMatrix> linearizeAtIdentity(const QPGroupStructure& S) {
    const auto& M = S.model;
    const std::size_t m = M.size(), dimH = S.hMats.size();
    const auto& R = *S.quad.matrices;
    RatMatrix C(dimH, m, 0);  // coordinates of E_p in the h-basis
    for (std::size_t p = 0; p < m; ++p) {
        Vec v = coordinatesIn(S.quad.a,
                              R.fromMatrix(elementary(M.n, M.coords[p].first, M.coords[p].second)),
                              S.quad.dim());
        for (std::size_t a = 0; a < dimH; ++a) C(a, p) = v[a];
    }
    std::vector<Rational> origin(S.ring()->size(), 0);
    std::vector<RatMatrix> out;
    for (std::size_t i = 0; i < dimH; ++i) {
        auto B = schouten(S.left[i], S.pi);
        RatMatrix d(dimH, dimH, 0);
        for (const auto& [k, c] : B.components()) {
            Rational v = c.evaluate(origin);
            if (isZero(v)) continue;
            for (std::size_t a = 0; a < dimH; ++a)
                for (std::size_t b = 0; b < dimH; ++b)
                    d(a, b) += v * (C(a, k[0]) * C(b, k[1]) - C(a, k[1]) * C(b, k[0]));
        }
        out.push_back(d);
    }
    return out;
}

inline CheckReport checkLinearization(const QPGroupStructure& S) {
    CheckReport rep;
    rep.timed("linearization is delta", Mode::symbolic, [&]() -> Outcome {
        auto lin = linearizeAtIdentity(S);
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (!(lin[i] == S.bialg.cobracket[i]))
                return failure("[" + S.quad.aNames[i] + "^L, pi] at 1 is " + matrixString(lin[i]) +
                               " but delta gives " + matrixString(S.bialg.cobracket[i]));
        return {};
    });
    return rep;
}

// [X^L, pi] = delta(X)^L - 1/2 t^{ij} rho_i ^ [X^L, rho_j] for every h-basis X.
inline CheckReport checkLieDerivative(const QPGroupStructure& S) {
    CheckReport rep;
    rep.timed("Lie derivative of pi", Mode::symbolic, [&]() -> Outcome {
        const auto& t = S.bialg.g.t;
        for (std::size_t i = 0; i < S.left.size(); ++i) {
            auto lhs = schouten(S.left[i], S.pi);
            auto rhs = liftAntisymmetric(S.bialg.cobracket[i], S.left, S.ring());
            for (std::size_t a = 0; a < S.action.size(); ++a)
                for (std::size_t b = 0; b < S.action.size(); ++b)
                    if (!isZero(t(a, b)))
                        rhs -= wedge(S.action[a], schouten(S.left[i], S.action[b])) *
                               (t(a, b) / 2);
            auto d = lhs - rhs;
            if (!d.isZero())
                return failure("for " + S.quad.aNames[i] + ": " + componentWitness(d));
        }
        return {};
    });
    return rep;
}

inline CheckReport checkGroup(const QPGroupStructure& S) {
    CheckReport rep;
    rep.merge(checkIdentityAndInvariance(S));
    rep.merge(checkQuasiJacobi(S));
    rep.merge(checkMultiplicativity(S));
    rep.merge(checkLinearization(S));
    rep.merge(checkLieDerivative(S));
    return rep;
}

// ---- Gauss decompositions ----

class DecompositionUndefined : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
struct GaussFactors {
    Matrix<T> upper, middle, lower;
};

template <class T>
Matrix<T> subMatrix(const Matrix<T>& m, std::size_t r0, std::size_t r1, std::size_t c0,
                    std::size_t c1) {
    Matrix<T> s(r1 - r0, c1 - c0, zeroLike(m.sample()));
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) s(r - r0, c - c0) = m(r, c);
    return s;
}

template <class T>
void setBlock(Matrix<T>& m, std::size_t r0, std::size_t c0, const Matrix<T>& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
}

inline std::vector<std::size_t> blockOffsets(const std::vector<int>& partition) {
    std::vector<std::size_t> off{0};
    for (int p : partition) off.push_back(off.back() + std::size_t(p));
    return off;
}

// d = U G L with U upper block-unipotent, G block-diagonal, L lower
// block-unipotent, peeling blocks off from the bottom-right corner.
template <class T>
std::optional<GaussFactors<T>> tryGaussUDL(const Matrix<T>& d, const std::vector<int>& partition) {
    const auto off = blockOffsets(partition);
    const std::size_t n = d.rows();
    if (off.back() != n || d.cols() != n) throw InputError("matrix does not match the partition");
    GaussFactors<T> F{identityLike(n, d.sample()), Matrix<T>(n, n, zeroLike(d.sample())),
                      identityLike(n, d.sample())};
    Matrix<T> S = d;
    for (std::size_t b = partition.size(); b-- > 0;) {
        const std::size_t o = off[b], e = off[b + 1];
        Matrix<T> Dd = subMatrix(S, o, e, o, e);
        setBlock(F.middle, o, o, Dd);
        if (o == 0) break;
        auto Dinv = tryInverse(Dd);
        if (!Dinv) return std::nullopt;
        Matrix<T> B = subMatrix(S, 0, o, o, e), C = subMatrix(S, o, e, 0, o);
        Matrix<T> X = B * *Dinv, Y = *Dinv * C;
        setBlock(F.upper, 0, o, X);
        setBlock(F.lower, o, 0, Y);
        S = subMatrix(S, 0, o, 0, o) - X * C;
    }
    return F;
}

// d = L G U from the leading blocks (L lower, U upper block-unipotent).
template <class T>
std::optional<GaussFactors<T>> tryBlockLDU(const Matrix<T>& d, const std::vector<int>& partition) {
    const auto off = blockOffsets(partition);
    const std::size_t n = d.rows();
    if (off.back() != n || d.cols() != n) throw InputError("matrix does not match the partition");
    // result.lower holds L, result.upper holds U.
    GaussFactors<T> F{identityLike(n, d.sample()), Matrix<T>(n, n, zeroLike(d.sample())),
                      identityLike(n, d.sample())};
    Matrix<T> S = d;  // trailing Schur complement, indexed from offset o
    for (std::size_t b = 0; b < partition.size(); ++b) {
        const std::size_t o = off[b], e = off[b + 1], w = e - o;
        Matrix<T> A = subMatrix(S, 0, w, 0, w);
        setBlock(F.middle, o, o, A);
        if (e == n) break;
        auto Ainv = tryInverse(A);
        if (!Ainv) return std::nullopt;
        const std::size_t rest = S.rows();
        Matrix<T> B = subMatrix(S, 0, w, w, rest), C = subMatrix(S, w, rest, 0, w);
        Matrix<T> X = *Ainv * B, Y = C * *Ainv;
        setBlock(F.upper, o, e, X);
        setBlock(F.lower, e, o, Y);
        S = subMatrix(S, w, rest, w, rest) - Y * B;
    }
    return F;
}

inline GaussFactors<Rational> gaussDecompose(const ManinQuadruple& Q, const RatMatrix& d) {
    if (!Q.matrices || Q.matrices->partition.empty())
        throw InputError("quadruple has no block structure");
    if (determinant(d) != 1) throw InputError("matrix does not have determinant 1");
    auto F = tryGaussUDL(d, Q.matrices->partition);
    if (!F) throw DecompositionUndefined("a trailing block minor is singular");
    return *F;
}

// ---- (H^ fused with H^) reduced by H, pushed along h -> (h, 1) ----

inline PolyVectorField reducePairToGroup(const QPGroupStructure& S) {
    const auto& M = S.model;
    const auto& Q = S.quad;
    const std::size_t m = M.size();
    auto names = M.names("p");
    auto second = M.names("q");
    names.insert(names.end(), second.begin(), second.end());
    RingPtr D = makeRing(names);
    std::vector<std::size_t> to1(m), to2(m);
    for (std::size_t i = 0; i < m; ++i) to1[i] = i, to2[i] = m + i;

    RhoHat hat(M, Q);
    const auto& dBasis = Q.matrices->basis;
    std::vector<PolyVectorField> r1, r2;
    for (const auto& v : dBasis) {
        auto f = hat(v);
        PolyVectorField a(D, 1), b(D, 1);
        for (const auto& [k, c] : f.components()) {
            a.add(Index{std::uint8_t(k[0])}, c.remap(D, to1));
            b.add(Index{std::uint8_t(m + k[0])}, c.remap(D, to2));
        }
        r1.push_back(std::move(a));
        r2.push_back(std::move(b));
    }
    const RatMatrix td = makeCasimir(Q.d).t;
    PolyVectorField fused(D, 2);
    for (std::size_t i = 0; i < dBasis.size(); ++i)
        for (std::size_t j = 0; j < dBasis.size(); ++j)
            if (!isZero(td(i, j))) fused += wedge(r1[i], r2[j]) * (-td(i, j) / 2);

    // restrict to the second factor at 1, then push forward by (v1, v2) -> v1 - h v2
    std::vector<Poly> atSection;
    for (std::size_t i = 0; i < m; ++i) atSection.push_back(Poly::variable(M.ring, i));
    for (std::size_t i = 0; i < m; ++i) atSection.push_back(Poly(M.ring));
    PolyMatrix x = M.generic();
    std::vector<PolyVectorField> image;
    for (std::size_t i = 0; i < m; ++i)
        image.push_back(PolyVectorField::basis(M.ring, i, Poly(M.ring, 1)));
    for (std::size_t i = 0; i < m; ++i)
        image.push_back(M.fieldFromMatrix(
            x * toPoly(elementary(M.n, M.coords[i].first, M.coords[i].second), M.ring) *
            Rational(-1)));
    PolyVectorField out(M.ring, 2);
    for (const auto& [k, c] : fused.components()) {
        Poly v = c.substitute(atSection, M.ring);
        if (!v.isZero()) out += v * wedge(image[k[0]], image[k[1]]);
    }
    return out;
}

// ---- sampling ----

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-index generator, so sample i does not depend on evaluation order.
inline std::mt19937_64 sampleEngine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL)));
}

// Product of k elementary unipotents 1 + c E_ij with c in {-5..5} \ {0}.
inline RatMatrix sampleSL(std::size_t n, std::uint64_t seed, std::uint64_t index, int k = 8) {
    auto eng = sampleEngine(seed, index);
    RatMatrix g = identity(n);
    for (int s = 0; s < k; ++s) {
        std::size_t i = eng() % n;
        std::size_t j = (i + 1 + eng() % (n - 1)) % n;
        int c = int(eng() % 10) - 5;
        if (c >= 0) ++c;
        RatMatrix e = identity(n);
        e(i, j) = c;
        g = g * e;
    }
    return g;
}

}  // namespace qp
