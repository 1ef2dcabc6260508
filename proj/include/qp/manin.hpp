#pragma once

#include "qp/lie.hpp"

#include <array>
#include <numeric>
#include <optional>

namespace qp {

// Concrete n x n matrices for the basis of d, with a left inverse for
// reading coordinates back off a matrix.
struct MatrixRealization {
    std::size_t n = 0;
    std::vector<RatMatrix> basis;
    std::vector<int> partition;
    RatMatrix leftInverse{0, 0, 0};

    MatrixRealization() = default;
    MatrixRealization(std::size_t size, std::vector<RatMatrix> mats, std::vector<int> parts)
        : n(size), basis(std::move(mats)), partition(std::move(parts)) {
        RatMatrix B(n * n, basis.size(), 0);
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t i = 0; i < n * n; ++i) B(i, k) = basis[k](i / n, i % n);
        RatMatrix BtB = B.transposed() * B;
        leftInverse = inverse(BtB) * B.transposed();
    }

    RatMatrix toMatrix(const Vec& v) const {
        RatMatrix m(n, n, 0);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!isZero(v[k])) m += basis[k] * v[k];
        return m;
    }

    Vec fromMatrix(const RatMatrix& m) const {
        Vec flat(n * n);
        for (std::size_t i = 0; i < n * n; ++i) flat[i] = m(i / n, i % n);
        Vec v = matVec(leftInverse, flat);
        if (!(toMatrix(v) == m)) throw InputError("matrix is not in the realized algebra");
        return v;
    }
};

inline std::string entryName(const std::string& stem, std::size_t r, std::size_t c,
                             std::size_t n) {
    if (n < 10) return stem + std::to_string(r + 1) + std::to_string(c + 1);
    return stem + std::to_string(r + 1) + "_" + std::to_string(c + 1);
}

// sl(n): off-diagonal E_kl in row-major order, then H_i = E_ii - E_{i+1,i+1}.
inline std::pair<LieAlgebra, MatrixRealization> slAlgebra(std::size_t n) {
    if (n < 2) throw InputError("sl(n) needs n >= 2");
    std::vector<std::string> names;
    std::vector<RatMatrix> mats;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (k != l) {
                names.push_back(entryName("E", k, l, n));
                mats.push_back(elementary(n, k, l));
            }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        names.push_back("H" + std::to_string(i + 1));
        mats.push_back(elementary(n, i, i) - elementary(n, i + 1, i + 1));
    }
    MatrixRealization R(n, mats, {});
    LieAlgebra L(names);
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j)
            L.setBracket(i, j, R.fromMatrix(commutator(mats[i], mats[j])));
    return {std::move(L), std::move(R)};
}

inline RatMatrix traceGram(const std::vector<RatMatrix>& mats) {
    RatMatrix g(mats.size(), mats.size(), 0);
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = 0; j < mats.size(); ++j) g(i, j) = trace(mats[i] * mats[j]);
    return g;
}

struct ManinQuadruple {
    InvariantPairing d;
    std::vector<Vec> a, b, c;
    std::vector<std::string> aNames, bNames, cNames;
    std::optional<MatrixRealization> matrices;

    std::size_t dim() const { return d.algebra.dim(); }
};

inline std::vector<std::string> defaultNames(const std::string& stem, std::size_t k) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

inline bool inSpan(const std::vector<Vec>& basis, const Vec& v, std::size_t dim) {
    if (isZeroVec(v)) return true;
    auto cols = basis;
    std::size_t r0 = basis.empty() ? 0 : rank(columns(basis, dim));
    cols.push_back(v);
    return rank(columns(cols, dim)) == r0;
}

inline ManinQuadruple dualQuadruple(const ManinQuadruple& Q) {
    ManinQuadruple D = Q;
    std::swap(D.a, D.c);
    std::swap(D.aNames, D.cNames);
    return D;
}

inline void validateShape(const ManinQuadruple& Q) {
    const std::size_t n = Q.dim();
    for (const auto* part : {&Q.a, &Q.b, &Q.c})
        for (const auto& v : *part)
            if (v.size() != n)
                throw InputError("sub-basis vector of length " + std::to_string(v.size()) +
                                 " in a " + std::to_string(n) + "-dimensional algebra");
    if (Q.a.size() + Q.b.size() + Q.c.size() != n)
        throw InputError("sub-basis sizes " + std::to_string(Q.a.size()) + "+" +
                         std::to_string(Q.b.size()) + "+" + std::to_string(Q.c.size()) +
                         " do not add up to dim d = " + std::to_string(n));
}

inline CheckReport checkQuadruple(const ManinQuadruple& Q) {
    validateShape(Q);
    const auto& L = Q.d.algebra;
    const std::size_t n = Q.dim();
    CheckReport rep;
    rep.merge(checkJacobi(L), "d ");
    rep.merge(checkPairing(Q.d), "d ");

    auto closed = [&](const std::vector<Vec>& s, const std::vector<std::string>& names,
                      const char* label) {
        std::string w;
        for (std::size_t i = 0; i < s.size() && w.empty(); ++i)
            for (std::size_t j = i + 1; j < s.size() && w.empty(); ++j)
                if (!inSpan(s, L.bracket(s[i], s[j]), n))
                    w = std::string(label) + " not bracket-closed: [" + names[i] + "," +
                        names[j] + "] leaves the span";
        rep.record(std::string(label) + " subalgebra", w.empty(), w);
    };
    closed(Q.a, Q.aNames, "a");
    closed(Q.b, Q.bNames, "b");
    closed(Q.c, Q.cNames, "c");

    std::vector<Vec> all = Q.a;
    all.insert(all.end(), Q.b.begin(), Q.b.end());
    all.insert(all.end(), Q.c.begin(), Q.c.end());
    std::size_t r = rank(columns(all, n));
    rep.record("d = a+b+c", r == n,
               "combined rank " + std::to_string(r) + " < " + std::to_string(n));

    auto orth = [&](const std::vector<Vec>& s, const std::vector<std::string>& sn,
                    const std::vector<Vec>& t, const std::vector<std::string>& tn) {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
                if (!isZero(Q.d(s[i], t[j])))
                    return "<" + sn[i] + "," + tn[j] + "> = " + Q.d(s[i], t[j]).get_str();
        return std::string{};
    };
    // a-perp = a+b: a is orthogonal to a and b, and the dimensions match.
    {
        std::string w = orth(Q.a, Q.aNames, Q.a, Q.aNames);
        if (w.empty()) w = orth(Q.a, Q.aNames, Q.b, Q.bNames);
        if (w.empty() && n - Q.a.size() != Q.a.size() + Q.b.size())
            w = "dim a-perp != dim a + dim b";
        rep.record("a-perp = a+b", w.empty(), w);
    }
    {
        std::string w = orth(Q.c, Q.cNames, Q.c, Q.cNames);
        if (w.empty()) w = orth(Q.c, Q.cNames, Q.b, Q.bNames);
        if (w.empty() && n - Q.c.size() != Q.c.size() + Q.b.size())
            w = "dim c-perp != dim b + dim c";
        rep.record("c-perp = b+c", w.empty(), w);
    }
    {
        std::string w = orth(Q.a, Q.aNames, Q.a, Q.aNames);
        rep.record("a isotropic", w.empty(), "a not isotropic: " + w);
        w = orth(Q.c, Q.cNames, Q.c, Q.cNames);
        rep.record("c isotropic", w.empty(), "c not isotropic: " + w);
    }
    {
        RatMatrix gb(Q.b.size(), Q.b.size(), 0);
        for (std::size_t i = 0; i < Q.b.size(); ++i)
            for (std::size_t j = 0; j < Q.b.size(); ++j) gb(i, j) = Q.d(Q.b[i], Q.b[j]);
        rep.record("b nondegenerate", Q.b.empty() || !isZero(determinant(gb)),
                   "pairing restricted to b is degenerate");
    }
    auto stable = [&](const std::vector<Vec>& s, const std::vector<std::string>& sn,
                      const char* label) {
        std::string w;
        for (std::size_t i = 0; i < Q.b.size() && w.empty(); ++i)
            for (std::size_t j = 0; j < s.size() && w.empty(); ++j)
                if (!inSpan(s, L.bracket(Q.b[i], s[j]), n))
                    w = "[" + Q.bNames[i] + "," + sn[j] + "] not in " + label;
        rep.record(std::string("[b,") + label + "] in " + label, w.empty(), w);
    };
    stable(Q.a, Q.aNames, "a");
    stable(Q.c, Q.cNames, "c");
    return rep;
}

inline ManinQuadruple parabolicQuadruple(std::size_t N, const std::vector<int>& partition) {
    if (N < 2) throw InputError("N must be at least 2");
    if (partition.empty()) throw InputError("empty partition");
    for (int p : partition)
        if (p <= 0) throw InputError("partition entries must be positive");
    if (std::accumulate(partition.begin(), partition.end(), 0) != int(N))
        throw InputError("partition does not sum to N");
    if (partition.size() == 1)
        throw InputError("partition of length 1 gives empty a and c");

    std::vector<int> block;
    for (std::size_t b = 0; b < partition.size(); ++b)
        for (int k = 0; k < partition[b]; ++k) block.push_back(int(b));

    auto [L, R] = slAlgebra(N);
    R.partition = partition;
    ManinQuadruple Q;
    Q.d = makePairing(L, traceGram(R.basis));
    auto add = [&](std::vector<Vec>& part, std::vector<std::string>& names, const RatMatrix& m,
                   const std::string& nm) {
        part.push_back(R.fromMatrix(m));
        names.push_back(nm);
    };
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
            if (block[k] < block[l]) {
                add(Q.a, Q.aNames, elementary(N, k, l), entryName("E", k, l, N));
                add(Q.c, Q.cNames, elementary(N, l, k), entryName("E", l, k, N));
            }
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
            if (k != l && block[k] == block[l])
                add(Q.b, Q.bNames, elementary(N, k, l), entryName("E", k, l, N));
    for (std::size_t i = 0; i + 1 < N; ++i)
        add(Q.b, Q.bNames, elementary(N, i, i) - elementary(N, i + 1, i + 1),
            "H" + std::to_string(i + 1));
    Q.matrices = R;
    return Q;
}

struct QuasiBialgebra {
    LieAlgebra h;
    CasimirT g;
    // action[alpha](k, i): coefficient of E_k in rho(e_alpha) E_i.
    std::vector<RatMatrix> action;
    // cobracket[i](a, b): delta(E_i)^{ab}, a full (not necessarily antisymmetric) 2-tensor.
    std::vector<RatMatrix> cobracket;

    std::size_t dimH() const { return h.dim(); }
    std::size_t dimG() const { return g.dim(); }

    Vec act(std::size_t alpha, const Vec& X) const { return matVec(action[alpha], X); }

    RatMatrix delta(const Vec& X) const {
        RatMatrix r(dimH(), dimH(), 0);
        for (std::size_t i = 0; i < X.size(); ++i)
            if (!isZero(X[i])) r += cobracket[i] * X[i];
        return r;
    }
};

// Coordinates of v in the basis s (v must lie in the span).
inline Vec coordinatesIn(const std::vector<Vec>& s, const Vec& v, std::size_t dim) {
    auto x = solve(columns(s, dim), v);
    if (!x) throw InputError("vector is not in the span of the sub-basis");
    return *x;
}

// Basis E^i of c dual to the basis E_i of a.
inline std::vector<Vec> dualBasisInC(const ManinQuadruple& Q) {
    const std::size_t m = Q.a.size(), n = Q.dim();
    RatMatrix G(m, m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) G(i, j) = Q.d(Q.c[i], Q.a[j]);
    auto M = tryInverse(G);
    if (!M) throw InputError("pairing between c and a is degenerate");
    std::vector<Vec> dual(m, Vec(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!isZero((*M)(i, j)))
                for (std::size_t k = 0; k < n; ++k) dual[i][k] += (*M)(i, j) * Q.c[j][k];
    return dual;
}

inline LieAlgebra restrictAlgebra(const ManinQuadruple& Q, const std::vector<Vec>& s,
                                  const std::vector<std::string>& names) {
    LieAlgebra L(names);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            L.setBracket(i, j, coordinatesIn(s, Q.d.algebra.bracket(s[i], s[j]), Q.dim()));
    return L;
}

inline QuasiBialgebra deriveBialgebra(const ManinQuadruple& Q) {
    auto rep = checkQuadruple(Q);
    if (!rep.passed()) {
        for (const auto& it : rep.items())
            if (it.status != Status::pass)
                throw InputError("quadruple fails '" + it.name + "': " + it.witness);
    }
    const auto& L = Q.d.algebra;
    const std::size_t n = Q.dim(), m = Q.a.size(), r = Q.b.size();
    QuasiBialgebra B;
    B.h = restrictAlgebra(Q, Q.a, Q.aNames);
    RatMatrix gb(r, r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gb(i, j) = Q.d(Q.b[i], Q.b[j]);
    B.g = makeCasimir(makePairing(restrictAlgebra(Q, Q.b, Q.bNames), gb));
    for (std::size_t al = 0; al < r; ++al) {
        RatMatrix act(m, m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            Vec col = coordinatesIn(Q.a, L.bracket(Q.b[al], Q.a[i]), n);
            for (std::size_t k = 0; k < m; ++k) act(k, i) = col[k];
        }
        B.action.push_back(act);
    }
    auto dual = dualBasisInC(Q);
    // <delta(X), A (x) B> = <X, [B, A]>
    for (std::size_t i = 0; i < m; ++i) {
        RatMatrix dl(m, m, 0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                dl(a, b) = Q.d(Q.a[i], L.bracket(dual[b], dual[a]));
        B.cobracket.push_back(dl);
    }
    return B;
}

// Bilinear operation on h* induced by delta: [E^a, E^b]_* = sum_i delta(E_i)^{ba} E^i.
inline Vec dualBracket(const QuasiBialgebra& B, const Vec& x, const Vec& y) {
    Vec r(B.dimH(), 0);
    for (std::size_t i = 0; i < B.dimH(); ++i)
        for (std::size_t a = 0; a < B.dimH(); ++a) {
            if (isZero(x[a])) continue;
            for (std::size_t b = 0; b < B.dimH(); ++b)
                if (!isZero(y[b])) r[i] += x[a] * y[b] * B.cobracket[i](b, a);
        }
    return r;
}

inline Vec unitVec(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

inline CheckReport checkCobracket(const QuasiBialgebra& B) {
    CheckReport rep;
    const std::size_t m = B.dimH();
    std::string w;
    for (std::size_t i = 0; i < m && w.empty(); ++i)
        for (std::size_t a = 0; a < m && w.empty(); ++a)
            for (std::size_t b = a; b < m && w.empty(); ++b)
                if (B.cobracket[i](a, b) != -B.cobracket[i](b, a))
                    w = "delta(" + B.h.name(i) + ") not antisymmetric at (" + B.h.name(a) + "," +
                        B.h.name(b) + ")";
    rep.record("cobracket antisymmetric", w.empty(), w);
    w.clear();
    for (std::size_t a = 0; a < m && w.empty(); ++a)
        for (std::size_t b = a + 1; b < m && w.empty(); ++b)
            for (std::size_t c = b + 1; c < m && w.empty(); ++c) {
                auto x = unitVec(m, a), y = unitVec(m, b), z = unitVec(m, c);
                Vec s = dualBracket(B, x, dualBracket(B, y, z));
                Vec t = dualBracket(B, y, dualBracket(B, z, x));
                Vec u = dualBracket(B, z, dualBracket(B, x, y));
                for (std::size_t k = 0; k < m; ++k) s[k] += t[k] + u[k];
                if (!isZeroVec(s))
                    w = "co-Jacobi fails on dual triple (" + B.h.name(a) + "*," + B.h.name(b) +
                        "*," + B.h.name(c) + "*): " + vecString(s);
            }
    rep.record("cobracket co-Jacobi", w.empty(), w);
    return rep;
}

// ad^{(2)}_X on a 2-tensor: ad_X (x) 1 + 1 (x) ad_X.
inline RatMatrix ad2(const LieAlgebra& h, const Vec& X, const RatMatrix& T) {
    RatMatrix A = h.ad(X);
    return A * T + T * A.transposed();
}

inline RatMatrix wedgeMatrix(const Vec& u, const Vec& v) {
    RatMatrix r(u.size(), u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) r(i, j) = u[i] * v[j] - v[i] * u[j];
    return r;
}

// The four terms of the cocycle identity, in order.
inline std::array<RatMatrix, 4> mcocTerms(const QuasiBialgebra& B, const Vec& X, const Vec& Y) {
    const std::size_t m = B.dimH();
    RatMatrix t4(m, m, 0);
    for (std::size_t i = 0; i < B.dimG(); ++i)
        for (std::size_t j = 0; j < B.dimG(); ++j)
            if (!isZero(B.g.t(i, j))) t4 -= wedgeMatrix(B.act(i, X), B.act(j, Y)) * B.g.t(i, j);
    return {ad2(B.h, X, B.delta(Y)), ad2(B.h, Y, B.delta(X)) * Rational(-1),
            B.delta(B.h.bracket(X, Y)) * Rational(-1), t4};
}

inline CheckReport checkMcoc(const QuasiBialgebra& B) {
    CheckReport rep;
    rep.timed("mcoc", Mode::symbolic, [&]() -> Outcome {
        const std::size_t m = B.dimH();
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = x + 1; y < m; ++y) {
                auto T = mcocTerms(B, unitVec(m, x), unitVec(m, y));
                RatMatrix s = T[0] + T[1] + T[2] + T[3];
                if (!s.isZero())
                    return failure("mcoc nonzero at (" + B.h.name(x) + "," + B.h.name(y) +
                                   "): " + matrixString(s));
            }
        return std::nullopt;
    });
    return rep;
}

inline CheckReport checkBialgebraAction(const QuasiBialgebra& B) {
    CheckReport rep;
    const std::size_t m = B.dimH(), r = B.dimG();
    std::string w;
    for (std::size_t al = 0; al < r && w.empty(); ++al)
        for (std::size_t i = 0; i < m && w.empty(); ++i)
            for (std::size_t j = i + 1; j < m && w.empty(); ++j) {
                auto X = unitVec(m, i), Y = unitVec(m, j);
                Vec lhs = B.act(al, B.h.bracket(X, Y));
                Vec a = B.h.bracket(B.act(al, X), Y), b = B.h.bracket(X, B.act(al, Y));
                for (std::size_t k = 0; k < m; ++k) lhs[k] -= a[k] + b[k];
                if (!isZeroVec(lhs))
                    w = B.g.algebra().name(al) + " is not a derivation on (" + B.h.name(i) + "," +
                        B.h.name(j) + ")";
            }
    rep.record("action by derivations", w.empty(), w);
    w.clear();
    for (std::size_t al = 0; al < r && w.empty(); ++al)
        for (std::size_t be = al + 1; be < r && w.empty(); ++be) {
            RatMatrix lhs = B.action[al] * B.action[be] - B.action[be] * B.action[al];
            Vec br = B.g.algebra().bracket(unitVec(r, al), unitVec(r, be));
            RatMatrix rhs(m, m, 0);
            for (std::size_t k = 0; k < r; ++k)
                if (!isZero(br[k])) rhs += B.action[k] * br[k];
            if (!(lhs == rhs))
                w = "action is not a homomorphism on (" + B.g.algebra().name(al) + "," +
                    B.g.algebra().name(be) + ")";
        }
    rep.record("action homomorphism", w.empty(), w);
    return rep;
}

inline CheckReport checkEquivariance(const QuasiBialgebra& B) {
    CheckReport rep;
    const std::size_t m = B.dimH();
    std::string w;
    for (std::size_t al = 0; al < B.dimG() && w.empty(); ++al)
        for (std::size_t i = 0; i < m && w.empty(); ++i) {
            auto X = unitVec(m, i);
            RatMatrix A = B.action[al];
            RatMatrix lhs = A * B.delta(X) + B.delta(X) * A.transposed();
            if (!(lhs == B.delta(B.act(al, X))))
                w = "delta not equivariant for " + B.g.algebra().name(al) + " at " + B.h.name(i);
        }
    rep.record("cobracket g-equivariant", w.empty(), w);
    return rep;
}

inline CheckReport checkBialgebra(const QuasiBialgebra& B) {
    CheckReport rep;
    rep.merge(checkJacobi(B.h), "h ");
    rep.merge(checkJacobi(B.g.algebra()), "g ");
    rep.merge(checkBialgebraAction(B));
    rep.merge(checkEquivariance(B));
    rep.merge(checkCobracket(B));
    rep.merge(checkMcoc(B));
    return rep;
}

// Jacobi-type combination in d split into the four groups matching mcocTerms:
// <[A,X],[Y,B]> - <[B,X],[Y,A]> - <[X,Y],[B,A]> with the middle pairing split
// along d = h + g + h*.
inline std::array<Rational, 4> jacCocTerms(const ManinQuadruple& Q, const Vec& X, const Vec& Y,
                                           const Vec& A, const Vec& Bv) {
    const auto& L = Q.d.algebra;
    const std::size_t n = Q.dim();
    std::vector<Vec> all = Q.a;
    all.insert(all.end(), Q.b.begin(), Q.b.end());
    all.insert(all.end(), Q.c.begin(), Q.c.end());
    const std::size_t m = Q.a.size(), r = Q.b.size();
    auto part = [&](const Vec& v, int which) {
        Vec co = coordinatesIn(all, v, n);
        Vec out(n, 0);
        std::size_t lo = which == 0 ? 0 : which == 1 ? m : m + r;
        std::size_t hi = which == 0 ? m : which == 1 ? m + r : n;
        for (std::size_t k = lo; k < hi; ++k)
            for (std::size_t i = 0; i < n; ++i) out[i] += co[k] * all[k][i];
        return out;
    };
    Vec AX = L.bracket(A, X), YB = L.bracket(Y, Bv), BX = L.bracket(Bv, X), YA = L.bracket(Y, A);
    auto split = [&](int left, int right) -> Rational {
        return Q.d(part(AX, left), part(YB, right)) - Q.d(part(BX, left), part(YA, right));
    };
    return {split(2, 0), split(0, 2), -Q.d(L.bracket(X, Y), L.bracket(Bv, A)), split(1, 1)};
}

// The double h + g + h* with the canonical pairing. With validate = false the
// bialgebra axioms are not checked first, so the output may fail Jacobi.
inline ManinQuadruple doubleFromBialgebra(const QuasiBialgebra& B, bool validate = true) {
    if (validate) {
        auto rep = checkBialgebra(B);
        for (const auto& it : rep.items())
            if (it.status != Status::pass)
                throw InputError("bialgebra fails '" + it.name + "': " + it.witness);
    }
    const std::size_t m = B.dimH(), r = B.dimG(), n = 2 * m + r;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back(B.h.name(i));
    for (std::size_t i = 0; i < r; ++i) names.push_back(B.g.algebra().name(i));
    for (std::size_t i = 0; i < m; ++i) names.push_back(B.h.name(i) + "*");
    const std::size_t G0 = m, S0 = m + r;
    LieAlgebra L(names);
    auto unit = [&](std::size_t k) { return unitVec(n, k); };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec v(n, 0);
            for (const auto& [k, c] : B.h.structure(i, j)) v[k] = c;
            L.setBracket(i, j, v);
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            Vec v(n, 0);
            for (const auto& [k, c] : B.g.algebra().structure(i, j)) v[G0 + k] = c;
            L.setBracket(G0 + i, G0 + j, v);
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            Vec v(n, 0);
            for (std::size_t i = 0; i < m; ++i) v[S0 + i] = B.cobracket[i](b, a);
            L.setBracket(S0 + a, S0 + b, v);
        }
    for (std::size_t al = 0; al < r; ++al)
        for (std::size_t i = 0; i < m; ++i) {
            Vec v(n, 0), w(n, 0);
            for (std::size_t k = 0; k < m; ++k) {
                v[k] = B.action[al](k, i);
                w[S0 + k] = -B.action[al](i, k);
            }
            L.setBracket(G0 + al, i, v);
            L.setBracket(G0 + al, S0 + i, w);
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < m; ++a) {
            Vec v(n, 0);
            for (std::size_t k = 0; k < m; ++k) v[k] = B.cobracket[i](k, a);
            for (std::size_t al = 0; al < r; ++al)
                for (std::size_t be = 0; be < r; ++be)
                    v[G0 + al] += B.g.t(al, be) * B.action[be](a, i);
            for (std::size_t k = 0; k < m; ++k) {
                Rational c = 0;
                for (const auto& [q, cq] : B.h.structure(i, k))
                    if (q == a) c = cq;
                v[S0 + k] = -c;
            }
            L.setBracket(i, S0 + a, v);
        }
    RatMatrix gram(n, n, 0);
    for (std::size_t i = 0; i < m; ++i) gram(i, S0 + i) = gram(S0 + i, i) = 1;
    for (std::size_t al = 0; al < r; ++al)
        for (std::size_t be = 0; be < r; ++be) gram(G0 + al, G0 + be) = B.g.pairing.gram(al, be);

    ManinQuadruple Q;
    Q.d = InvariantPairing{L, gram};
    for (std::size_t i = 0; i < m; ++i) {
        Q.a.push_back(unit(i));
        Q.c.push_back(unit(S0 + i));
        Q.aNames.push_back(names[i]);
        Q.cNames.push_back(names[S0 + i]);
    }
    for (std::size_t al = 0; al < r; ++al) {
        Q.b.push_back(unit(G0 + al));
        Q.bNames.push_back(names[G0 + al]);
    }
    (void)unit;
    return Q;
}

// doubleFromBialgebra(deriveBialgebra(Q)) mapped back into d along a, b and the
// dual basis of a inside c must be a Lie algebra isomorphism preserving the pairing.
inline CheckReport checkRoundTrip(const ManinQuadruple& Q) {
    CheckReport rep;
    rep.timed("double round trip", Mode::symbolic, [&]() -> Outcome {
        const ManinQuadruple D = doubleFromBialgebra(deriveBialgebra(Q));
        std::vector<Vec> image = Q.a;
        image.insert(image.end(), Q.b.begin(), Q.b.end());
        auto dual = dualBasisInC(Q);
        image.insert(image.end(), dual.begin(), dual.end());
        const auto& L = Q.d.algebra;
        const auto& M = D.d.algebra;
        const std::size_t n = Q.dim();
        auto push = [&](const Vec& v) {
            Vec out(n, 0);
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!isZero(v[k]))
                    for (std::size_t i = 0; i < n; ++i) out[i] += v[k] * image[k][i];
            return out;
        };
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (y > x && push(M.bracket(M.unit(x), M.unit(y))) != L.bracket(image[x], image[y]))
                    return failure("[" + M.name(x) + "," + M.name(y) + "] is not carried to the bracket in d");
                if (D.d.gram(x, y) != Q.d(image[x], image[y]))
                    return failure("pairing of " + M.name(x) + "," + M.name(y) + " differs");
            }
        return std::nullopt;
    });
    return rep;
}

}  // namespace qp
