#pragma once

#include "qp/linalg.hpp"
#include "qp/report.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qp {

class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::vector<std::string> basis)
        : names_(std::move(basis)), table_(names_.size() * names_.size()) {}

    std::size_t dim() const { return names_.size(); }
    const std::vector<std::string>& basis() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::size_t index(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        throw InputError("unknown basis element '" + n + "'");
    }

    // Sets [e_i, e_j] = v and [e_j, e_i] = -v.
    void setBracket(std::size_t i, std::size_t j, const Vec& v) {
        if (v.size() != dim()) throw InputError("bracket vector has wrong dimension");
        if (i == j) {
            if (!isZeroVec(v)) throw InputError("[e,e] must vanish");
            return;
        }
        entry(i, j).clear();
        entry(j, i).clear();
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (isZero(v[k])) continue;
            entry(i, j).emplace_back(k, v[k]);
            entry(j, i).emplace_back(k, -v[k]);
        }
    }

    const std::vector<std::pair<std::size_t, Rational>>& structure(std::size_t i,
                                                                   std::size_t j) const {
        return table_[i * dim() + j];
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r(dim(), 0);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (isZero(x[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (isZero(y[j])) continue;
                Rational s = x[i] * y[j];
                for (const auto& [k, c] : structure(i, j)) r[k] += s * c;
            }
        }
        return r;
    }

    Vec unit(std::size_t i) const {
        Vec v(dim(), 0);
        v.at(i) = 1;
        return v;
    }

    // ad_x as a matrix acting on coordinate columns.
    RatMatrix ad(const Vec& x) const {
        RatMatrix m(dim(), dim(), 0);
        for (std::size_t j = 0; j < dim(); ++j) {
            Vec col = bracket(x, unit(j));
            for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    bool operator==(const LieAlgebra& o) const {
        return names_ == o.names_ && table_ == o.table_;
    }

private:
    std::vector<std::pair<std::size_t, Rational>>& entry(std::size_t i, std::size_t j) {
        return table_[i * dim() + j];
    }

    std::vector<std::string> names_;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> table_;
};

inline CheckReport checkJacobi(const LieAlgebra& L) {
    CheckReport rep;
    rep.timed("jacobi", Mode::symbolic, [&]() -> Outcome {
        std::string bad;
        std::size_t count = 0;
        for (std::size_t i = 0; i < L.dim(); ++i)
            for (std::size_t j = i + 1; j < L.dim(); ++j)
                for (std::size_t k = j + 1; k < L.dim(); ++k) {
                    auto x = L.unit(i), y = L.unit(j), z = L.unit(k);
                    Vec s = L.bracket(x, L.bracket(y, z));
                    Vec t = L.bracket(y, L.bracket(z, x));
                    Vec u = L.bracket(z, L.bracket(x, y));
                    for (std::size_t m = 0; m < s.size(); ++m) s[m] += t[m] + u[m];
                    if (isZeroVec(s)) continue;
                    if (count++ < 8)
                        bad += (bad.empty() ? "" : "; ") + std::string("triple (") + L.name(i) +
                               "," + L.name(j) + "," + L.name(k) + ") jacobiator " +
                               vecString(s);
                }
        if (count) return failure(std::to_string(count) + " violating triple(s): " + bad);
        return std::nullopt;
    });
    return rep;
}

struct InvariantPairing {
    LieAlgebra algebra;
    RatMatrix gram{0, 0, 0};

    Rational operator()(const Vec& x, const Vec& y) const {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (isZero(x[i])) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                if (!isZero(y[j])) s += x[i] * gram(i, j) * y[j];
        }
        return s;
    }

    // Covector <x, .> in the dual basis.
    Vec lower(const Vec& x) const { return matVec(gram.transposed(), x); }
};

inline CheckReport checkPairing(const InvariantPairing& P) {
    CheckReport rep;
    const auto& L = P.algebra;
    const std::size_t n = L.dim();
    bool sym = P.gram.rows() == n && P.gram.cols() == n;
    std::string w;
    for (std::size_t i = 0; sym && i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (P.gram(i, j) != P.gram(j, i)) {
                sym = false;
                w = "gram(" + L.name(i) + "," + L.name(j) + ") != gram(" + L.name(j) + "," +
                    L.name(i) + ")";
                break;
            }
    rep.record("pairing symmetric", sym, w);
    if (!sym) return rep;
    rep.record("pairing nondegenerate", !isZero(determinant(P.gram)), "determinant is 0");
    std::string bad;
    for (std::size_t i = 0; i < n && bad.empty(); ++i)
        for (std::size_t j = 0; j < n && bad.empty(); ++j)
            for (std::size_t k = 0; k < n && bad.empty(); ++k) {
                auto x = L.unit(i), y = L.unit(j), z = L.unit(k);
                if (P(L.bracket(x, y), z) + P(y, L.bracket(x, z)) != 0)
                    bad = "<[" + L.name(i) + "," + L.name(j) + "]," + L.name(k) + "> + <" +
                          L.name(j) + ",[" + L.name(i) + "," + L.name(k) + "]> != 0";
            }
    rep.record("pairing ad-invariant", bad.empty(), bad);
    return rep;
}

inline InvariantPairing makePairing(LieAlgebra L, RatMatrix gram) {
    InvariantPairing P{std::move(L), std::move(gram)};
    auto rep = checkPairing(P);
    for (const auto& item : rep.items())
        if (item.status != Status::pass) throw InputError(item.name + " fails: " + item.witness);
    return P;
}

struct CasimirT {
    InvariantPairing pairing;
    RatMatrix t{0, 0, 0};

    const LieAlgebra& algebra() const { return pairing.algebra; }
    std::size_t dim() const { return pairing.algebra.dim(); }
};

inline CasimirT makeCasimir(InvariantPairing P) {
    auto inv = tryInverse(P.gram);
    if (!inv) throw InputError("degenerate pairing");
    RatMatrix t = *inv;
    return CasimirT{std::move(P), std::move(t)};
}

inline Vec tSharp(const CasimirT& T, const Vec& alpha) {
    if (alpha.size() != T.dim()) throw InputError("covector has wrong dimension");
    return matVec(T.t, alpha);
}

// Element of the exterior power, stored on strictly increasing index tuples.
// Evaluation on covectors is the determinant of pairings.
struct ExtVector {
    std::size_t dim = 0;
    int degree = 0;
    std::map<std::vector<std::size_t>, Rational> coeffs;

    Rational evaluate(const std::vector<Vec>& covs) const {
        if (int(covs.size()) != degree) throw InputError("wrong number of covectors");
        Rational total = 0;
        for (const auto& [idx, c] : coeffs) {
            RatMatrix m(degree, degree, 0);
            for (int a = 0; a < degree; ++a)
                for (int b = 0; b < degree; ++b) m(a, b) = covs[a][idx[b]];
            total += c * determinant(m);
        }
        return total;
    }
    bool isZero() const { return coeffs.empty(); }
};

// Full (not necessarily symmetric) tensor in the tensor power of a vector space.
struct Tensor {
    std::size_t dim = 0;
    int rank = 0;
    std::map<std::vector<std::size_t>, Rational> coeffs;

    void add(const std::vector<std::size_t>& idx, const Rational& c) {
        if (qp::isZero(c)) return;
        auto& slot = coeffs[idx];
        slot += c;
        if (qp::isZero(slot)) coeffs.erase(idx);
    }
    Rational at(const std::vector<std::size_t>& idx) const {
        auto it = coeffs.find(idx);
        return it == coeffs.end() ? Rational(0) : it->second;
    }
    bool isZero() const { return coeffs.empty(); }
    bool operator==(const Tensor&) const = default;
};

inline Tensor expand(const ExtVector& e) {
    Tensor t{e.dim, e.degree, {}};
    for (const auto& [idx, c] : e.coeffs) {
        std::vector<std::size_t> perm(idx.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        do {
            std::vector<std::size_t> k(idx.size());
            int inv = 0;
            for (std::size_t a = 0; a < perm.size(); ++a) {
                k[a] = idx[perm[a]];
                for (std::size_t b = a + 1; b < perm.size(); ++b)
                    if (perm[a] > perm[b]) ++inv;
            }
            t.add(k, inv % 2 ? -c : c);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return t;
}

inline Tensor matrixTensor(const RatMatrix& m) {
    Tensor t{m.rows(), 2, {}};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.add({i, j}, m(i, j));
    return t;
}

// Derivation extension of ad_x to a tensor power.
inline Tensor adAction(const LieAlgebra& L, const Vec& x, const Tensor& P) {
    Tensor r{P.dim, P.rank, {}};
    RatMatrix adx = L.ad(x);
    for (const auto& [idx, c] : P.coeffs)
        for (std::size_t slot = 0; slot < idx.size(); ++slot)
            for (std::size_t i = 0; i < L.dim(); ++i) {
                if (isZero(adx(i, idx[slot]))) continue;
                auto k = idx;
                k[slot] = i;
                r.add(k, c * adx(i, idx[slot]));
            }
    return r;
}

// phi(alpha, beta, gamma) = 1/4 alpha([t#beta, t#gamma]).
inline Rational phiFormula(const CasimirT& T, const Vec& a, const Vec& b, const Vec& c) {
    Vec br = T.algebra().bracket(tSharp(T, b), tSharp(T, c));
    Rational s = 0;
    for (std::size_t i = 0; i < br.size(); ++i) s += a[i] * br[i];
    return s / 4;
}

inline ExtVector computePhi(const CasimirT& T) {
    const auto& L = T.algebra();
    const std::size_t n = L.dim();
    if (T.t.rows() != n) throw InputError("degenerate pairing");
    ExtVector phi{n, 3, {}};
    std::vector<Vec> sharp(n);
    for (std::size_t i = 0; i < n; ++i) sharp[i] = tSharp(T, L.unit(i));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
            Vec br = L.bracket(sharp[b], sharp[c]);
            for (std::size_t a = 0; a < b; ++a)
                if (!isZero(br[a])) phi.coeffs[{a, b, c}] = br[a] / 4;
        }
    return phi;
}

}  // namespace qp
