#pragma once

#include "qp/lie.hpp"
#include "qp/polyvector.hpp"

#include <string>
#include <vector>

namespace qp {

template <class C>
Alternating<C, VectorKind> zeroField(const RingPtr& ring, int degree) {
    return Alternating<C, VectorKind>(ring, degree);
}

// Image of an exterior element under a linear map to vector fields:
// sum over increasing tuples of coeff * f_i1 ^ ... ^ f_ik.
template <class C>
Alternating<C, VectorKind> lift(const ExtVector& e, const std::vector<Alternating<C, VectorKind>>& f,
                                const RingPtr& ring) {
    Alternating<C, VectorKind> r(ring, e.degree);
    for (const auto& [idx, c] : e.coeffs) {
        Alternating<C, VectorKind> w = f.at(idx[0]);
        for (std::size_t k = 1; k < idx.size(); ++k) w = wedge(w, f.at(idx[k]));
        r += w * c;
    }
    return r;
}

// Image of a full 2-tensor sum T^{ab} f_a (x) f_b, assumed antisymmetric,
// as the bivector sum_{a<b} T^{ab} f_a ^ f_b.
template <class C>
Alternating<C, VectorKind> liftAntisymmetric(const RatMatrix& T,
                                             const std::vector<Alternating<C, VectorKind>>& f,
                                             const RingPtr& ring) {
    Alternating<C, VectorKind> r(ring, 2);
    for (std::size_t a = 0; a < T.rows(); ++a)
        for (std::size_t b = a + 1; b < T.cols(); ++b)
            if (!isZero(T(a, b))) r += wedge(f[a], f[b]) * T(a, b);
    return r;
}

// Linear combination sum_k v_k f_k.
template <class C>
Alternating<C, VectorKind> combine(const Vec& v, const std::vector<Alternating<C, VectorKind>>& f,
                                   const RingPtr& ring, int degree = 1) {
    Alternating<C, VectorKind> r(ring, degree);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!isZero(v[k])) r += f.at(k) * v[k];
    return r;
}

// 1/2 [pi,pi] - rho(phi).
template <class C>
Alternating<C, VectorKind> quasiJacobiResidual(const Alternating<C, VectorKind>& pi,
                                               const std::vector<Alternating<C, VectorKind>>& rho,
                                               const CasimirT& T) {
    auto r = schouten(pi, pi) * Rational(1, 2);
    if (!rho.empty()) r -= lift(computePhi(T), rho, pi.ring());
    return r;
}

inline std::string componentWitness(const PolyVectorField& P) {
    if (P.isZero()) return {};
    const auto& [k, c] = *P.components().begin();
    std::string idx;
    for (auto i : k) idx += (idx.empty() ? "" : ",") + P.ring()->name(i);
    std::string s = c.str();
    if (s.size() > 200) s = s.substr(0, 200) + "...";
    return "component (" + idx + ") = " + s + " [" + std::to_string(P.components().size()) +
           " nonzero component(s)]";
}

// Sum t^{ij} rho_i (x) rho_j as a symmetric tensor of component polynomials.
template <class C>
std::vector<std::vector<C>> rhoOfT(const std::vector<Alternating<C, VectorKind>>& rho,
                                   const RatMatrix& t, const C& zero) {
    const std::size_t n = zero.ring()->size();
    std::vector<std::vector<C>> S(n, std::vector<C>(n, zero));
    for (std::size_t i = 0; i < rho.size(); ++i)
        for (std::size_t j = 0; j < rho.size(); ++j) {
            if (isZero(t(i, j))) continue;
            for (const auto& [ki, ci] : rho[i].components())
                for (const auto& [kj, cj] : rho[j].components())
                    S[ki[0]][kj[0]] += ci * cj * t(i, j);
        }
    return S;
}

// Witness if the fields fail to represent the Lie algebra: [f_i, f_j] = f_{[e_i,e_j]}.
template <class C>
std::string actionWitness(const LieAlgebra& L, const std::vector<Alternating<C, VectorKind>>& f,
                          const RingPtr& ring) {
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            auto d = schouten(f[i], f[j]) - combine(L.bracket(L.unit(i), L.unit(j)), f, ring);
            if (!d.isZero())
                return "[rho(" + L.name(i) + "), rho(" + L.name(j) + ")] != rho([" + L.name(i) +
                       "," + L.name(j) + "])";
        }
    return {};
}

}  // namespace qp
