#pragma once

#include "qp/fusion.hpp"

namespace qp {

// Action, bivector and t of a quasi-Poisson space with coefficients in C:
// exact polynomials, or Taylor jets at a sample point.
template <class C>
struct QPData {
    using Field = Alternating<C, VectorKind>;
    using Form = Alternating<C, FormKind>;
    RingPtr ring;
    CasimirT g;
    std::vector<Field> action;
    Field pi;
    C zero;
};

inline QPData<Poly> polyData(const QPSpace& M) {
    return {M.ring, M.g, M.action, M.pi, Poly(M.ring)};
}

inline QPData<Poly> polyData(const QPGroupStructure& S) {
    return {S.ring(), S.bialg.g, S.action, S.pi, Poly(S.ring())};
}

inline Alternating<Jet, VectorKind> toJets(const PolyVectorField& f, const std::vector<Rational>& pt,
                                           int order) {
    return f.mapCoefficients([&](const Poly& p) { return expandAt(p, pt, f.ring(), order); },
                             f.ring());
}

inline QPData<Jet> jetData(const QPSpace& M, const std::vector<Rational>& pt, int order) {
    QPData<Jet> D{M.ring, M.g, {}, toJets(M.pi, pt, order), Jet::constant(M.ring, 0, order)};
    for (const auto& f : M.action) D.action.push_back(toJets(f, pt, order));
    return D;
}

// 1/2 t^{ij} rho_i ^ [rho_j, P]
template <class C>
Alternating<C, VectorKind> tTerm(const QPData<C>& D, const Alternating<C, VectorKind>& P) {
    Alternating<C, VectorKind> r(D.ring, P.degree() + 1);
    for (std::size_t i = 0; i < D.action.size(); ++i) {
        Alternating<C, VectorKind> acc(D.ring, P.degree());
        for (std::size_t j = 0; j < D.action.size(); ++j)
            if (!isZero(D.g.t(i, j))) acc += schouten(D.action[j], P) * D.g.t(i, j);
        if (!acc.isZero()) r += wedge(D.action[i], acc);
    }
    return r * Rational(1, 2);
}

template <class C>
Alternating<C, VectorKind> dPlus(const QPData<C>& D, const Alternating<C, VectorKind>& P) {
    return schouten(D.pi, P) + tTerm(D, P);
}

template <class C>
Alternating<C, VectorKind> dMinus(const QPData<C>& D, const Alternating<C, VectorKind>& P) {
    return tTerm(D, P) - schouten(D.pi, P);
}

template <class C>
Alternating<C, VectorKind> twisted(const QPData<C>& D, int sign, const Alternating<C, VectorKind>& P) {
    return sign > 0 ? dPlus(D, P) : dMinus(D, P);
}

// 1/2 t^{ij} alpha(rho_i) rho_j
template <class C>
Alternating<C, VectorKind> tContraction(const QPData<C>& D, const Alternating<C, FormKind>& a) {
    Alternating<C, VectorKind> r(D.ring, 1);
    for (std::size_t i = 0; i < D.action.size(); ++i) {
        C ai = pair(a, D.action[i], D.zero);
        if (scalarIsZero(ai)) continue;
        for (std::size_t j = 0; j < D.action.size(); ++j)
            if (!isZero(D.g.t(i, j))) r += (ai * (D.g.t(i, j) / 2)) * D.action[j];
    }
    return r;
}

// a+(alpha) = sigma(alpha, .), a-(alpha) = sigma(., alpha), sigma = pi + 1/2 rho(t).
template <class C>
Alternating<C, VectorKind> anchor(const QPData<C>& D, int sign, const Alternating<C, FormKind>& a) {
    auto p = interior(a, D.pi);
    return (sign > 0 ? p : -p) + tContraction(D, a);
}

// <[alpha,beta], d/dx_p> = i_alpha d(beta_p) - i_beta d(alpha_p) - i_beta i_alpha d(d/dx_p)
template <class C>
Alternating<C, FormKind> algebroidBracket(const QPData<C>& D, int sign,
                                          const Alternating<C, FormKind>& a,
                                          const Alternating<C, FormKind>& b) {
    Alternating<C, FormKind> r(D.ring, 1);
    auto comp = [&](const Alternating<C, FormKind>& f, std::size_t p) {
        const C* c = f.find(Index{std::uint8_t(p)});
        return c ? *c : D.zero;
    };
    for (std::size_t p = 0; p < D.ring->size(); ++p) {
        using F = Alternating<C, VectorKind>;
        C v = pair(a, twisted(D, sign, F::scalar(comp(b, p))), D.zero) -
              pair(b, twisted(D, sign, F::scalar(comp(a, p))), D.zero) -
              evaluate(twisted(D, sign, F::basis(D.ring, p, oneLike(D.zero))), {a, b}, D.zero);
        r.add(Index{std::uint8_t(p)}, v);
    }
    return r;
}

// Coordinates on the dual group H*: the unipotent group of the opposite pattern.
struct DualChart {
    MatrixGroupModel model;
    std::vector<RatMatrix> h;  // matrices of the h-basis

    explicit DualChart(const ManinQuadruple& Q) : model(affineModel(dualQuadruple(Q), "y")) {
        for (const auto& v : Q.a) h.push_back(Q.matrices->toMatrix(v));
    }
};

// psi(X) = -a+(mu^* X^L) with X^L(V) = Tr(X y^{-1} V) on H*; mu lists the
// H* coordinates as functions on the space.
template <class C>
std::vector<Alternating<C, VectorKind>> momentAction(const QPData<C>& D, const DualChart& H,
                                                     const std::vector<C>& mu) {
    const auto& M = H.model;
    if (mu.size() != M.size()) throw InputError("moment map has the wrong number of components");
    Matrix<C> y = identityLike(M.n, D.zero);
    for (std::size_t k = 0; k < M.size(); ++k) y(M.coords[k].first, M.coords[k].second) = mu[k];
    Matrix<C> yinv = unipotentInverse(y);
    std::vector<Alternating<C, FormKind>> dmu;
    for (const auto& f : mu) dmu.push_back(differential(f));
    std::vector<Alternating<C, VectorKind>> psi;
    for (const auto& X : H.h) {
        Matrix<C> XY = mapMatrix(X, D.zero, [&](const Rational& c) { return oneLike(D.zero) * c; }) *
                       yinv;
        Alternating<C, FormKind> alpha(D.ring, 1);
        for (std::size_t k = 0; k < M.size(); ++k) {
            // Tr(X y^{-1} E_rc) = (X y^{-1})(c, r)
            const C& w = XY(M.coords[k].second, M.coords[k].first);
            if (scalarIsZero(w)) continue;
            for (const auto& [idx, c] : dmu[k].components()) alpha.add(idx, w * c);
        }
        psi.push_back(-anchor(D, +1, alpha));
    }
    return psi;
}

inline std::vector<PolyVectorField> momentAction(const QPSpace& M, const ManinQuadruple& Q,
                                                 const std::vector<Poly>& mu) {
    return momentAction(polyData(M), DualChart(Q), mu);
}

template <class C>
using Residuals = std::vector<std::pair<std::string, Alternating<C, VectorKind>>>;

template <class C>
struct MomentResiduals {
    Residuals<C> hAction, infAction, dMinusForm, agreement, equivariance;
};

// All defects of psi as an h-action compatible with the quasi-Poisson structure.
template <class C>
MomentResiduals<C> momentResiduals(const QPData<C>& D, const QuasiBialgebra& B,
                                   const std::vector<Alternating<C, VectorKind>>& psi) {
    using F = Alternating<C, VectorKind>;
    auto psiOf = [&](const Vec& v) { return combine(v, psi, D.ring); };
    MomentResiduals<C> R;
    const auto& h = B.h;
    for (std::size_t a = 0; a < psi.size(); ++a)
        for (std::size_t b = a + 1; b < psi.size(); ++b)
            R.hAction.push_back({"[psi(" + h.name(a) + "),psi(" + h.name(b) + ")]",
                                 schouten(psi[a], psi[b]) - psiOf(h.bracket(h.unit(a), h.unit(b)))});
    const auto& t = D.g.t;
    for (std::size_t x = 0; x < psi.size(); ++x) {
        F dlt = liftAntisymmetric(B.cobracket[x], psi, D.ring);
        F corr(D.ring, 2);
        for (std::size_t i = 0; i < D.action.size(); ++i)
            for (std::size_t j = 0; j < D.action.size(); ++j)
                if (!isZero(t(i, j))) {
                    F p = psiOf(B.act(i, h.unit(x)));
                    if (!p.isZero()) corr += wedge(p, D.action[j]) * (t(i, j) / 2);
                }
        F r1 = schouten(psi[x], D.pi) + dlt - corr;
        F r2 = dMinus(D, psi[x]) + dlt;
        R.infAction.push_back({"psi(" + h.name(x) + ")", r1});
        R.dMinusForm.push_back({"psi(" + h.name(x) + ")", r2});
        R.agreement.push_back({"psi(" + h.name(x) + ")", r1 - r2});
        for (std::size_t i = 0; i < D.action.size(); ++i)
            R.equivariance.push_back(
                {"[rho(" + D.g.algebra().name(i) + "),psi(" + h.name(x) + ")]",
                 schouten(D.action[i], psi[x]) - psiOf(B.act(i, h.unit(x)))});
    }
    return R;
}

inline std::vector<Obligation> obligations(const Residuals<Poly>& rs) {
    std::vector<Obligation> out;
    for (const auto& [label, f] : rs) {
        auto o = obligations(label, f);
        out.insert(out.end(), o.begin(), o.end());
    }
    return out;
}

inline CheckReport checkInfinitesimalQP(const QPSpace& M, const QuasiBialgebra& B,
                                        const std::vector<PolyVectorField>& psi,
                                        const SampleOptions& opt = {}) {
    if (psi.size() != B.dimH()) throw InputError("psi must have one field per h-basis element");
    CheckReport rep;
    const Mode mode = M.sampler ? Mode::sampled : Mode::symbolic;
    std::optional<MomentResiduals<Poly>> R;
    auto residuals = [&]() -> const MomentResiduals<Poly>& {
        if (!R) R = momentResiduals(polyData(M), B, psi);
        return *R;
    };
    auto item = [&](const std::string& name, auto member) {
        rep.timed(name, mode, [&]() -> Outcome {
            auto obs = obligations(residuals().*member);
            return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
        });
    };
    item("h-action", &MomentResiduals<Poly>::hAction);
    item("inf-action", &MomentResiduals<Poly>::infAction);
    item("d-minus form", &MomentResiduals<Poly>::dMinusForm);
    item("formulations agree", &MomentResiduals<Poly>::agreement);
    item("g-equivariance", &MomentResiduals<Poly>::equivariance);
    return rep;
}

// Value of a jet residual at its base point.
inline std::string jetWitness(const Residuals<Jet>& rs) {
    for (const auto& [label, f] : rs)
        for (const auto& [k, c] : f.components()) {
            Rational v = c.value();
            if (isZero(v)) continue;
            std::string idx;
            for (auto i : k) idx += (idx.empty() ? "" : ",") + f.ring()->name(i);
            return label + " component (" + idx + ") = " + toString(v);
        }
    return {};
}

// H* coordinates of the moment map as jets, or nothing where it is undefined.
using JetMomentMap = std::function<std::optional<std::vector<Jet>>(const std::vector<Jet>&)>;

// Moment-map checks at sample points, differentiating mu through jets.
inline CheckReport checkMomentAtSamples(const QPSpace& M, const ManinQuadruple& Q,
                                        const JetMomentMap& mu, const SampleOptions& opt,
                                        const std::string& prefix = {}) {
    if (!M.sampler) throw InputError("sampled moment check needs a sampler");
    const QuasiBialgebra B = deriveBialgebra(Q);
    const DualChart H(Q);
    struct PointResult {
        bool skipped = false;
        std::array<std::string, 5> witness;
    };
    std::vector<PointResult> results(opt.samples);
    auto start = std::chrono::steady_clock::now();
    firstFailure(opt.samples, opt.threads, [&](std::size_t s) -> std::string {
        auto pt = M.sampler(opt.seed, s);
        std::vector<Jet> coords;
        for (std::size_t i = 0; i < pt.size(); ++i)
            coords.push_back(Jet::coordinate(M.ring, i, pt[i], 2));
        auto m = mu(coords);
        if (!m) {
            results[s].skipped = true;
            return {};
        }
        auto D = jetData(M, pt, 2);
        auto R = momentResiduals(D, B, momentAction(D, H, *m));
        results[s].witness = {jetWitness(R.hAction), jetWitness(R.infAction),
                              jetWitness(R.dMinusForm), jetWitness(R.agreement),
                              jetWitness(R.equivariance)};
        return {};
    });
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::size_t skipped = 0;
    for (const auto& r : results) skipped += r.skipped;
    CheckReport rep;
    const char* names[5] = {"h-action", "inf-action", "d-minus form", "formulations agree",
                            "g-equivariance"};
    for (int c = 0; c < 5; ++c) {
        CheckItem item{prefix + names[c], Mode::sampled, Status::pass, {}, ms / 5};
        for (std::size_t s = 0; s < results.size(); ++s)
            if (!results[s].skipped && !results[s].witness[c].empty()) {
                item.status = Status::fail;
                item.witness = "sample " + std::to_string(s) + ": " + results[s].witness[c];
                break;
            }
        if (item.status == Status::pass && skipped == results.size()) {
            item.status = Status::inconclusive;
            item.witness = "moment map undefined at every sample point";
        } else if (skipped && item.status == Status::pass) {
            item.witness = std::to_string(skipped) + " sample point(s) skipped: moment map undefined";
        }
        rep.add(std::move(item));
    }
    return rep;
}

// The group H as a quasi-Poisson space over g.
inline QPSpace groupSpace(const QPGroupStructure& S) {
    return QPSpace(S.ring(), {S.bialg.g}, S.action, S.pi);
}

// The action of h on H by left multiplication, psi(X) = d/dt e^{-tX} h = -X^R.
inline std::vector<PolyVectorField> leftMultiplicationAction(const QPGroupStructure& S) {
    std::vector<PolyVectorField> psi;
    for (const auto& X : S.hMats) psi.push_back(-rightInvariantField(S.model, X));
    return psi;
}

// The left-invariant 1-form on H extending A in h* = c: alpha(x V) = Tr(A V).
inline PolyForm leftInvariantForm(const QPGroupStructure& S, const RatMatrix& A) {
    const auto& M = S.model;
    PolyMatrix Ax = toPoly(A, M.ring) * unipotentInverse(M.generic());
    PolyForm f(M.ring, 1);
    for (std::size_t p = 0; p < M.size(); ++p)
        f.add(Index{std::uint8_t(p)}, Ax(M.coords[p].second, M.coords[p].first));
    return f;
}

inline std::string formWitness(const PolyForm& f) {
    if (f.isZero()) return {};
    const auto& [k, c] = *f.components().begin();
    return "component d" + f.ring()->name(k[0]) + " = " + c.str();
}

// d+^2 = d-^2 = 0 on coordinate functions and coordinate vector fields.
inline CheckReport checkDifferentials(const QPSpace& M) {
    CheckReport rep;
    auto D = polyData(M);
    for (int sign : {+1, -1}) {
        rep.timed(sign > 0 ? "d+ squared" : "d- squared", Mode::symbolic, [&]() -> Outcome {
            for (std::size_t p = 0; p < M.ring->size(); ++p) {
                auto f = PolyVectorField::scalar(Poly::variable(M.ring, p));
                auto v = PolyVectorField::basis(M.ring, p, Poly(M.ring, 1));
                for (const auto* P : {&f, &v}) {
                    auto r = twisted(D, sign, twisted(D, sign, *P));
                    if (!r.isZero())
                        return failure("on " + std::string(P == &f ? "" : "d/d") +
                                       M.ring->name(p) + ": " + componentWitness(r));
                }
            }
            return {};
        });
    }
    return rep;
}

// Leibniz rule and anchor compatibility on exact coordinate 1-forms.
inline CheckReport checkAlgebroid(const QPSpace& M) {
    CheckReport rep;
    auto D = polyData(M);
    const std::size_t n = M.ring->size();
    std::vector<PolyForm> dx;
    for (std::size_t p = 0; p < n; ++p) dx.push_back(differential(Poly::variable(M.ring, p)));
    for (int sign : {+1, -1}) {
        const std::string s = sign > 0 ? "+" : "-";
        rep.timed("bracket" + s + " antisymmetric", Mode::symbolic, [&]() -> Outcome {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p; q < n; ++q) {
                    auto r = algebroidBracket(D, sign, dx[p], dx[q]) +
                             algebroidBracket(D, sign, dx[q], dx[p]);
                    if (!r.isZero())
                        return failure("on d" + M.ring->name(p) + ", d" + M.ring->name(q) + ": " +
                                       formWitness(r));
                }
            return {};
        });
        rep.timed("bracket" + s + " Leibniz", Mode::symbolic, [&]() -> Outcome {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    Poly f = Poly::variable(M.ring, 0);
                    auto lhs = algebroidBracket(D, sign, dx[p], f * dx[q]);
                    auto rhs = f * algebroidBracket(D, sign, dx[p], dx[q]) +
                               apply(anchor(D, sign, dx[p]), f) * dx[q];
                    auto r = lhs - rhs;
                    if (!r.isZero())
                        return failure("on d" + M.ring->name(p) + ", " + f.str() + " d" +
                                       M.ring->name(q) + ": " + formWitness(r));
                }
            return {};
        });
        rep.timed("anchor" + s + " compatible", Mode::symbolic, [&]() -> Outcome {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) {
                    auto r = anchor(D, sign, algebroidBracket(D, sign, dx[p], dx[q])) -
                             schouten(anchor(D, sign, dx[p]), anchor(D, sign, dx[q]));
                    if (!r.isZero())
                        return failure("on d" + M.ring->name(p) + ", d" + M.ring->name(q) + ": " +
                                       componentWitness(r));
                }
            return {};
        });
    }
    return rep;
}

// d+ X^L = -delta(X)^L, and [alpha^L, beta^L]+ = -[alpha, beta]^L on h*.
inline CheckReport checkLeftInvariantCalculus(const QPGroupStructure& S) {
    CheckReport rep;
    auto D = polyData(S);
    rep.timed("d+ of left-invariant fields", Mode::symbolic, [&]() -> Outcome {
        for (std::size_t i = 0; i < S.left.size(); ++i) {
            auto r = dPlus(D, S.left[i]) + liftAntisymmetric(S.bialg.cobracket[i], S.left, S.ring());
            if (!r.isZero()) return failure("for " + S.quad.aNames[i] + ": " + componentWitness(r));
        }
        return {};
    });
    rep.timed("dual bracket of left-invariant forms", Mode::symbolic, [&]() -> Outcome {
        const std::size_t m = S.hDualMats.size();
        std::vector<PolyForm> forms;
        for (const auto& A : S.hDualMats) forms.push_back(leftInvariantForm(S, A));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                Vec br = dualBracket(S.bialg, unitVec(m, a), unitVec(m, b));
                RatMatrix A(S.model.n, S.model.n, 0);
                for (std::size_t i = 0; i < m; ++i)
                    if (!isZero(br[i])) A += S.hDualMats[i] * br[i];
                auto r = algebroidBracket(D, +1, forms[a], forms[b]) + leftInvariantForm(S, A);
                if (!r.isZero())
                    return failure("for E^" + std::to_string(a + 1) + ", E^" +
                                   std::to_string(b + 1) + ": " + formWitness(r));
            }
        return {};
    });
    return rep;
}

}  // namespace qp
