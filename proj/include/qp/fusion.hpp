#pragma once

#include "qp/qpgroup.hpp"

#include <functional>
#include <thread>

namespace qp {

// Produces the coordinates of sample point `index` for a given seed.
using Sampler = std::function<std::vector<Rational>(std::uint64_t seed, std::uint64_t index)>;

struct SampleOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 7;
    unsigned threads = 1;
};

// Run f(i) for i in [0, count), returning the smallest index with a
// non-empty result so the outcome does not depend on scheduling.
inline std::optional<std::pair<std::size_t, std::string>> firstFailure(
    std::size_t count, unsigned threads, const std::function<std::string(std::size_t)>& f) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            auto w = f(i);
            if (!w.empty()) return std::make_pair(i, w);
        }
        return std::nullopt;
    }
    std::vector<std::string> out(count);
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(threads, count);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += n) out[i] = f(i);
        });
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < count; ++i)
        if (!out[i].empty()) return std::make_pair(i, out[i]);
    return std::nullopt;
}

inline std::string pointString(const RingPtr& ring, const std::vector<Rational>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? ", " : "") + ring->name(i) + "=" + toString(p[i]);
    return s;
}

// Named polynomials that must vanish: identically, or at sample points.
struct Obligation {
    std::string label;
    Poly value;
};

inline Outcome mustVanish(const std::vector<Obligation>& obs, const Sampler& sampler,
                          const SampleOptions& opt) {
    if (!sampler) {
        for (const auto& o : obs)
            if (!o.value.isZero()) {
                std::string s = o.value.str();
                if (s.size() > 200) s = s.substr(0, 200) + "...";
                return failure(o.label + " = " + s);
            }
        return {};
    }
    auto bad = firstFailure(opt.samples, opt.threads, [&](std::size_t i) -> std::string {
        auto pt = sampler(opt.seed, i);
        for (const auto& o : obs) {
            Rational v = o.value.evaluate(pt);
            if (!isZero(v)) return o.label + " = " + toString(v);
        }
        return {};
    });
    if (!bad) return {};
    auto pt = sampler(opt.seed, bad->first);
    return failure("sample " + std::to_string(bad->first) + " (" +
                   pointString(obs.front().value.ring(), pt) + "): " + bad->second);
}

inline std::vector<Obligation> obligations(const std::string& what, const PolyVectorField& P) {
    std::vector<Obligation> v;
    for (const auto& [k, c] : P.components()) {
        std::string idx;
        for (auto i : k) idx += (idx.empty() ? "" : ",") + P.ring()->name(i);
        v.push_back({what + " component (" + idx + ")", c});
    }
    return v;
}

inline CasimirT directSum(const std::vector<CasimirT>& parts) {
    if (parts.size() == 1) return parts.front();
    std::vector<std::string> names;
    std::size_t total = 0;
    for (std::size_t s = 0; s < parts.size(); ++s) {
        for (const auto& n : parts[s].algebra().basis())
            names.push_back(n + "@" + std::to_string(s + 1));
        total += parts[s].dim();
    }
    LieAlgebra L(names);
    RatMatrix gram(total, total, 0);
    std::size_t off = 0;
    for (const auto& P : parts) {
        const auto& A = P.algebra();
        for (std::size_t i = 0; i < A.dim(); ++i) {
            for (std::size_t j = i + 1; j < A.dim(); ++j) {
                Vec v(total, 0);
                for (const auto& [k, c] : A.structure(i, j)) v[off + k] = c;
                L.setBracket(off + i, off + j, v);
            }
            for (std::size_t j = 0; j < A.dim(); ++j) gram(off + i, off + j) = P.pairing.gram(i, j);
        }
        off += A.dim();
    }
    return makeCasimir(makePairing(std::move(L), std::move(gram)));
}

inline bool sameAlgebra(const CasimirT& a, const CasimirT& b) {
    return a.algebra() == b.algebra() && a.t == b.t;
}

// An algebraic quasi-Poisson space. The algebra is a (possibly one-term)
// direct sum of marked summands; a sampler marks a non-affine constraint.
struct QPSpace {
    RingPtr ring;
    std::vector<CasimirT> summands;
    CasimirT g;
    std::vector<PolyVectorField> action;
    PolyVectorField pi;
    Sampler sampler;

    QPSpace(RingPtr r, std::vector<CasimirT> parts, std::vector<PolyVectorField> act,
            PolyVectorField bivector, Sampler s = {})
        : ring(std::move(r)),
          summands(std::move(parts)),
          g(directSum(summands)),
          action(std::move(act)),
          pi(std::move(bivector)),
          sampler(std::move(s)) {
        if (action.size() != g.dim()) throw InputError("action does not cover the algebra basis");
        for (const auto& f : action) {
            requireSameRing(f.ring(), ring);
            if (f.degree() != 1 && !f.isZero()) throw InputError("action field of wrong degree");
        }
        requireSameRing(pi.ring(), ring);
        if (pi.degree() != 2) throw InputError("bivector of wrong degree");
    }

    std::size_t offset(std::size_t summand) const {
        std::size_t o = 0;
        for (std::size_t s = 0; s < summand; ++s) o += summands[s].dim();
        return o;
    }
};

// (H, rhoHat, 0): the group H with the extended action of all of d.
inline QPSpace hatSpace(const QPGroupStructure& S) {
    RhoHat hat(S.model, S.quad);
    std::vector<PolyVectorField> act;
    for (const auto& v : S.quad.matrices->basis) act.push_back(hat(v));
    return QPSpace(S.ring(), {makeCasimir(S.quad.d)}, std::move(act), PolyVectorField(S.ring(), 2));
}

inline std::vector<std::string> suffixed(const RingPtr& r, const std::string& suffix) {
    std::vector<std::string> v;
    for (const auto& n : r->names()) v.push_back(n + suffix);
    return v;
}

// Transport of fields from the factors to the product ring.
struct ProductEmbedding {
    RingPtr ring;
    std::vector<std::size_t> first, second;

    ProductEmbedding(const RingPtr& a, const RingPtr& b) {
        auto names = suffixed(a, "@1");
        auto nb = suffixed(b, "@2");
        names.insert(names.end(), nb.begin(), nb.end());
        if (names.size() > kMaxVars) throw InputError("too many coordinates in a product");
        ring = makeRing(names);
        for (std::size_t i = 0; i < a->size(); ++i) first.push_back(i);
        for (std::size_t i = 0; i < b->size(); ++i) second.push_back(a->size() + i);
    }

    PolyVectorField lift(const PolyVectorField& f, const std::vector<std::size_t>& map) const {
        PolyVectorField r(ring, f.degree());
        for (const auto& [k, c] : f.components()) {
            Index idx;
            for (auto i : k) idx.push_back(std::uint8_t(map[i]));
            r.add(idx, c.remap(ring, map));
        }
        return r;
    }
    PolyVectorField lift1(const PolyVectorField& f) const { return lift(f, first); }
    PolyVectorField lift2(const PolyVectorField& f) const { return lift(f, second); }
};

inline Sampler productSampler(const Sampler& a, const Sampler& b) {
    if (!a && !b) return {};
    return [a, b](std::uint64_t seed, std::uint64_t index) {
        // affine factors have no constraint; sample them at small integers too
        std::vector<Rational> p = a(seed, 2 * index), q = b(seed, 2 * index + 1);
        p.insert(p.end(), q.begin(), q.end());
        return p;
    };
}

// Sampler for an unconstrained affine space: integer points in [-5, 5].
inline Sampler affineSampler(std::size_t dim) {
    return [dim](std::uint64_t seed, std::uint64_t index) {
        auto eng = sampleEngine(seed, index);
        std::vector<Rational> p;
        for (std::size_t i = 0; i < dim; ++i) p.push_back(int(eng() % 11) - 5);
        return p;
    };
}

inline Sampler orAffine(const Sampler& s, std::size_t dim) { return s ? s : affineSampler(dim); }

// Product with separate actions of the summands of both factors.
inline QPSpace product(const QPSpace& A, const QPSpace& B) {
    ProductEmbedding E(A.ring, B.ring);
    std::vector<CasimirT> parts = A.summands;
    parts.insert(parts.end(), B.summands.begin(), B.summands.end());
    std::vector<PolyVectorField> act;
    for (const auto& f : A.action) act.push_back(E.lift1(f));
    for (const auto& f : B.action) act.push_back(E.lift2(f));
    Sampler s = (A.sampler || B.sampler)
                    ? productSampler(orAffine(A.sampler, A.ring->size()),
                                     orAffine(B.sampler, B.ring->size()))
                    : Sampler{};
    return QPSpace(E.ring, std::move(parts), std::move(act), E.lift1(A.pi) + E.lift2(B.pi), s);
}

// -1/2 t^{ij} f_i ^ h_j
inline PolyVectorField fusionTerm(const RatMatrix& t, const std::vector<PolyVectorField>& f,
                                  const std::vector<PolyVectorField>& h, const RingPtr& ring) {
    PolyVectorField r(ring, 2);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            if (!isZero(t(i, j))) r += wedge(f[i], h[j]) * (-t(i, j) / 2);
    return r;
}

inline QPSpace fuse(const QPSpace& A, const QPSpace& B) {
    if (!sameAlgebra(A.g, B.g)) throw InputError("fusion needs the same algebra and t");
    ProductEmbedding E(A.ring, B.ring);
    std::vector<PolyVectorField> r1, r2, act;
    for (std::size_t i = 0; i < A.action.size(); ++i) {
        r1.push_back(E.lift1(A.action[i]));
        r2.push_back(E.lift2(B.action[i]));
        act.push_back(r1.back() + r2.back());
    }
    PolyVectorField pi = E.lift1(A.pi) + E.lift2(B.pi) + fusionTerm(A.g.t, r1, r2, E.ring);
    Sampler s = (A.sampler || B.sampler)
                    ? productSampler(orAffine(A.sampler, A.ring->size()),
                                     orAffine(B.sampler, B.ring->size()))
                    : Sampler{};
    return QPSpace(E.ring, A.summands, std::move(act), std::move(pi), s);
}

// Fuse summands i and j (equal algebras) into the diagonal copy at position i.
inline QPSpace internalFuse(const QPSpace& M, std::size_t i, std::size_t j) {
    if (M.summands.size() < 2) throw InputError("algebra is not a marked direct sum");
    if (i == j || i >= M.summands.size() || j >= M.summands.size())
        throw InputError("invalid summand indices for internal fusion");
    if (!sameAlgebra(M.summands[i], M.summands[j]))
        throw InputError("fused summands carry different algebras");
    const std::size_t oi = M.offset(i), oj = M.offset(j), dim = M.summands[i].dim();
    std::vector<PolyVectorField> ri(M.action.begin() + oi, M.action.begin() + oi + dim);
    std::vector<PolyVectorField> rj(M.action.begin() + oj, M.action.begin() + oj + dim);
    std::vector<CasimirT> parts;
    std::vector<PolyVectorField> act;
    for (std::size_t s = 0; s < M.summands.size(); ++s) {
        if (s == j) continue;
        parts.push_back(M.summands[s]);
        const std::size_t o = M.offset(s);
        for (std::size_t a = 0; a < M.summands[s].dim(); ++a)
            act.push_back(s == i ? ri[a] + rj[a] : M.action[o + a]);
    }
    PolyVectorField pi = M.pi + fusionTerm(M.summands[i].t, ri, rj, M.ring);
    return QPSpace(M.ring, std::move(parts), std::move(act), std::move(pi), M.sampler);
}

inline CheckReport checkQPSpace(const QPSpace& M, const SampleOptions& opt = {}) {
    CheckReport rep;
    const Mode mode = M.sampler ? Mode::sampled : Mode::symbolic;
    rep.timed("action", mode, [&]() -> Outcome {
        std::vector<Obligation> obs;
        const auto& L = M.g.algebra();
        for (std::size_t i = 0; i < M.action.size(); ++i)
            for (std::size_t j = i + 1; j < M.action.size(); ++j) {
                auto d = schouten(M.action[i], M.action[j]) -
                         combine(L.bracket(L.unit(i), L.unit(j)), M.action, M.ring);
                auto o = obligations("[rho(" + L.name(i) + "),rho(" + L.name(j) + ")] defect", d);
                obs.insert(obs.end(), o.begin(), o.end());
            }
        return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
    });
    rep.timed("invariance", mode, [&]() -> Outcome {
        std::vector<Obligation> obs;
        for (std::size_t i = 0; i < M.action.size(); ++i) {
            auto o = obligations("[rho(" + M.g.algebra().name(i) + "),pi]",
                                 schouten(M.action[i], M.pi));
            obs.insert(obs.end(), o.begin(), o.end());
        }
        return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
    });
    rep.timed("quasi-Jacobi", mode, [&]() -> Outcome {
        auto obs = obligations("1/2[pi,pi]-rho(phi)", quasiJacobiResidual(M.pi, M.action, M.g));
        return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
    });
    return rep;
}

// rho(t) = t^{ij} rho(e_i) (x) rho(e_j) must vanish.
inline CheckReport checkCoisotropicAction(const QPSpace& M, const SampleOptions& opt = {}) {
    if (!M.pi.isZero()) throw InputError("coisotropy check needs a space with zero bivector");
    CheckReport rep;
    rep.timed("coisotropic stabilizers", M.sampler ? Mode::sampled : Mode::symbolic,
              [&]() -> Outcome {
                  auto T = rhoOfT(M.action, M.g.t, Poly(M.ring));
                  std::vector<Obligation> obs;
                  for (std::size_t p = 0; p < T.size(); ++p)
                      for (std::size_t q = p; q < T.size(); ++q)
                          if (!T[p][q].isZero())
                              obs.push_back({"rho(t) component (" + M.ring->name(p) + "," +
                                                 M.ring->name(q) + ")",
                                             T[p][q]});
                  return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
              });
    return rep;
}

// The fused bivector on M x M restricted to the diagonal must vanish.
inline CheckReport diagonalIsQP(const QPSpace& M, const SampleOptions& opt = {}) {
    if (!M.pi.isZero()) throw InputError("diagonal check needs a space with zero bivector");
    CheckReport rep;
    rep.timed("diagonal is quasi-Poisson", M.sampler ? Mode::sampled : Mode::symbolic,
              [&]() -> Outcome {
                  auto F = fuse(M, M);
                  const std::size_t m = M.ring->size();
                  std::vector<Poly> diag;
                  for (int copy = 0; copy < 2; ++copy)
                      for (std::size_t i = 0; i < m; ++i) diag.push_back(Poly::variable(M.ring, i));
                  std::vector<Obligation> obs;
                  for (const auto& [k, c] : F.pi.components()) {
                      Poly v = c.substitute(diag, M.ring);
                      if (!v.isZero())
                          obs.push_back({"{" + F.ring->name(k[0]) + "," + F.ring->name(k[1]) +
                                             "} on the diagonal",
                                         v});
                  }
                  return obs.empty() ? Outcome{} : mustVanish(obs, M.sampler, opt);
              });
    return rep;
}

// Equality of polyvector fields over rings with the same number of variables,
// matching variables by position.
inline bool positionallyEqual(const PolyVectorField& a, const PolyVectorField& b) {
    if (a.ring()->size() != b.ring()->size()) return false;
    std::vector<std::size_t> id(b.ring()->size());
    std::iota(id.begin(), id.end(), 0);
    if (a.components().size() != b.components().size()) return false;
    for (const auto& [k, c] : b.components()) {
        const Poly* p = a.find(k);
        if (!p || !(*p == c.remap(a.ring(), id))) return false;
    }
    return true;
}

// Exchange the two factors of M x M: coordinate k of the first copy goes to the second.
inline PolyVectorField swapFactors(const PolyVectorField& P, std::size_t half) {
    if (P.ring()->size() != 2 * half) throw InputError("not a product of two equal factors");
    std::vector<std::size_t> map(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
        map[k] = half + k;
        map[half + k] = k;
    }
    PolyVectorField r(P.ring(), P.degree());
    for (const auto& [k, c] : P.components()) {
        std::vector<std::size_t> idx;
        for (auto v : k) idx.push_back(map[v]);
        r.addUnsorted(idx, c.remap(P.ring(), map));
    }
    return r;
}

// Fusion is associative on the nose and, for a nonabelian action, not commutative:
// the swap of M x M does not carry M (*) M to itself.
inline CheckReport checkFusionAlgebra(const QPSpace& M) {
    CheckReport rep;
    rep.timed("fusion associative", Mode::symbolic, [&]() -> Outcome {
        auto left = fuse(fuse(M, M), M), right = fuse(M, fuse(M, M));
        if (positionallyEqual(left.pi, right.pi)) return std::nullopt;
        return failure("(M*M)*M and M*(M*M) differ");
    });
    rep.timed("fusion not commutative", Mode::symbolic, [&]() -> Outcome {
        auto F = fuse(M, M);
        auto diff = F.pi - swapFactors(F.pi, M.ring->size());
        if (diff.isZero()) return failure("the swap preserves the fused bivector");
        return std::make_pair(Status::pass, "pi - swap(pi) has " + componentWitness(diff));
    });
    return rep;
}

}  // namespace qp
