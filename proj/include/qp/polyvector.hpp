#pragma once

#include "qp/jet.hpp"
#include "qp/poly.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace qp {

struct VectorKind {};
struct FormKind {};

using Index = std::vector<std::uint8_t>;

// Alternating multilinear object on the coordinate (co)frame, stored on
// strictly increasing index tuples. With Kind = VectorKind the basis element
// at (i1<...<ik) is d/dx_i1 ^ ... ^ d/dx_ik, with FormKind it is dx_i1 ^ ... ^ dx_ik.
// The wedge is x^y = x(x)y - y(x)x, so evaluation on covectors is a determinant.
template <class C, class Kind>
class Alternating {
public:
    using Coeff = C;
    using Components = std::map<Index, C>;

    Alternating(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {
        if (degree < 0) throw InputError("negative degree");
    }

    static Alternating scalar(const C& f) {
        Alternating a(f.ring(), 0);
        a.add(Index{}, f);
        return a;
    }

    // Degree-one object from a list of coefficients, one per coordinate.
    static Alternating fromComponents(const RingPtr& ring, const std::vector<C>& comps) {
        if (comps.size() != ring->size()) throw InputError("component list has wrong length");
        Alternating a(ring, 1);
        for (std::size_t i = 0; i < comps.size(); ++i)
            a.add(Index{static_cast<std::uint8_t>(i)}, comps[i]);
        return a;
    }

    static Alternating basis(const RingPtr& ring, std::size_t i, const C& one) {
        Alternating a(ring, 1);
        a.add(Index{static_cast<std::uint8_t>(i)}, one);
        return a;
    }

    const RingPtr& ring() const { return ring_; }
    int degree() const { return degree_; }
    const Components& components() const { return comps_; }
    bool isZero() const { return comps_.empty(); }

    const C* find(const Index& idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? nullptr : &it->second;
    }

    // idx must be strictly increasing with size == degree.
    void add(const Index& idx, const C& c) {
        if (scalarIsZero(c)) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(idx, c);
            return;
        }
        it->second += c;
        if (scalarIsZero(it->second)) comps_.erase(it);
    }

    // Arbitrary index order: sorts with sign, drops repeated indices.
    void addUnsorted(std::vector<std::size_t> idx, C c) {
        bool odd = false;
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b + 1 < idx.size() - a; ++b)
                if (idx[b] > idx[b + 1]) {
                    std::swap(idx[b], idx[b + 1]);
                    odd = !odd;
                }
        for (std::size_t a = 1; a < idx.size(); ++a)
            if (idx[a] == idx[a - 1]) return;
        Index key(idx.begin(), idx.end());
        add(key, odd ? -c : c);
    }

    Alternating& operator+=(const Alternating& o) {
        check(o);
        for (const auto& [k, c] : o.comps_) add(k, c);
        return *this;
    }
    Alternating& operator-=(const Alternating& o) {
        check(o);
        for (const auto& [k, c] : o.comps_) add(k, -c);
        return *this;
    }
    Alternating& operator*=(const Rational& s) {
        if (qp::isZero(s)) comps_.clear();
        for (auto& [k, c] : comps_) c *= s;
        return *this;
    }
    friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
    friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
    friend Alternating operator-(Alternating a) { return a *= Rational(-1); }
    friend Alternating operator*(Alternating a, const Rational& s) { return a *= s; }
    friend Alternating operator*(const Rational& s, Alternating a) { return a *= s; }

    // Multiply every component by a function.
    friend Alternating operator*(const C& f, const Alternating& a) {
        Alternating r(a.ring_, a.degree_);
        for (const auto& [k, c] : a.comps_) r.add(k, f * c);
        return r;
    }

    bool operator==(const Alternating& o) const {
        return ring_ == o.ring_ && degree_ == o.degree_ && comps_ == o.comps_;
    }

    // Componentwise map, possibly into another coefficient type.
    template <class F>
    auto mapCoefficients(F&& f, RingPtr ring) const {
        using D = decltype(f(std::declval<const C&>()));
        Alternating<D, Kind> r(std::move(ring), degree_);
        for (const auto& [k, c] : comps_) r.add(k, f(c));
        return r;
    }

    Alternating partial(std::size_t var) const {
        Alternating r(ring_, degree_);
        for (const auto& [k, c] : comps_) r.add(k, c.derivative(var));
        return r;
    }

private:
    void check(const Alternating& o) const {
        requireSameRing(ring_, o.ring_);
        if (degree_ != o.degree_ && !(comps_.empty() && o.comps_.empty()))
            throw InputError("degree mismatch in polyvector sum");
    }

    RingPtr ring_;
    int degree_;
    Components comps_;
};

using PolyVectorField = Alternating<Poly, VectorKind>;
using PolyForm = Alternating<Poly, FormKind>;
using JetVectorField = Alternating<Jet, VectorKind>;
using JetForm = Alternating<Jet, FormKind>;

template <class C, class K>
Alternating<C, K> wedge(const Alternating<C, K>& p, const Alternating<C, K>& q) {
    requireSameRing(p.ring(), q.ring());
    Alternating<C, K> r(p.ring(), p.degree() + q.degree());
    for (const auto& [i, a] : p.components()) {
        for (const auto& [j, b] : q.components()) {
            // merge two increasing tuples, counting inversions for the sign
            Index k;
            k.reserve(i.size() + j.size());
            std::size_t x = 0, y = 0, inversions = 0;
            bool clash = false;
            while (x < i.size() && y < j.size()) {
                if (i[x] == j[y]) {
                    clash = true;
                    break;
                }
                if (i[x] < j[y]) {
                    k.push_back(i[x++]);
                } else {
                    inversions += i.size() - x;
                    k.push_back(j[y++]);
                }
            }
            if (clash) continue;
            while (x < i.size()) k.push_back(i[x++]);
            while (y < j.size()) k.push_back(j[y++]);
            C c = a * b;
            r.add(k, inversions % 2 ? -c : c);
        }
    }
    return r;
}

// Left derivative with respect to the odd generator of coordinate `var`:
// removes `var` from each tuple with sign (-1)^(position).
template <class C, class K>
Alternating<C, K> oddDerivative(const Alternating<C, K>& p, std::size_t var) {
    if (p.degree() == 0) return Alternating<C, K>(p.ring(), 0);
    Alternating<C, K> r(p.ring(), p.degree() - 1);
    for (const auto& [k, c] : p.components()) {
        auto pos = std::find(k.begin(), k.end(), var);
        if (pos == k.end()) continue;
        Index rest(k.begin(), pos);
        rest.insert(rest.end(), pos + 1, k.end());
        r.add(rest, (pos - k.begin()) % 2 ? -c : c);
    }
    return r;
}

// Schouten-Nijenhuis bracket. With xi_i = d/dx_i odd,
//   [P,Q] = sum_i (-1)^(p-1) dP/dxi_i * dQ/dx_i - (-1)^(p(q-1)) dQ/dxi_i * dP/dx_i,
// so [X,Y] is the Lie bracket, [X,f] = X(f) and graded Jacobi holds.
template <class C>
Alternating<C, VectorKind> schouten(const Alternating<C, VectorKind>& P,
                                    const Alternating<C, VectorKind>& Q) {
    requireSameRing(P.ring(), Q.ring());
    const int p = P.degree(), q = Q.degree();
    const int deg = p + q - 1;
    Alternating<C, VectorKind> r(P.ring(), deg < 0 ? 0 : deg);
    if (deg < 0) return r;
    const Rational s1 = (p - 1) % 2 ? -1 : 1;
    const Rational s2 = (p * (q - 1)) % 2 ? 1 : -1;
    for (std::size_t i = 0; i < P.ring()->size(); ++i) {
        if (p > 0) {
            auto a = oddDerivative(P, i);
            if (!a.isZero()) r += wedge(a, Q.partial(i)) * s1;
        }
        if (q > 0) {
            auto b = oddDerivative(Q, i);
            if (!b.isZero()) r += wedge(b, P.partial(i)) * s2;
        }
    }
    return r;
}

// Contraction with a 1-form in the first slot: i_alpha(d/dx ^ d/dy) = alpha_x d/dy - alpha_y d/dx.
template <class C>
Alternating<C, VectorKind> interior(const Alternating<C, FormKind>& alpha,
                                    const Alternating<C, VectorKind>& P) {
    requireSameRing(alpha.ring(), P.ring());
    if (alpha.degree() != 1) throw InputError("interior product needs a 1-form");
    if (P.degree() == 0) throw InputError("interior product of a function");
    Alternating<C, VectorKind> r(P.ring(), P.degree() - 1);
    for (const auto& [k, a] : alpha.components()) {
        auto d = oddDerivative(P, k[0]);
        r += a * d;
    }
    return r;
}

template <class C>
Alternating<C, FormKind> derham(const Alternating<C, FormKind>& w) {
    Alternating<C, FormKind> r(w.ring(), w.degree() + 1);
    for (std::size_t i = 0; i < w.ring()->size(); ++i) {
        auto di = w.partial(i);
        if (di.isZero()) continue;
        // d(f dx_I) = sum_i df/dx_i dx_i ^ dx_I
        for (const auto& [k, c] : di.components()) {
            std::vector<std::size_t> idx{i};
            idx.insert(idx.end(), k.begin(), k.end());
            r.addUnsorted(idx, c);
        }
    }
    return r;
}

// Full evaluation P(alpha_1, ..., alpha_k) = i_{alpha_k} ... i_{alpha_1} P.
template <class C>
C evaluate(Alternating<C, VectorKind> P, const std::vector<Alternating<C, FormKind>>& forms,
           const C& zero) {
    if (int(forms.size()) != P.degree()) throw InputError("wrong number of covectors");
    for (const auto& a : forms) P = interior(a, P);
    const C* v = P.find(Index{});
    return v ? *v : zero;
}

template <class C>
Alternating<C, FormKind> differential(const C& f) {
    Alternating<C, FormKind> r(f.ring(), 1);
    for (std::size_t i = 0; i < f.ring()->size(); ++i)
        r.add(Index{static_cast<std::uint8_t>(i)}, f.derivative(i));
    return r;
}

// Vector field applied to a function.
template <class C>
C apply(const Alternating<C, VectorKind>& V, const C& f) {
    if (V.degree() != 1) throw InputError("apply needs a vector field");
    C r = f * Rational(0);
    for (const auto& [k, c] : V.components()) r += c * f.derivative(k[0]);
    return r;
}

// Pairing of a 1-form with a vector field.
template <class C>
C pair(const Alternating<C, FormKind>& a, const Alternating<C, VectorKind>& V, const C& zero) {
    C r = zero;
    for (const auto& [k, c] : a.components())
        if (const C* v = V.find(k)) r += c * *v;
    return r;
}

template <class C>
std::string describe(const Alternating<C, VectorKind>& P) {
    std::string out;
    for (const auto& [k, c] : P.components()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (auto i : k) out += "*d/d" + P.ring()->name(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace qp
