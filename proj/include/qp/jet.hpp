#pragma once

#include "qp/poly.hpp"

#include <stdexcept>

namespace qp {

// Truncated Taylor expansion at a point: a polynomial in the displacement
// variables, exact up to total degree `order`.
class Jet {
public:
    Jet(RingPtr ring, int order) : p_(std::move(ring)), order_(order) {}
    Jet(Poly p, int order) : p_(p.truncated(order)), order_(order) {}

    static Jet constant(const RingPtr& ring, const Rational& c, int order) {
        return Jet(Poly(ring, c), order);
    }
    // Coordinate i expanded around the value x0.
    static Jet coordinate(const RingPtr& ring, std::size_t i, const Rational& x0, int order) {
        Poly p(ring, x0);
        if (order >= 1) p += Poly::variable(ring, i);
        return Jet(std::move(p), order);
    }

    const Poly& poly() const { return p_; }
    const RingPtr& ring() const { return p_.ring(); }
    int order() const { return order_; }
    Rational value() const { return p_.constantTerm(); }
    bool isZero() const { return p_.isZero(); }
    std::string str() const { return p_.str() + " + O(" + std::to_string(order_ + 1) + ")"; }

    Jet& operator+=(const Jet& o) {
        p_ += o.p_;
        lower(o.order_);
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        p_ -= o.p_;
        lower(o.order_);
        return *this;
    }
    Jet& operator*=(const Rational& s) {
        p_ *= s;
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        a.p_ = -a.p_;
        return a;
    }
    friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
    friend Jet operator*(const Rational& s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        int ord = std::min(a.order_, b.order_);
        return Jet(a.p_.truncated(ord) * b.p_.truncated(ord), ord);
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    Jet derivative(std::size_t var) const {
        if (order_ < 1) throw std::logic_error("derivative of an order-0 jet");
        return Jet(p_.derivative(var), order_ - 1);
    }

    bool invertible() const { return !qp::isZero(value()); }

    Jet inverse() const {
        Rational c0 = value();
        if (qp::isZero(c0)) throw std::domain_error("jet is not invertible");
        Rational inv = 1 / c0;
        // 1/(c0 + u) = inv * sum_k (-u*inv)^k, finite because u is nilpotent.
        Jet u = (*this - constant(ring(), c0, order_)) * (-inv);
        Jet acc = constant(ring(), 1, order_);
        Jet power = acc;
        for (int k = 1; k <= order_; ++k) {
            power = power * u;
            acc += power;
        }
        return acc * inv;
    }

    bool operator==(const Jet& o) const { return order_ == o.order_ && p_ == o.p_; }

private:
    void lower(int other) {
        if (other < order_) {
            order_ = other;
            p_ = p_.truncated(order_);
        }
    }

    Poly p_;
    int order_;
};

// Expand a polynomial around `point` to the given order, in the ring `local`
// whose variables are the displacements.
inline Jet expandAt(const Poly& f, const std::vector<Rational>& point, const RingPtr& local,
                    int order) {
    if (point.size() != f.ring()->size()) throw InputError("point has wrong dimension");
    std::vector<Jet> images;
    images.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
        images.push_back(Jet::coordinate(local, i, point[i], order));
    return f.evaluateIn<Jet>(images, Jet::constant(local, 1, order));
}

// Scalar helpers shared by the templated matrix routines.
inline bool scalarInvertible(const Rational& r) { return !isZero(r); }
inline bool scalarInvertible(const Jet& j) { return j.invertible(); }
inline Rational scalarInverse(const Rational& r) { return 1 / r; }
inline Jet scalarInverse(const Jet& j) { return j.inverse(); }
inline bool scalarIsZero(const Rational& r) { return isZero(r); }
inline bool scalarIsZero(const Jet& j) { return j.isZero(); }
inline bool scalarIsZero(const Poly& p) { return p.isZero(); }

}  // namespace qp
