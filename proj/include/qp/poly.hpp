#pragma once

#include "qp/rational.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace qp {

inline constexpr std::size_t kMaxVars = 48;

class Ring {
public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.size() > kMaxVars)
            throw InputError("too many coordinates (" + std::to_string(names_.size()) + ")");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw InputError("duplicate coordinate name '" + names_[i] + "'");
        }
    }

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> find(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index(const std::string& n) const {
        auto i = find(n);
        if (!i) throw InputError("unknown coordinate '" + n + "'");
        return *i;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

// Rings are interned, so two rings with the same names are the same pointer.
inline RingPtr makeRing(const std::vector<std::string>& names) {
    static std::mutex mu;
    static std::map<std::vector<std::string>, std::weak_ptr<const Ring>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[names];
    if (auto live = slot.lock()) return live;
    auto ring = std::make_shared<const Ring>(names);
    slot = ring;
    return ring;
}

inline void requireSameRing(const RingPtr& a, const RingPtr& b) {
    if (a != b) throw InputError("mismatched coordinate lists");
}

struct Monomial {
    std::array<std::uint8_t, kMaxVars> exp{};
    std::uint16_t deg = 0;

    bool operator==(const Monomial&) const = default;

    static Monomial var(std::size_t i, unsigned power = 1) {
        Monomial m;
        m.exp[i] = static_cast<std::uint8_t>(power);
        m.deg = static_cast<std::uint16_t>(power);
        return m;
    }
};

// Ascending total degree; within a degree, earlier variables first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.deg != b.deg) return a.deg < b.deg;
        return std::memcmp(a.exp.data(), b.exp.data(), kMaxVars) > 0;
    }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned e = unsigned(a.exp[i]) + b.exp[i];
        if (e > 255) throw std::overflow_error("monomial exponent overflow");
        m.exp[i] = static_cast<std::uint8_t>(e);
    }
    m.deg = static_cast<std::uint16_t>(a.deg + b.deg);
    return m;
}

class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
        if (!qp::isZero(c)) terms_.emplace(Monomial{}, c);
    }

    static Poly variable(const RingPtr& ring, std::size_t i) {
        if (i >= ring->size()) throw InputError("variable index out of range");
        Poly p(ring);
        p.terms_.emplace(Monomial::var(i), Rational(1));
        return p;
    }
    static Poly variable(const RingPtr& ring, const std::string& name) {
        return variable(ring, ring->index(name));
    }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    std::size_t termCount() const { return terms_.size(); }

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.deg == 0);
    }
    Rational constantTerm() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    int degree() const { return terms_.empty() ? -1 : int(terms_.rbegin()->first.deg); }

    void addTerm(const Monomial& m, const Rational& c) {
        if (qp::isZero(c)) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (qp::isZero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        requireSameRing(ring_, o.ring_);
        for (const auto& [m, c] : o.terms_) addTerm(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        requireSameRing(ring_, o.ring_);
        for (const auto& [m, c] : o.terms_) addTerm(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (qp::isZero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        requireSameRing(a.ring_, b.ring_);
        Poly r(a.ring_);
        if (a.isZero() || b.isZero()) return r;
        std::map<Monomial, Rational, MonomialOrder> acc;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                auto [it, fresh] = acc.try_emplace(ma * mb);
                it->second += ca * cb;
            }
        }
        for (auto& [m, c] : acc)
            if (!qp::isZero(c)) r.terms_.emplace_hint(r.terms_.end(), m, std::move(c));
        return r;
    }

    bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }

    Poly derivative(std::size_t var) const {
        Poly r(ring_);
        for (const auto& [m, c] : terms_) {
            if (m.exp[var] == 0) continue;
            Monomial d = m;
            d.exp[var] -= 1;
            d.deg -= 1;
            r.terms_.emplace(d, c * int(m.exp[var]));
        }
        return r;
    }

    // Drop every term of total degree above maxDeg.
    Poly truncated(int maxDeg) const {
        Poly r(ring_);
        for (const auto& [m, c] : terms_) {
            if (int(m.deg) > maxDeg) break;
            r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != ring_->size()) throw InputError("point has wrong dimension");
        return evaluateIn<Rational>(point, Rational(1));
    }

    // Substitute images for the variables; T needs +=, * and scaling by Rational.
    template <class T>
    T evaluateIn(const std::vector<T>& images, const T& one) const {
        T total = one * Rational(0);
        std::vector<std::vector<T>> powers(images.size());
        for (const auto& [m, c] : terms_) {
            T term = one * c;
            for (std::size_t i = 0; i < images.size(); ++i) {
                unsigned e = m.exp[i];
                if (e == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(images[i]);
                while (pw.size() < e) pw.push_back(pw.back() * images[i]);
                term = term * pw[e - 1];
            }
            total += term;
        }
        return total;
    }

    Poly substitute(const std::vector<Poly>& images, const RingPtr& target) const {
        if (images.size() != ring_->size()) throw InputError("substitution has wrong arity");
        return evaluateIn<Poly>(images, Poly(target, 1));
    }

    // Rename into another ring: variable i becomes target variable varMap[i].
    Poly remap(const RingPtr& target, const std::vector<std::size_t>& varMap) const {
        Poly r(target);
        for (const auto& [m, c] : terms_) {
            Monomial n;
            n.deg = m.deg;
            for (std::size_t i = 0; i < ring_->size(); ++i)
                if (m.exp[i]) n.exp[varMap.at(i)] = m.exp[i];
            r.terms_.emplace(n, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < ring_->size(); ++i) {
                if (!m.exp[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_->name(i);
                if (m.exp[i] > 1) mono += "^" + std::to_string(m.exp[i]);
            }
            Rational mag = abs(c);
            std::string body;
            if (mono.empty()) body = mag.get_str();
            else if (mag == 1) body = mono;
            else body = mag.get_str() + "*" + mono;
            if (first) out = (sgn(c) < 0 ? "-" : "") + body;
            else out += (sgn(c) < 0 ? " - " : " + ") + body;
            first = false;
        }
        return out;
    }

private:
    RingPtr ring_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace qp
