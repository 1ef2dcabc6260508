#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qp {

using Rational = mpq_class;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Rational parseRational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s.push_back(ch);
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    mpz_class num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = mpz_class(s, 10);
        } else {
            num = mpz_class(s.substr(0, slash), 10);
            den = mpz_class(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal '" + text + "'");
    }
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// mpq_class(p, q) does not reduce; arithmetic on unreduced values is undefined.
inline Rational frac(long p, long q) {
    if (q == 0) throw InputError("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline std::string toString(const Rational& r) { return r.get_str(); }

inline bool isZero(const Rational& r) { return sgn(r) == 0; }

}  // namespace qp
