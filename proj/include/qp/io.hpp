#pragma once

#include "qp/manin.hpp"
#include "qp/report.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qp {

using Json = nlohmann::ordered_json;

inline Rational rationalFromJson(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parseRational(j.get<std::string>());
    throw InputError("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

inline Json rationalToJson(const Rational& r) { return toString(r); }

// A vector is a dense coordinate list or a map from basis names to coefficients.
inline Vec vectorFromJson(const Json& j, const LieAlgebra& L) {
    Vec v(L.dim(), 0);
    if (j.is_array()) {
        if (j.size() != L.dim()) throw InputError("dense vector has the wrong length: " + j.dump());
        for (std::size_t i = 0; i < j.size(); ++i) v[i] = rationalFromJson(j[i]);
    } else if (j.is_object()) {
        for (const auto& [k, c] : j.items()) v[L.index(k)] += rationalFromJson(c);
    } else {
        throw InputError("expected a vector, got " + j.dump());
    }
    return v;
}

inline Json vectorToJson(const Vec& v, const LieAlgebra& L) {
    Json j = Json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!isZero(v[i])) j[L.name(i)] = rationalToJson(v[i]);
    return j;
}

inline RatMatrix matrixFromJson(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a matrix");
    RatMatrix m(j.size(), j[0].size(), 0);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != m.cols()) throw InputError("ragged matrix");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rationalFromJson(j[r][c]);
    }
    return m;
}

inline Json matrixToJson(const RatMatrix& m) {
    Json j = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rationalToJson(m(r, c)));
        j.push_back(row);
    }
    return j;
}

// {"basis": ["e","h","f"], "brackets": [["e","f",[["h",1]]], ...]}
inline LieAlgebra algebraFromJson(const Json& j) {
    if (!j.contains("basis")) throw InputError("algebra needs a \"basis\" list");
    LieAlgebra L(j.at("basis").get<std::vector<std::string>>());
    if (j.contains("brackets"))
        for (const auto& b : j.at("brackets")) {
            if (!b.is_array() || b.size() != 3)
                throw InputError("bracket entries look like [x, y, [[name, coeff], ...]]: " + b.dump());
            std::size_t x = L.index(b[0].get<std::string>());
            std::size_t y = L.index(b[1].get<std::string>());
            if (x == y) throw InputError("bracket of a basis element with itself");
            Vec v(L.dim(), 0);
            for (const auto& term : b[2]) {
                if (!term.is_array() || term.size() != 2) throw InputError("bad bracket term " + term.dump());
                v[L.index(term[0].get<std::string>())] += rationalFromJson(term[1]);
            }
            L.setBracket(x, y, v);
        }
    return L;
}

inline Json algebraToJson(const LieAlgebra& L) {
    Json j;
    j["basis"] = L.basis();
    Json br = Json::array();
    for (std::size_t x = 0; x < L.dim(); ++x)
        for (std::size_t y = x + 1; y < L.dim(); ++y) {
            Vec v = L.bracket(L.unit(x), L.unit(y));
            if (isZeroVec(v)) continue;
            Json terms = Json::array();
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!isZero(v[k])) terms.push_back({L.name(k), rationalToJson(v[k])});
            br.push_back({L.name(x), L.name(y), terms});
        }
    j["brackets"] = br;
    return j;
}

inline InvariantPairing pairingFromJson(const Json& j) {
    LieAlgebra L = algebraFromJson(j);
    if (!j.contains("gram")) throw InputError("pairing needs a \"gram\" matrix");
    RatMatrix gram = matrixFromJson(j.at("gram"));
    if (gram.rows() != L.dim() || gram.cols() != L.dim())
        throw InputError("gram matrix does not match the algebra dimension");
    return InvariantPairing{std::move(L), std::move(gram)};
}

// {"d": {basis, brackets, gram}, "a": [[coords]], "b": [...], "c": [...]}, with optional
// "names" and "realization"; or the shortcut {"parabolic": {"n": 3, "partition": [1,2]}}.
// The pairing is not validated here: checkQuadruple reports its defects.
inline ManinQuadruple quadrupleFromJson(const Json& j) {
    if (j.contains("parabolic")) {
        const auto& p = j.at("parabolic");
        return parabolicQuadruple(p.at("n").get<std::size_t>(), p.at("partition").get<std::vector<int>>());
    }
    if (!j.contains("d")) throw InputError("quadruple needs \"d\" or \"parabolic\"");
    ManinQuadruple Q;
    Q.d = pairingFromJson(j.at("d"));
    auto part = [&](const std::string& key, std::vector<Vec>& out, std::vector<std::string>& names) {
        if (!j.contains(key)) throw InputError("missing sub-basis \"" + key + "\"");
        for (const auto& v : j.at(key)) out.push_back(vectorFromJson(v, Q.d.algebra));
        if (j.contains("names") && j.at("names").contains(key))
            names = j.at("names").at(key).get<std::vector<std::string>>();
        else
            names = defaultNames(key, out.size());
        if (names.size() != out.size()) throw InputError("wrong number of names for " + key);
    };
    part("a", Q.a, Q.aNames);
    part("b", Q.b, Q.bNames);
    part("c", Q.c, Q.cNames);
    if (j.contains("realization")) {
        const auto& r = j.at("realization");
        std::vector<RatMatrix> mats;
        for (const auto& m : r.at("matrices")) mats.push_back(matrixFromJson(m));
        if (mats.size() != Q.dim()) throw InputError("realization needs one matrix per basis element");
        Q.matrices = MatrixRealization(r.at("n").get<std::size_t>(), mats,
                                       r.value("partition", std::vector<int>{}));
    }
    validateShape(Q);
    return Q;
}

inline Json quadrupleToJson(const ManinQuadruple& Q) {
    Json j;
    j["d"] = algebraToJson(Q.d.algebra);
    j["d"]["gram"] = matrixToJson(Q.d.gram);
    auto list = [&](const std::vector<Vec>& vs) {
        Json a = Json::array();
        for (const auto& v : vs) {
            Json row = Json::array();
            for (const auto& c : v) row.push_back(rationalToJson(c));
            a.push_back(row);
        }
        return a;
    };
    j["a"] = list(Q.a);
    j["b"] = list(Q.b);
    j["c"] = list(Q.c);
    j["names"] = {{"a", Q.aNames}, {"b", Q.bNames}, {"c", Q.cNames}};
    if (Q.matrices) {
        Json mats = Json::array();
        for (const auto& m : Q.matrices->basis) mats.push_back(matrixToJson(m));
        j["realization"] = {{"n", Q.matrices->n}, {"matrices", mats},
                            {"partition", Q.matrices->partition}};
    }
    return j;
}

inline Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Status statusFromString(const std::string& s) {
    if (s == "pass") return Status::pass;
    if (s == "fail") return Status::fail;
    if (s == "inconclusive") return Status::inconclusive;
    throw InputError("unknown status " + s);
}

inline Json reportToJson(const CheckReport& rep, bool timings) {
    Json checks = Json::array();
    for (const auto& it : rep.items()) {
        Json c;
        c["check"] = it.name;
        c["mode"] = toString(it.mode);
        c["status"] = toString(it.status);
        if (!it.witness.empty()) c["witness"] = it.witness;
        if (timings) c["elapsedMillis"] = it.elapsedMillis;
        checks.push_back(c);
    }
    return checks;
}

inline CheckReport reportFromJson(const Json& checks) {
    CheckReport rep;
    for (const auto& c : checks) {
        CheckItem it;
        it.name = c.at("check").get<std::string>();
        it.mode = c.at("mode").get<std::string>() == "sampled" ? Mode::sampled : Mode::symbolic;
        it.status = statusFromString(c.at("status").get<std::string>());
        it.witness = c.value("witness", std::string{});
        it.elapsedMillis = c.value("elapsedMillis", 0.0);
        rep.add(std::move(it));
    }
    return rep;
}

inline std::string reportToText(const CheckReport& rep) {
    std::ostringstream out;
    for (const auto& it : rep.items()) {
        out << (it.status == Status::pass ? "PASS" : it.status == Status::fail ? "FAIL" : "INCONCLUSIVE")
            << "  [" << toString(it.mode) << "] " << it.name;
        char buf[32];
        std::snprintf(buf, sizeof buf, "  (%.1f ms)", it.elapsedMillis);
        out << buf;
        if (!it.witness.empty()) out << "\n      " << it.witness;
        out << "\n";
    }
    return out.str();
}

}  // namespace qp
