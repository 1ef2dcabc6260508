#pragma once

#include "qp/io.hpp"
#include "qp/moduli.hpp"

#include <functional>

namespace qp {

struct SuiteConfig {
    std::size_t n = 0;
    std::vector<int> blocks;
    std::string file;
    SampleOptions sampling;
    bool sampled = false;
    std::optional<std::pair<Entry, Entry>> pair;  // 1-based entries
};

inline ManinQuadruple loadQuadruple(const SuiteConfig& c) {
    if (!c.file.empty()) return quadrupleFromJson(loadJsonFile(c.file));
    if (c.n == 0) throw InputError("give --file, or --n with --blocks");
    return parabolicQuadruple(c.n, c.blocks.empty() ? std::vector<int>(c.n, 1) : c.blocks);
}

inline void requireParabolic(const ManinQuadruple& Q) {
    if (!Q.matrices || Q.matrices->partition.empty())
        throw InputError("this command needs a block-parabolic quadruple (--n/--blocks or \"parabolic\")");
}

// "1,2:2,3" -> ((1,2),(2,3))
inline std::pair<Entry, Entry> parsePair(const std::string& text) {
    auto colon = text.find(':');
    auto entry = [&](const std::string& s) -> Entry {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw InputError("entry '" + s + "' is not of the form k,l");
        try {
            return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
        } catch (const std::exception&) {
            throw InputError("entry '" + s + "' is not of the form k,l");
        }
    };
    if (colon == std::string::npos) throw InputError("--pair expects k,l:m,n");
    return {entry(text.substr(0, colon)), entry(text.substr(colon + 1))};
}

inline std::string cobracketString(const QuasiBialgebra& B, std::size_t i) {
    std::string s;
    const auto& c = B.cobracket[i];
    for (std::size_t a = 0; a < B.dimH(); ++a)
        for (std::size_t b = a + 1; b < B.dimH(); ++b) {
            if (isZero(c(a, b))) continue;
            Rational v = c(a, b);
            std::string coeff = v == 1 ? "" : v == -1 ? "-" : toString(v) + "*";
            if (!s.empty()) {
                if (v > 0) s += " + ";
                else {
                    s += " - ";
                    coeff = v == -1 ? "" : toString(Rational(-v)) + "*";
                }
            }
            s += coeff + B.h.name(a) + "^" + B.h.name(b);
        }
    return s.empty() ? "0" : s;
}

inline Json bialgebraToJson(const QuasiBialgebra& B) {
    Json j;
    j["h"] = algebraToJson(B.h);
    j["g"] = algebraToJson(B.g.algebra());
    j["t"] = matrixToJson(B.g.t);
    Json act = Json::object(), cob = Json::object();
    for (std::size_t a = 0; a < B.dimG(); ++a) act[B.g.algebra().name(a)] = matrixToJson(B.action[a]);
    for (std::size_t i = 0; i < B.dimH(); ++i) cob[B.h.name(i)] = cobracketString(B, i);
    j["action"] = act;
    j["cobracket"] = cob;
    return j;
}

inline CheckReport bialgebraSuite(const ManinQuadruple& Q) {
    CheckReport rep = checkQuadruple(Q);
    if (!rep.passed()) return rep;
    rep.merge(checkBialgebra(deriveBialgebra(Q)));
    rep.merge(checkRoundTrip(Q));
    return rep;
}

inline Poly entryBracket(const QPGroupStructure& S, Entry kl, Entry mn) {
    auto var = [&](Entry e) {
        if (e.first == 0 || e.second == 0 || e.first > S.model.n || e.second > S.model.n)
            throw InputError("entry out of range");
        auto idx = S.model.coordinateOf(e.first - 1, e.second - 1);
        if (!idx)
            throw InputError("x" + std::to_string(e.first) + std::to_string(e.second) +
                             " is not a coordinate of H for this partition");
        return Poly::variable(S.ring(), *idx);
    };
    return coordinateBracket(S, var(kl), var(mn));
}

inline CheckReport bracketTable(const QPGroupStructure& S) {
    CheckReport rep;
    rep.timed("closed-form bracket table", Mode::symbolic, [&]() -> Outcome {
        const auto& coords = S.model.coords;
        for (std::size_t a = 0; a < coords.size(); ++a)
            for (std::size_t b = a + 1; b < coords.size(); ++b) {
                Entry kl{coords[a].first + 1, coords[a].second + 1};
                Entry mn{coords[b].first + 1, coords[b].second + 1};
                Poly lhs = entryBracket(S, kl, mn);
                Poly rhs = closedFormBracket(S.model.n, S.quad.matrices->partition, kl, mn);
                if (!(lhs == rhs))
                    return failure("{" + S.ring()->name(a) + "," + S.ring()->name(b) + "} = " +
                                   lhs.str() + " but the closed form gives " + rhs.str());
            }
        return std::nullopt;
    });
    return rep;
}

inline CheckReport groupSuite(const ManinQuadruple& Q) {
    requireParabolic(Q);
    auto S = buildPi(Q);
    CheckReport rep = checkGroup(S);
    rep.merge(bracketTable(S));
    rep.timed("pair reduction agrees", Mode::symbolic, [&]() -> Outcome {
        auto d = reducePairToGroup(S) - S.pi;
        if (d.isZero()) return std::nullopt;
        return failure(componentWitness(d));
    });
    return rep;
}

inline CheckReport fusionSuite(const ManinQuadruple& Q, const SampleOptions& opt) {
    requireParabolic(Q);
    auto H = hatSpace(buildPi(Q));
    CheckReport rep;
    rep.merge(checkQPSpace(H, opt), "H-hat ");
    rep.merge(checkCoisotropicAction(H, opt), "H-hat ");
    rep.merge(diagonalIsQP(H, opt), "H-hat ");
    rep.merge(checkQPSpace(fuse(H, H), opt), "H-hat fused with itself: ");
    rep.merge(checkFusionAlgebra(H));
    return rep;
}

inline CheckReport momentSuite(const ManinQuadruple& Q, const SuiteConfig& cfg) {
    requireParabolic(Q);
    auto S = buildPi(Q);
    auto G = groupSpace(S);
    CheckReport rep;
    rep.merge(checkDifferentials(G), "H ");
    rep.merge(checkAlgebroid(G), "H ");
    rep.merge(checkLeftInvariantCalculus(S), "H ");
    rep.merge(checkInfinitesimalQP(G, S.bialg, leftMultiplicationAction(S)), "left multiplication on H: ");

    auto Qd = dualQuadruple(Q);
    auto Sd = buildPi(Qd, affineModel(Qd, "y"));
    auto Hs = groupSpace(Sd);
    rep.merge(checkDifferentials(Hs), "H* ");
    std::vector<Poly> mu;
    for (std::size_t i = 0; i < Hs.ring->size(); ++i) mu.push_back(Poly::variable(Hs.ring, i));
    rep.merge(checkInfinitesimalQP(Hs, S.bialg, momentAction(Hs, Q, mu)), "identity moment map on H*: ");

    if (cfg.sampled)
        rep.merge(checkMomentAtSamples(annulusSpace(Q), Q, gaussMoment(Q), cfg.sampling),
                  "Gauss moment map on D: ");
    return rep;
}

inline CheckReport annulusSuite(const ManinQuadruple& Q, const SampleOptions& opt) {
    requireParabolic(Q);
    CheckReport rep = checkAnnulusClaims(Q, opt);
    rep.merge(annulusNegativeControl(Q, opt), "negative control: ");
    rep.merge(fusionOrderDependence(Q.matrices->n, opt));
    return rep;
}

inline CheckReport triangleSuite(const ManinQuadruple& Q, const SampleOptions& opt) {
    requireParabolic(Q);
    return triangleEquivalence(Q, opt);
}

struct SuiteResult {
    CheckReport report;
    Json data;  // command-specific payload, null if none
    std::string text;
};

inline const std::vector<std::string>& commandNames() {
    static const std::vector<std::string> names{
        "verify-quadruple", "derive-bialgebra", "group-bracket", "check-group", "fuse-check",
        "moment-check",     "annulus-check",    "triangle-check", "report"};
    return names;
}

inline SuiteResult runSuite(const std::string& command, const SuiteConfig& cfg) {
    const ManinQuadruple Q = loadQuadruple(cfg);
    SuiteResult r;
    if (command == "verify-quadruple") {
        r.report = checkQuadruple(Q);
    } else if (command == "derive-bialgebra") {
        r.report = bialgebraSuite(Q);
        if (r.report.passed()) {
            auto B = deriveBialgebra(Q);
            r.data = bialgebraToJson(B);
            for (std::size_t i = 0; i < B.dimH(); ++i)
                r.text += "delta(" + B.h.name(i) + ") = " + cobracketString(B, i) + "\n";
        }
    } else if (command == "group-bracket") {
        requireParabolic(Q);
        if (!cfg.pair) throw InputError("group-bracket needs --pair k,l:m,n");
        auto S = buildPi(Q);
        auto [kl, mn] = *cfg.pair;
        Poly b = entryBracket(S, kl, mn);
        Poly closed = closedFormBracket(Q.matrices->n, Q.matrices->partition, kl, mn);
        r.report.record("closed form agrees", b == closed, "closed form gives " + closed.str());
        r.data = {{"bracket", b.str()}};
        r.text = "{x" + std::to_string(kl.first) + std::to_string(kl.second) + ", x" +
                 std::to_string(mn.first) + std::to_string(mn.second) + "} = " + b.str() + "\n";
    } else if (command == "check-group") {
        r.report = groupSuite(Q);
    } else if (command == "fuse-check") {
        r.report = fusionSuite(Q, cfg.sampling);
    } else if (command == "moment-check") {
        r.report = momentSuite(Q, cfg);
    } else if (command == "annulus-check") {
        r.report = annulusSuite(Q, cfg.sampling);
    } else if (command == "triangle-check") {
        r.report = triangleSuite(Q, cfg.sampling);
    } else if (command == "report") {
        requireParabolic(Q);
        r.report.merge(bialgebraSuite(Q), "quadruple and bialgebra: ");
        r.report.merge(groupSuite(Q), "group: ");
        r.report.merge(fusionSuite(Q, cfg.sampling), "fusion: ");
        r.report.merge(momentSuite(Q, cfg), "moment: ");
        r.report.merge(annulusSuite(Q, cfg.sampling), "annulus: ");
        r.report.merge(triangleSuite(Q, cfg.sampling), "triangle: ");
    } else {
        throw InputError("unknown command " + command);
    }
    return r;
}

inline std::string overallStatus(const CheckReport& rep) {
    if (rep.anyFailed()) return "fail";
    return rep.passed() ? "pass" : "inconclusive";
}

// The JSON document for one run. It depends only on the flags and the seed
// unless elapsed times are requested.
inline Json reportDocument(const std::string& command, const SuiteConfig& cfg, const SuiteResult& r,
                           bool timings) {
    Json j;
    j["command"] = command;
    Json p;
    if (!cfg.file.empty()) p["file"] = cfg.file;
    if (cfg.n) p["n"] = cfg.n;
    if (!cfg.blocks.empty()) p["blocks"] = cfg.blocks;
    p["samples"] = cfg.sampling.samples;
    p["seed"] = cfg.sampling.seed;
    if (cfg.sampled) p["sampled"] = true;
    j["parameters"] = p;
    j["status"] = overallStatus(r.report);
    j["checks"] = reportToJson(r.report, timings);
    if (!r.data.is_null()) j["result"] = r.data;
    return j;
}

}  // namespace qp
