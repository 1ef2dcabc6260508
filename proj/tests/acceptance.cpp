// One PASS/FAIL line per acceptance criterion; nonzero exit if any criterion fails.
#include "qp/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace qp;

namespace {

using Case = std::pair<std::size_t, std::vector<int>>;

std::vector<Case> partitions(std::size_t maxN) {
    std::vector<Case> all{{2, {1, 1}},       {3, {1, 1, 1}}, {3, {1, 2}},    {3, {2, 1}},
                          {4, {1, 1, 1, 1}}, {4, {1, 1, 2}}, {4, {1, 2, 1}}, {4, {2, 1, 1}},
                          {4, {2, 2}},       {4, {1, 3}},    {4, {3, 1}}};
    std::vector<Case> out;
    for (auto& c : all)
        if (c.first <= maxN) out.push_back(c);
    return out;
}

std::string label(const Case& c) {
    std::string s = "sl(" + std::to_string(c.first) + ") [";
    for (std::size_t i = 0; i < c.second.size(); ++i) s += (i ? "," : "") + std::to_string(c.second[i]);
    return s + "]";
}

// Collects the first problem; an empty string means the criterion holds.
struct Verdict {
    std::string problem;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && problem.empty()) problem = what;
    }
    void require(const CheckReport& rep, const std::string& where) {
        for (const auto& it : rep.items())
            if (it.status != Status::pass) {
                require(false, where + ": " + it.name + " " + toString(it.status) +
                                   (it.witness.empty() ? "" : " (" + it.witness + ")"));
                return;
            }
    }
};

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::string capture(const std::string& args) {
    std::string cmd = std::string(QP_CLI_PATH) + " " + args + " 2>&1";
    std::string out;
    if (FILE* p = popen(cmd.c_str(), "r")) {
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
        pclose(p);
    }
    return out;
}

Verdict quadrupleAxioms() {
    Verdict v;
    double t = seconds([&] {
        for (const auto& c : partitions(4)) v.require(checkQuadruple(parabolicQuadruple(c.first, c.second)), label(c));
    });
    v.require(t < 1.0, "runtime " + fmt(t) + " exceeds 1 s");
    v.detail = "11 partitions, " + fmt(t);
    return v;
}

Verdict bialgebra() {
    Verdict v;
    double t = seconds([&] {
        for (const auto& c : partitions(4)) {
            auto Q = parabolicQuadruple(c.first, c.second);
            v.require(checkBialgebra(deriveBialgebra(Q)), label(c));
            v.require(checkRoundTrip(Q), label(c));
        }
    });
    v.require(t < 5.0, "runtime " + fmt(t) + " exceeds 5 s");
    v.detail = "mcoc, co-Jacobi, double round trip; " + fmt(t);
    return v;
}

Verdict groupStructure() {
    Verdict v;
    double worst = 0;
    for (const auto& c : partitions(4)) {
        CheckReport rep;
        double t = seconds([&] { rep = checkGroup(buildPi(parabolicQuadruple(c.first, c.second))); });
        if (c.first == 4) worst = std::max(worst, t);
        v.require(rep, label(c));
        for (const char* name : {"pi vanishes at 1", "g-invariance", "quasi-Jacobi", "multiplicativity",
                                 "Lie derivative of pi", "linearization is delta"})
            v.require(rep.find(name) != nullptr, label(c) + ": check '" + name + "' missing");
    }
    v.require(worst < 60.0, "N = 4 runtime " + fmt(worst) + " exceeds 60 s");
    v.detail = "slowest N = 4 partition " + fmt(worst);
    return v;
}

Verdict bracketTableCriterion() {
    Verdict v;
    for (const auto& c : partitions(4))
        v.require(bracketTable(buildPi(parabolicQuadruple(c.first, c.second))), label(c));
    auto S = buildPi(parabolicQuadruple(3, {1, 1, 1}));
    std::string b = entryBracket(S, {1, 2}, {2, 3}).str();
    v.require(b == "x13 - 1/2*x12*x23", "{x12, x23} = " + b);
    v.detail = "{x12, x23} = " + b;
    return v;
}

Verdict twoConstructions() {
    Verdict v;
    for (const auto& c : partitions(4)) {
        auto S = buildPi(parabolicQuadruple(c.first, c.second));
        v.require(reducePairToGroup(S) == S.pi, label(c) + ": pair reduction differs");
    }
    v.detail = "11 partitions, exact";
    return v;
}

Verdict fusionAlgebra() {
    Verdict v;
    auto H = hatSpace(buildPi(parabolicQuadruple(3, {1, 1, 1})));
    auto rep = checkFusionAlgebra(H);
    v.require(rep, "sl(3) [1,1,1]");
    v.require(diagonalIsQP(H), "diagonal of H-hat");
    if (const auto* nc = rep.find("fusion not commutative")) v.detail = nc->witness;
    return v;
}

Verdict momentCalculus() {
    Verdict v;
    for (const auto& c : partitions(3)) {
        auto Q = parabolicQuadruple(c.first, c.second);
        auto S = buildPi(Q);
        v.require(checkDifferentials(groupSpace(S)), label(c) + " H");
        auto Qd = dualQuadruple(Q);
        auto dualSpace = groupSpace(buildPi(Qd, affineModel(Qd, "y")));
        v.require(checkDifferentials(dualSpace), label(c) + " H*");
        if (c.first == 3) {
            std::vector<Poly> mu;
            for (std::size_t i = 0; i < dualSpace.ring->size(); ++i)
                mu.push_back(Poly::variable(dualSpace.ring, i));
            auto rep = checkInfinitesimalQP(dualSpace, deriveBialgebra(Q), momentAction(dualSpace, Q, mu));
            v.require(rep, label(c) + " identity moment map");
            v.require(rep.find("inf-action") && rep.find("formulations agree"),
                      label(c) + ": moment checks missing");
        }
    }
    for (const auto& c : partitions(4))
        v.require(checkLeftInvariantCalculus(buildPi(parabolicQuadruple(c.first, c.second))), label(c));
    v.detail = "d+-squared, left-invariant calculus, identity moment map";
    return v;
}

Verdict annulus() {
    Verdict v;
    double t = seconds([&] {
        auto Q = parabolicQuadruple(2, {1, 1});
        auto rep = checkAnnulusClaims(Q, {100, 42, 1});
        v.require(rep, "n = 2, seed 42");
        for (const char* p : {"(a) ", "(b) ", "(c) ", "(d) ", "(e) "}) {
            bool seen = false;
            for (const auto& it : rep.items()) seen |= it.name.rfind(p, 0) == 0;
            v.require(seen, std::string("sub-check ") + p + "missing");
        }
        for (const auto& c : partitions(3)) {
            auto out = restrictionMatches(parabolicQuadruple(c.first, c.second));
            v.require(!out, label(c) + ": " + (out ? out->second : ""));
        }
        auto neg = annulusNegativeControl(Q, {100, 42, 1});
        v.require(neg, "negative control");
        if (!neg.items().empty()) v.detail = "negative control: " + neg.items().front().witness + "; ";
    });
    v.require(t < 120.0, "runtime " + fmt(t) + " exceeds 120 s");
    v.detail += fmt(t);
    return v;
}

Verdict triangle() {
    Verdict v;
    auto rep = triangleEquivalence(parabolicQuadruple(3, {1, 1, 1}), {50, 7, 1});
    v.require(rep, "sl(3) [1,1,1]");
    const auto* s = rep.find("sampled quotient");
    v.require(s != nullptr, "sampled quotient missing");
    if (s) {
        v.require(s->witness.empty(), "zero-skip requirement not met: " + s->witness);
        v.detail = s->witness.empty() ? "50 samples, no skips" : s->witness;
    }
    return v;
}

Verdict determinism() {
    Verdict v;
    for (const char* args : {"check-group --n 3 --blocks 1,1,1 --format json",
                             "annulus-check --n 2 --blocks 1,1 --samples 100 --seed 42 --format json",
                             "triangle-check --n 3 --blocks 1,1,1 --samples 50 --seed 7 --format json"}) {
        std::string a = capture(args), b = capture(args), c = capture(std::string(args) + " --parallel 4");
        v.require(!a.empty() && a.front() == '{', std::string(args) + ": no JSON output");
        v.require(a == b && a == c, std::string(args) + ": reports differ");
    }
    v.detail = "3 commands, repeated and with 4 threads";
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"quadruple axioms", quadrupleAxioms},
        {"bialgebra equivalence", bialgebra},
        {"group structure", groupStructure},
        {"bracket table", bracketTableCriterion},
        {"two constructions of pi agree", twoConstructions},
        {"fusion algebra", fusionAlgebra},
        {"moment calculus", momentCalculus},
        {"annulus suite", annulus},
        {"triangle suite", triangle},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.problem = std::string("exception: ") + e.what();
        }
        const bool ok = v.problem.empty();
        failed += !ok;
        std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << "  (" << (ok ? v.detail : v.problem) << ")" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
