#include "setmeans/round.hpp"

#include <cmath>
#include <cstdio>

namespace setmeans {

namespace {

struct Halves {
    MeanValue k;
    Rational cut;
    BlockSet lower;
    BlockSet upper;
};

Halves split(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    MeanValue k = meanOf(h, kind, cfg.ladder);
    if (!k.defined()) {
        throw DomainViolation("K(H) is undefined: " + k.reason());
    }
    Rational cut = k.cutPoint();
    return {k, cut, cutBelow(h, cut), cutAbove(h, cut)};
}

bool nonConvergent(const MeanValue& m) { return !m.defined() && m.reason() == "no convergence"; }

void requireHalf(const BlockSet& half, const MeanValue& value, const char* which)
{
    if (half.empty()) {
        throw DomainViolation(std::string(which) + " half is empty");
    }
    if (!value.defined() && !nonConvergent(value)) {
        throw DomainViolation(std::string(which) + " half is outside the domain: " + value.reason());
    }
}

Verdict verdictOf(Answer a, std::string note)
{
    Verdict v;
    v.answer = a;
    v.method = Method::ClosedForm;
    v.notes.push_back(std::move(note));
    return v;
}

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string countSplit(std::size_t a, std::size_t b) { return std::to_string(a) + "|" + std::to_string(b); }

// Clause 2 of the ISO characterization: |P_n|/|S_n| along the deepest rungs.
Verdict isoRatioClause(const BlockSet& h, const Rational& cut, const Config& cfg)
{
    Verdict out;
    out.method = Method::ClosedForm;
    out.answer = Answer::Inconclusive;
    const int steps = 12;
    int first = std::max(0, cfg.ladder.maxSteps - steps);
    std::vector<double> levels;
    Rational eps = cfg.ladder.eps0;
    for (int k = 0; k < cfg.ladder.maxSteps; ++k, eps *= cfg.ladder.shrink) {
        if (k < first) {
            continue;
        }
        std::size_t s = 0, p = 0;
        for (const auto& x : isolatedOutside(h, eps)) {
            s += x <= cut ? 1 : 0;
            p += x >= cut ? 1 : 0;
        }
        if (s == 0) {
            continue;
        }
        out.ratioTrace.push_back(static_cast<double>(p) / static_cast<double>(s));
        levels.push_back(static_cast<double>(k + 1));
    }
    std::size_t n = out.ratioTrace.size();
    if (n < 2) {
        out.notes.push_back("ratio ladder too short");
        return out;
    }
    const auto& r = out.ratioTrace;
    double l1 = levels[n - 2], l2 = levels[n - 1];
    double limit = (l2 * r[n - 1] - l1 * r[n - 2]) / (l2 - l1);
    out.notes.push_back("|P_n|/|S_n| extrapolated limit " + fmt(limit));
    if (std::fabs(limit - 1.0) <= 0.05 && std::fabs(r.back() - 1.0) <= 0.25) {
        out.answer = Answer::Yes;
    } else if (std::fabs(limit - 1.0) > 0.25 && std::fabs(r.back() - 1.0) > 0.25) {
        out.answer = Answer::No;
    }
    return out;
}

} // namespace

RoundReport roundDefect(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    Halves hv = split(h, kind, cfg);
    RoundReport rep;
    rep.k = hv.k;
    rep.k1 = hv.lower.empty() ? MeanValue::undefined("empty set") : meanOf(hv.lower, kind, cfg.ladder);
    rep.k2 = hv.upper.empty() ? MeanValue::undefined("empty set") : meanOf(hv.upper, kind, cfg.ladder);
    requireHalf(hv.lower, rep.k1, "lower");
    requireHalf(hv.upper, rep.k2, "upper");
    rep.details.push_back({"cut", hv.cut.str()});
    if (!rep.k1.defined() || !rep.k2.defined()) {
        rep.defect = MeanValue::undefined("no convergence");
        rep.verdict = verdictOf(Answer::Inconclusive, "a half-mean does not converge");
        return rep;
    }
    rep.defect = (rep.k1 + rep.k2) * Rational(1, 2) - rep.k;
    bool round = rep.defect.isExact() ? rep.defect.value().isZero()
                                      : std::fabs(rep.defect.toDouble()) < 2.0 * cfg.ladder.tol;
    rep.verdict = verdictOf(round ? Answer::Yes : Answer::No, "defect " + rep.defect.str());
    return rep;
}

Verdict roundWitness(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    Halves hv = split(h, kind, cfg);
    if (hv.lower.empty() || hv.upper.empty()) {
        throw DomainViolation("a half is empty");
    }
    switch (kind) {
    case MeanKind::Arith: {
        std::size_t a = hv.lower.cardinality(), b = hv.upper.cardinality();
        return verdictOf(a == b ? Answer::Yes : Answer::No, "cardinality split " + countSplit(a, b));
    }
    case MeanKind::Avg: {
        DimValue s = dimension(h);
        if (s.kind == DimValue::Kind::Zero) {
            std::size_t a = hv.lower.cardinality(), b = hv.upper.cardinality();
            return verdictOf(a == b ? Answer::Yes : Answer::No, "cardinality split " + countSplit(a, b));
        }
        if (!inDomain(hv.lower, kind, cfg.ladder) || !inDomain(hv.upper, kind, cfg.ladder)) {
            throw DomainViolation("a half is outside the domain");
        }
        Weight lo = measureAt(hv.lower, s), hi = measureAt(hv.upper, s);
        auto c = compareWeights(lo, hi);
        std::string note = "measure split " + fmt(lo.value) + "|" + fmt(hi.value) + " at dimension " + s.str();
        if (!c) {
            return verdictOf(Answer::Inconclusive, note);
        }
        return verdictOf(*c == 0 ? Answer::Yes : Answer::No, note);
    }
    case MeanKind::Acc: {
        auto l1 = level(hv.lower), l2 = level(hv.upper);
        if (!l1 || !l2) {
            throw DomainViolation("a half has infinite level");
        }
        if (*l1 != *l2) {
            // Only possible when k is the sole top-level point on one side; the
            // count criterion does not apply, so compare the half top sets.
            BlockSet t1 = derivedSet(hv.lower, *l1), t2 = derivedSet(hv.upper, *l2);
            Rational mid = (arithMean(t1.finitePoints()) + arithMean(t2.finitePoints())) / Rational(2);
            Verdict v = verdictOf(mid == hv.k.value() ? Answer::Yes : Answer::No,
                                  "levels " + std::to_string(*l1) + "|" + std::to_string(*l2) +
                                      ", top-set midpoint " + mid.str());
            v.notes.push_back("unequal half levels: decided from the half top sets");
            return v;
        }
        std::size_t a = derivedSet(hv.lower, *l1).cardinality(), b = derivedSet(hv.upper, *l2).cardinality();
        return verdictOf(a == b ? Answer::Yes : Answer::No,
                         "level " + std::to_string(*l1) + " with top counts " + countSplit(a, b));
    }
    case MeanKind::Lis: {
        Bounds whole = bounds(h), lo = bounds(hv.lower), hi = bounds(hv.upper);
        if (!lo.accSup || !hi.accInf) {
            throw DomainViolation("a half is finite");
        }
        Rational lhs = (*lo.accSup + *hi.accInf) / Rational(2);
        Rational rhs = (*whole.accSup + *whole.accInf) / Rational(2);
        return verdictOf(lhs == rhs ? Answer::Yes : Answer::No,
                         "inner accumulation midpoint " + lhs.str() + " vs " + rhs.str());
    }
    case MeanKind::Iso: {
        MeanValue m1 = meanOf(hv.lower, kind, cfg.ladder);
        MeanValue m2 = meanOf(hv.upper, kind, cfg.ladder);
        requireHalf(hv.lower, m1, "lower");
        requireHalf(hv.upper, m2, "upper");
        double slack = 2.0 * cfg.ladder.tol;
        if (m1.defined() && m2.defined() && sameValue(m1, hv.k, slack) && sameValue(m2, hv.k, slack)) {
            return verdictOf(Answer::Yes, "both half-means equal k");
        }
        Verdict v = isoRatioClause(h, hv.cut, cfg);
        if (v.answer == Answer::No && !(m1.defined() && m2.defined())) {
            v.answer = Answer::Inconclusive;
            v.notes.push_back("a half-mean does not converge");
        }
        return v;
    }
    }
    return {};
}

} // namespace setmeans
