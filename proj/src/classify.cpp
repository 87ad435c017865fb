#include "setmeans/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace setmeans {

std::string_view toString(Answer a)
{
    switch (a) {
    case Answer::Yes:
        return "YES";
    case Answer::No:
        return "NO";
    case Answer::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

std::string_view toString(Method m) { return m == Method::ClosedForm ? "CLOSED_FORM" : "SAMPLER"; }

namespace {

Verdict closed(Answer a, std::string note)
{
    Verdict v;
    v.answer = a;
    v.method = Method::ClosedForm;
    v.notes.push_back(std::move(note));
    return v;
}

bool hasContinuum(const BlockSet& h)
{
    return std::any_of(h.blocks().begin(), h.blocks().end(), [](const Block& b) {
        return std::holds_alternative<IntervalBlock>(b) || std::holds_alternative<CantorBlock>(b);
    });
}

void requireDomain(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    if (!inClassDomain(h, kind, cfg)) {
        throw DomainViolation("set is outside the domain of " + std::string(toString(kind)));
    }
}

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Rational hullMid(const BlockSet& h)
{
    Bounds b = bounds(h);
    return (b.inf + b.sup) / Rational(2);
}

Rational hullDiam(const BlockSet& h)
{
    Bounds b = bounds(h);
    Rational d = b.sup - b.inf;
    return d.isZero() ? Rational(1) : d;
}

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

// Ratio trace n_eps / m_eps over the deepest twelve rungs of the ladder. Only
// answers NO (stable positive ratio) or INCONCLUSIVE.
Verdict isoLadderRatio(const BlockSet& v, const BlockSet& h, const Config& cfg)
{
    Verdict out;
    out.method = Method::ClosedForm;
    out.answer = Answer::Inconclusive;
    const int steps = 12;
    int total = cfg.ladder.maxSteps;
    int first = std::max(0, total - steps);
    int half = std::max(1, total / 2);
    Rational eps = cfg.ladder.eps0;
    double vHalf = 0, hHalf = 0;
    std::vector<double> levels;
    std::size_t nLast = 0, mLast = 0;
    for (int k = 0; k < total; ++k, eps *= cfg.ladder.shrink) {
        if (k + 1 == half) {
            vHalf = static_cast<double>(isolatedCount(v, eps));
            hHalf = static_cast<double>(isolatedCount(h, eps));
        }
        if (k < first) {
            continue;
        }
        std::size_t m = isolatedCount(h, eps);
        if (m == 0) {
            continue;
        }
        std::size_t n = isolatedCount(v, eps);
        out.ratioTrace.push_back(static_cast<double>(n) / static_cast<double>(m));
        levels.push_back(static_cast<double>(k + 1));
        nLast = n;
        mLast = m;
    }
    std::size_t n = out.ratioTrace.size();
    if (n < 4 || vHalf == 0 || hHalf == 0 || nLast == 0) {
        out.notes.push_back("ladder too short");
        return out;
    }
    // log-log growth slopes between the middle and the last rung
    double span = std::log(static_cast<double>(total) / half);
    double sv = std::log(static_cast<double>(nLast) / vHalf) / span;
    double sh = std::log(static_cast<double>(mLast) / hHalf) / span;
    out.notes.push_back("growth slopes " + fmt(sv) + " vs " + fmt(sh));
    if (sv < sh - 0.5) {
        out.notes.push_back("ratio appears to vanish");
        return out;
    }
    const auto& r = out.ratioTrace;
    double lo = *std::min_element(r.end() - 4, r.end());
    double hi = *std::max_element(r.end() - 4, r.end());
    double l1 = levels[n - 2], l2 = levels[n - 1];
    double limit = (l2 * r[n - 1] - l1 * r[n - 2]) / (l2 - l1);
    out.notes.push_back("ratio ladder, extrapolated limit " + fmt(limit));
    if (sv > sh + 0.5 || (lo > 0.0 && hi <= 1.5 * lo && limit > 0.1)) {
        out.answer = Answer::No;
    }
    return out;
}

Verdict smallIso(const BlockSet& v, const BlockSet& h, const Config& cfg)
{
    if (v.isFinite()) {
        return closed(Answer::Yes, "finite sets are small");
    }
    if (hasContinuum(v)) {
        return closed(Answer::No, "union with an interval or Cantor block leaves the domain");
    }
    auto gv = isoGrowth(v);
    auto gh = isoGrowth(h);
    if (gv && gh) {
        std::string note = "growth degree " + std::to_string(gv->degree) + " vs " + std::to_string(gh->degree);
        if (gv->degree < gh->degree) {
            return closed(Answer::Yes, note + ", ratio -> 0");
        }
        if (gv->degree > gh->degree) {
            return closed(Answer::No, note + ", ratio -> infinity");
        }
        return closed(Answer::No, note + ", ratio -> " + fmt(gv->coefficient / gh->coefficient));
    }
    int vUpper = isoDegreeBound(v);
    int hUpper = isoDegreeBound(h);
    if (gh && vUpper < gh->degree) {
        return closed(Answer::Yes, "growth degree at most " + std::to_string(vUpper) + " vs " +
                                       std::to_string(gh->degree) + ", ratio -> 0");
    }
    if (gv && gv->degree >= hUpper) {
        return closed(Answer::No, "growth degree " + std::to_string(gv->degree) + " vs at most " +
                                      std::to_string(hUpper) + ", ratio bounded below");
    }
    Verdict lad = isoLadderRatio(v, h, cfg);
    if (lad.answer == Answer::Inconclusive) {
        Verdict s = sampleSmall(v, h, MeanKind::Iso, cfg);
        if (s.answer == Answer::No) {
            s.ratioTrace = lad.ratioTrace;
            s.notes.insert(s.notes.begin(), lad.notes.begin(), lad.notes.end());
            return s;
        }
    }
    return lad;
}

Verdict smallClosedForm(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg)
{
    if (v.empty()) {
        return closed(Answer::Yes, "empty set");
    }
    switch (kind) {
    case MeanKind::Arith:
        return closed(Answer::No, "a nonempty finite set shifts the arithmetic mean");
    case MeanKind::Lis:
        return v.isFinite() ? closed(Answer::Yes, "finite sets are small")
                            : closed(Answer::No, "infinite sets move an accumulation extreme");
    case MeanKind::Acc: {
        auto lv = level(v);
        auto lh = level(h);
        std::string note = "lev(V) = " + (lv ? std::to_string(*lv) : std::string("inf")) +
                           ", lev(H) = " + std::to_string(*lh);
        return (lv && *lv < *lh) ? closed(Answer::Yes, note) : closed(Answer::No, note);
    }
    case MeanKind::Avg: {
        DimValue dv = dimension(v);
        DimValue dh = dimension(h);
        try {
            std::string note = "dim(V) = " + dv.str() + ", dim(H) = " + dh.str();
            return compareDims(dv, dh) < 0 ? closed(Answer::Yes, note + ", null at dim(H)")
                                           : closed(Answer::No, note + ", positive weight at dim(H)");
        } catch (const IncomparableDimensions& e) {
            Verdict out;
            out.notes.push_back(e.what());
            return out;
        }
    }
    case MeanKind::Iso:
        return smallIso(v, h, cfg);
    }
    return {};
}

} // namespace

// ISO uses the structural domain; ladder convergence is a property of the
// evaluator, not of the set.
bool inClassDomain(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    if (h.empty()) {
        return false;
    }
    if (kind == MeanKind::Iso) {
        return !h.isFinite() && !hasContinuum(h);
    }
    return meanOf(h, kind, cfg.ladder).defined();
}

// A point isolated in a union and outside the union's derived neighbourhood is
// isolated in its own block too, so overlap can only lower the degree.
int isoDegreeBound(const BlockSet& h)
{
    int d = 0;
    for (const auto& b : h.blocks()) {
        if (std::holds_alternative<GeomSeqBlock>(b)) {
            d = std::max(d, 1);
        } else if (const auto* t = std::get_if<TowerBlock>(&b)) {
            d = std::max(d, t->level);
        }
    }
    return d;
}

std::size_t isolatedCount(const BlockSet& h, const Rational& eps) { return isolatedOutside(h, eps).size(); }

std::optional<IsoGrowth> isoGrowth(const BlockSet& h)
{
    if (hasContinuum(h)) {
        return std::nullopt;
    }
    std::vector<const Block*> infinite;
    for (const auto& b : h.blocks()) {
        if (!std::holds_alternative<FiniteBlock>(b)) {
            infinite.push_back(&b);
        }
    }
    for (std::size_t i = 0; i < infinite.size(); ++i) {
        for (std::size_t j = i + 1; j < infinite.size(); ++j) {
            const Block& a = *infinite[i];
            const Block& b = *infinite[j];
            if (blockSup(a) < blockInf(b) || blockSup(b) < blockInf(a)) {
                continue;
            }
            try {
                if (!intersect(BlockSet::fromBlocks({a}), BlockSet::fromBlocks({b})).isFinite()) {
                    return std::nullopt;
                }
            } catch (const SetError&) {
                return std::nullopt;
            }
        }
    }
    IsoGrowth g;
    for (const Block* b : infinite) {
        int k = 1;
        Rational r;
        if (const auto* s = std::get_if<GeomSeqBlock>(b)) {
            r = s->ratio;
        } else {
            const auto& t = std::get<TowerBlock>(*b);
            k = t.level;
            r = t.ratio;
        }
        double c = 1.0 / (factorial(k) * std::pow(std::log(r.inverse().toDouble()), k));
        if (k > g.degree) {
            g.degree = k;
            g.coefficient = 0.0;
            g.terms.clear();
        }
        if (k == g.degree) {
            g.coefficient += c;
            g.terms.push_back({k, r});
        }
    }
    return g;
}

Verdict sampleSmall(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg)
{
    Verdict out;
    out.method = Method::Sampler;
    out.answer = Answer::Inconclusive;
    if (v.empty()) {
        out.notes.push_back("empty set: nothing to sample");
        return out;
    }
    MeanValue ref = meanOf(h, kind, cfg.ladder);
    if (!ref.defined()) {
        out.notes.push_back("K(H) undefined: " + ref.reason());
        return out;
    }
    const double slack = 2.0 * cfg.ladder.tol;
    Rational base = hullMid(h) - hullMid(v);
    Rational d = hullDiam(h);
    std::vector<Rational> xs{base};
    Rational p(1);
    for (int j = 0; j <= 3; ++j, p *= Rational(10)) {
        xs.push_back(base + p * d);
        xs.push_back(base - p * d);
    }
    auto probe = [&](const Rational& x, const BlockSet& s, const char* label) {
        MeanValue val = s.empty() ? MeanValue::undefined("empty set") : meanOf(s, kind, cfg.ladder);
        if (!val.defined() && kind == MeanKind::Iso && val.reason() == "no convergence") {
            out.notes.push_back(std::string("skipped ") + label + " at x = " + x.str() + ": no convergence");
            return false;
        }
        if (sameValue(val, ref, slack)) {
            return false;
        }
        out.evidence.push_back({x, val, ref, label});
        return true;
    };
    for (const auto& x : xs) {
        BlockSet moved = translate(v, x);
        if (probe(x, unite(h, moved), "union")) {
            out.answer = Answer::No;
            return out;
        }
        try {
            if (probe(x, difference(h, moved), "difference")) {
                out.answer = Answer::No;
                return out;
            }
        } catch (const SetError& e) {
            out.notes.push_back("skipped difference at x = " + x.str() + ": " + e.what());
        }
    }
    out.notes.push_back("no witness on the sampling grid");
    return out;
}

Verdict isSmallFor(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg)
{
    requireDomain(h, kind, cfg);
    Verdict out = smallClosedForm(v, h, kind, cfg);
    if (cfg.crossCheck && out.method == Method::ClosedForm) {
        Verdict s = sampleSmall(v, h, kind, cfg);
        out.evidence.insert(out.evidence.end(), s.evidence.begin(), s.evidence.end());
        if (out.answer == Answer::Yes && s.answer == Answer::No) {
            out.notes.push_back("sampler found a counterexample to the closed form");
        } else {
            out.notes.push_back("sampler: " + std::string(toString(s.answer)));
        }
    }
    return out;
}

Verdict isBigFor(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg)
{
    if (!inClassDomain(v, kind, cfg)) {
        return closed(Answer::No, "V is outside the domain, hence not big");
    }
    Verdict out = isSmallFor(h, v, kind, cfg);
    out.notes.insert(out.notes.begin(), "by duality: H small for V");
    return out;
}

Verdict comparable(const BlockSet& h, const BlockSet& v, MeanKind kind, const Config& cfg)
{
    Verdict small = isSmallFor(v, h, kind, cfg);
    Verdict big = isBigFor(v, h, kind, cfg);
    Verdict out;
    out.method = (small.method == Method::ClosedForm && big.method == Method::ClosedForm) ? Method::ClosedForm
                                                                                          : Method::Sampler;
    if (small.answer == Answer::Yes || big.answer == Answer::Yes) {
        out.answer = Answer::No;
    } else if (small.answer == Answer::No && big.answer == Answer::No) {
        out.answer = Answer::Yes;
    } else {
        out.answer = Answer::Inconclusive;
    }
    for (const auto& n : small.notes) {
        out.notes.push_back("small: " + n);
    }
    for (const auto& n : big.notes) {
        out.notes.push_back("big: " + n);
    }
    out.evidence = small.evidence;
    out.evidence.insert(out.evidence.end(), big.evidence.begin(), big.evidence.end());
    return out;
}

Verdict kDisjoint(const BlockSet& h1, const BlockSet& h2, MeanKind kind, bool weak, const Config& cfg)
{
    BlockSet common = intersect(h1, h2);
    if (common.empty()) {
        return closed(Answer::Yes, "empty intersection");
    }
    if (!weak) {
        switch (kind) {
        case MeanKind::Arith:
            return closed(Answer::No, "only the empty set is globally small");
        case MeanKind::Avg: {
            bool null = std::none_of(common.blocks().begin(), common.blocks().end(),
                                     [](const Block& b) { return std::holds_alternative<IntervalBlock>(b); });
            return null ? closed(Answer::Yes, "intersection is Lebesgue-null")
                        : closed(Answer::No, "intersection has positive length");
        }
        case MeanKind::Lis:
        case MeanKind::Acc:
        case MeanKind::Iso:
            return common.isFinite() ? closed(Answer::Yes, "finite intersection")
                                     : closed(Answer::No, "infinite intersection");
        }
    }
    Verdict a = isSmallFor(common, h1, kind, cfg);
    Verdict b = isSmallFor(common, h2, kind, cfg);
    Verdict out;
    out.method = a.method == Method::ClosedForm && b.method == Method::ClosedForm ? Method::ClosedForm
                                                                                : Method::Sampler;
    if (a.answer == Answer::Yes && b.answer == Answer::Yes) {
        out.answer = Answer::Yes;
    } else if (a.answer == Answer::No || b.answer == Answer::No) {
        out.answer = Answer::No;
    } else {
        out.answer = Answer::Inconclusive;
    }
    for (const auto& n : a.notes) {
        out.notes.push_back("H1: " + n);
    }
    for (const auto& n : b.notes) {
        out.notes.push_back("H2: " + n);
    }
    return out;
}

// ---------------------------------------------------------------------------

Rational witnessRatio(const BlockSet& witness, const BlockSet& h2, const Rational& eps)
{
    BlockSet acc = derivedSet(h2);
    std::size_t n = 0;
    for (const auto& p : witness.finitePoints()) {
        if (!withinDistance(acc, p, eps)) {
            ++n;
        }
    }
    std::size_t m = isolatedCount(h2, eps);
    if (m == 0) {
        throw DomainViolation("no isolated points of H2 outside the " + eps.str() + "-neighbourhood");
    }
    return Rational(static_cast<long>(n), static_cast<long>(m));
}

IsoWitness isoWitness(const BlockSet& h2, WitnessKind which, int depth)
{
    if (depth < 2) {
        throw DomainViolation("witness depth must be at least 2");
    }
    if (h2.empty() || h2.isFinite() || hasContinuum(h2)) {
        throw DomainViolation("H2 must be an infinite countable set with isolated points");
    }
    Rational anchor = *bounds(h2).accInf;
    auto m = [&](const Rational& eps) { return isolatedCount(h2, eps); };

    IsoWitness out;
    std::vector<Rational> points;
    if (which == WitnessKind::Big) {
        for (long n = 2; n <= depth; ++n) {
            Rational inner(1, n);
            Rational outer(1, n - 1);
            long count = n * static_cast<long>(m(inner));
            if (count == 0) {
                continue;
            }
            for (long j = 0; j < count; ++j) {
                Rational d = inner + (outer - inner) * Rational(j, count);
                points.push_back(anchor - d);
            }
            out.stageEps.push_back(inner);
        }
    } else {
        points.push_back(anchor - Rational(1, 2));
        long prevK = 1;
        Rational prevRatio(std::numeric_limits<long>::max());
        for (long i = 1; i < depth; ++i) {
            auto ok = [&](long k) {
                std::size_t mk = m(Rational(1, k));
                if (mk == 0) {
                    return false;
                }
                Rational ratio(i, static_cast<long>(mk));
                return ratio < Rational(1, i + 1) && ratio < prevRatio;
            };
            long lo = prevK + 1;
            long hi = lo;
            while (!ok(hi)) {
                if (hi > (std::numeric_limits<long>::max() >> 2)) {
                    throw DomainViolation("isolated points of H2 grow too slowly for a witness");
                }
                lo = hi + 1;
                hi *= 2;
            }
            while (lo < hi) {
                long mid = lo + (hi - lo) / 2;
                if (ok(mid)) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            prevRatio = Rational(i, static_cast<long>(m(Rational(1, hi))));
            prevK = hi;
            out.stageEps.push_back(Rational(1, hi));
            points.push_back(anchor - Rational(1, hi + 1));
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    out.set = BlockSet::fromBlocks({FiniteBlock{std::move(points)}});
    for (const auto& eps : out.stageEps) {
        out.ratios.push_back(witnessRatio(out.set, h2, eps));
    }
    return out;
}

BlockSet buildIsoWitness(const BlockSet& h2, WitnessKind which, int depth) { return isoWitness(h2, which, depth).set; }

} // namespace setmeans
