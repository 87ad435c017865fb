#include "setmeans/weigh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace setmeans {

std::string_view toString(WeightKind k)
{
    switch (k) {
    case WeightKind::InBound:
        return "IN_BOUND";
    case WeightKind::InLimit:
        return "IN_LIMIT";
    case WeightKind::InEquality:
        return "IN_EQUALITY";
    }
    return "?";
}

WeightKind parseWeightKind(std::string_view text)
{
    if (text == "bound") {
        return WeightKind::InBound;
    }
    if (text == "limit") {
        return WeightKind::InLimit;
    }
    if (text == "equality") {
        return WeightKind::InEquality;
    }
    throw ValidationError("unknown weight kind '" + std::string(text) + "'");
}

std::string_view toString(DefectCurve::Trend t)
{
    switch (t) {
    case DefectCurve::Trend::Bounded:
        return "BOUNDED";
    case DefectCurve::Trend::LinearGrowth:
        return "LINEAR_GROWTH";
    case DefectCurve::Trend::ToZero:
        return "TO_ZERO";
    case DefectCurve::Trend::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

using Trend = DefectCurve::Trend;
using Sample = std::pair<Rational, MeanValue>;

Verdict closed(Answer a, std::string note)
{
    Verdict v;
    v.answer = a;
    v.method = Method::ClosedForm;
    v.notes.push_back(std::move(note));
    return v;
}

Verdict yesNo(bool yes, std::string note) { return closed(yes ? Answer::Yes : Answer::No, std::move(note)); }

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Trend sideTrend(const std::vector<Sample>& side, double tol, std::optional<double>& slope)
{
    if (side.empty()) {
        return Trend::ToZero;
    }
    bool allExact = std::all_of(side.begin(), side.end(), [](const Sample& s) { return s.second.isExact(); });
    std::size_t n = side.size();
    if (n >= 3) {
        const auto& [x1, d1] = side[n - 3];
        const auto& [x2, d2] = side[n - 2];
        const auto& [x3, d3] = side[n - 1];
        bool affine;
        double s2;
        if (allExact) {
            Rational r1 = (d2.value() - d1.value()) / (x2 - x1);
            Rational r2 = (d3.value() - d2.value()) / (x3 - x2);
            affine = r1 == r2;
            s2 = r2.toDouble();
        } else {
            double s1 = (d2.toDouble() - d1.toDouble()) / (x2 - x1).toDouble();
            s2 = (d3.toDouble() - d2.toDouble()) / (x3 - x2).toDouble();
            double noise = 4.0 * tol / std::fabs((x3 - x2).toDouble()) + 4.0 * tol / std::fabs((x2 - x1).toDouble());
            affine = std::fabs(s2 - s1) <= 1e-6 * std::max(std::fabs(s1), std::fabs(s2)) + noise;
        }
        if (affine && std::fabs(s2) > 10.0 * tol) {
            slope = s2;
            return Trend::LinearGrowth;
        }
    }
    bool small = std::all_of(side.begin(), side.end(),
                             [&](const Sample& s) { return std::fabs(s.second.toDouble()) < tol; });
    if (small) {
        return Trend::ToZero;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(std::fabs(side[i].second.toDouble()) < std::fabs(side[i - 1].second.toDouble()))) {
            decreasing = false;
        }
    }
    if (decreasing && std::fabs(side.back().second.toDouble()) < tol) {
        return Trend::ToZero;
    }
    return Trend::Bounded;
}

Rational hullDiameter(const std::vector<BlockSet>& sets)
{
    std::optional<Rational> lo, hi;
    for (const auto& s : sets) {
        if (s.empty()) {
            continue;
        }
        Bounds b = bounds(s);
        lo = lo ? min(*lo, b.inf) : b.inf;
        hi = hi ? max(*hi, b.sup) : b.sup;
    }
    return lo ? *hi - *lo : Rational(0);
}

void requireDomain(const BlockSet& h, MeanKind kind, const Config& cfg)
{
    if (!inClassDomain(h, kind, cfg)) {
        throw DomainViolation("set is outside the domain of " + std::string(toString(kind)));
    }
}

bool lessValue(const MeanValue& a, const MeanValue& b)
{
    if (a.isExact() && b.isExact()) {
        return a.value() < b.value();
    }
    return a.toDouble() + a.tol() < b.toDouble() - b.tol();
}

// K-limsup(h1) < K-liminf(h2) + x or K-limsup(h2) + x < K-liminf(h1).
bool separated(const KBounds& b1, const KBounds& b2, const Rational& x)
{
    if (!b1.kLiminf.defined() || !b1.kLimsup.defined() || !b2.kLiminf.defined() || !b2.kLimsup.defined()) {
        return false;
    }
    return lessValue(b1.kLimsup, b2.kLiminf + x) || lessValue(b2.kLimsup + x, b1.kLiminf);
}

std::optional<Verdict> closedForm(const BlockSet& h1, const BlockSet& h2, MeanKind kind, WeightKind wkind)
{
    switch (kind) {
    case MeanKind::Arith: {
        std::size_t n = h1.cardinality(), m = h2.cardinality();
        return yesNo(n == m, "|H1| = " + std::to_string(n) + ", |H2| = " + std::to_string(m));
    }
    case MeanKind::Avg: {
        DimValue s1 = dimension(h1), s2 = dimension(h2);
        int c;
        try {
            c = compareDims(s1, s2);
        } catch (const IncomparableDimensions&) {
            return std::nullopt;
        }
        if (c != 0) {
            return closed(Answer::No, "dimensions " + s1.str() + " and " + s2.str() + " differ");
        }
        if (s1.kind == DimValue::Kind::Zero) {
            std::size_t n = h1.cardinality(), m = h2.cardinality();
            return yesNo(n == m, "0-sets with |H1| = " + std::to_string(n) + ", |H2| = " + std::to_string(m));
        }
        auto w = compareWeights(measureAt(h1, s1), measureAt(h2, s1));
        if (!w) {
            return std::nullopt;
        }
        return yesNo(*w == 0, "measures at dimension " + s1.str() + (*w == 0 ? " agree" : " differ"));
    }
    case MeanKind::Acc: {
        int l1 = *level(h1), l2 = *level(h2);
        if (l1 != l2) {
            return closed(Answer::No, "levels " + std::to_string(l1) + " and " + std::to_string(l2));
        }
        std::size_t n = derivedSet(h1, l1).cardinality();
        std::size_t m = derivedSet(h2, l2).cardinality();
        return yesNo(n == m, "level " + std::to_string(l1) + " with top counts " + std::to_string(n) + " and " +
                                 std::to_string(m));
    }
    case MeanKind::Lis: {
        if (wkind == WeightKind::InBound) {
            return closed(Answer::Yes, "always bounded for infinite sets");
        }
        Bounds b1 = bounds(h1), b2 = bounds(h2);
        Rational d1 = *b1.accSup - *b1.accInf;
        Rational d2 = *b2.accSup - *b2.accInf;
        return yesNo(d1 == d2, "accumulation diameters " + d1.str() + " and " + d2.str());
    }
    case MeanKind::Iso: {
        auto g1 = isoGrowth(h1), g2 = isoGrowth(h2);
        if (g1 && g2) {
            auto same = sameIsoGrowth(*g1, *g2);
            if (!same) {
                return std::nullopt;
            }
            return yesNo(*same, "growth " + std::to_string(g1->degree) + ":" + fmt(g1->coefficient) + " vs " +
                                    std::to_string(g2->degree) + ":" + fmt(g2->coefficient));
        }
        if ((g2 && isoDegreeBound(h1) < g2->degree) || (g1 && isoDegreeBound(h2) < g1->degree)) {
            return closed(Answer::No, "growth degrees differ, ratio -> 0 or infinity");
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

// Smallest g with g^j = c for some integer j >= 1.
Rational minimalRoot(const Rational& c)
{
    for (unsigned long j = 64; j >= 2; --j) {
        mpz_class p, q;
        if (mpz_root(p.get_mpz_t(), c.num().get_mpz_t(), j) != 0 &&
            mpz_root(q.get_mpz_t(), c.den().get_mpz_t(), j) != 0) {
            return Rational::fromInts(p, q);
        }
    }
    return c;
}

} // namespace

std::optional<bool> sameIsoGrowth(const IsoGrowth& a, const IsoGrowth& b)
{
    if (a.degree != b.degree) {
        return false;
    }
    if (a.degree == 0) {
        return true;
    }
    // Exact route: all ratios are integer powers of one base g, so each term is
    // 1/(k!·(e·ln g)^k) and the coefficients compare as sums of 1/e^k.
    Rational g = minimalRoot(a.terms.front().second.inverse());
    Rational sa(0), sb(0);
    bool exact = true;
    auto accumulate = [&](const IsoGrowth& gr, Rational& sum) {
        for (const auto& [k, r] : gr.terms) {
            auto e = integerLog(r.inverse(), g);
            if (!e || *e <= 0) {
                exact = false;
                return;
            }
            sum += Rational(1, *e).pow(static_cast<unsigned long>(k));
        }
    };
    accumulate(a, sa);
    accumulate(b, sb);
    if (exact) {
        return sa == sb;
    }
    double scale = std::max(std::fabs(a.coefficient), std::fabs(b.coefficient));
    if (std::fabs(a.coefficient - b.coefficient) > 1e-12 * scale) {
        return false;
    }
    return std::nullopt;
}

MeanValue weightDefect(const BlockSet& h1, const BlockSet& h2, MeanKind kind, const Rational& x, const Config& cfg)
{
    BlockSet moved = translate(h2, x);
    MeanValue u = meanOf(unite(h1, moved), kind, cfg.ladder);
    MeanValue k1 = meanOf(h1, kind, cfg.ladder);
    MeanValue k2 = meanOf(moved, kind, cfg.ladder);
    for (const MeanValue* v : {&u, &k1, &k2}) {
        if (!v->defined()) {
            return *v;
        }
    }
    return u - (k1 + k2) * Rational(1, 2);
}

std::vector<Rational> shiftGrid(const std::vector<BlockSet>& sets, const Config& cfg)
{
    Rational base = hullDiameter(sets) + Rational(1);
    std::vector<Rational> xs;
    Rational p(1);
    for (int j = 0; j <= cfg.xmax; ++j, p *= Rational(10)) {
        xs.push_back(base * p);
        xs.push_back(-(base * p));
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

Trend classifyTrend(const std::vector<Sample>& samples, double tol, std::optional<double>* slope)
{
    if (std::any_of(samples.begin(), samples.end(), [](const Sample& s) { return !s.second.defined(); })) {
        return Trend::Inconclusive;
    }
    std::vector<Sample> pos, neg;
    for (const auto& s : samples) {
        if (s.first.sign() > 0) {
            pos.push_back(s);
        } else if (s.first.sign() < 0) {
            neg.push_back(s);
        }
    }
    std::reverse(neg.begin(), neg.end()); // by increasing |x|
    std::optional<double> sp, sn;
    Trend tp = sideTrend(pos, tol, sp);
    Trend tn = sideTrend(neg, tol, sn);
    if (slope) {
        *slope = sp ? sp : sn;
    }
    if (tp == Trend::LinearGrowth || tn == Trend::LinearGrowth) {
        return Trend::LinearGrowth;
    }
    if (tp == Trend::ToZero && tn == Trend::ToZero) {
        return Trend::ToZero;
    }
    return Trend::Bounded;
}

DefectCurve defectCurve(const BlockSet& h1, const BlockSet& h2, MeanKind kind, const Config& cfg)
{
    DefectCurve c;
    for (const auto& x : shiftGrid({h1, h2}, cfg)) {
        c.samples.push_back({x, weightDefect(h1, h2, kind, x, cfg)});
    }
    c.trend = classifyTrend(c.samples, cfg.ladder.tol, &c.slope);
    return c;
}

Verdict equalWeightSampled(const BlockSet& h1, const BlockSet& h2, MeanKind kind, WeightKind wkind,
                           const Config& cfg)
{
    DefectCurve c = defectCurve(h1, h2, kind, cfg);
    Verdict out;
    out.method = Method::Sampler;
    out.answer = Answer::Inconclusive;
    out.notes.push_back("defect trend " + std::string(toString(c.trend)));
    for (const auto& [x, d] : c.samples) {
        out.evidence.push_back({x, d, MeanValue::exact(Rational(0)), "defect"});
    }
    switch (wkind) {
    case WeightKind::InBound:
        if (c.trend == Trend::LinearGrowth) {
            out.answer = Answer::No;
        }
        break;
    case WeightKind::InLimit:
        if (c.trend == Trend::LinearGrowth || c.trend == Trend::Bounded) {
            out.answer = Answer::No;
        }
        break;
    case WeightKind::InEquality: {
        KBounds b1 = kBounds(h1, kind, cfg.ladder);
        KBounds b2 = kBounds(h2, kind, cfg.ladder);
        double slack = 2.0 * cfg.ladder.tol;
        for (const auto& [x, d] : c.samples) {
            if (!d.defined() || !separated(b1, b2, x)) {
                continue;
            }
            if (!sameValue(d, MeanValue::exact(Rational(0)), slack)) {
                out.answer = Answer::No;
                out.notes.push_back("nonzero defect at separated x = " + x.str());
                break;
            }
        }
        break;
    }
    }
    return out;
}

Verdict equalWeight(const BlockSet& h1, const BlockSet& h2, MeanKind kind, WeightKind wkind, const Config& cfg)
{
    requireDomain(h1, kind, cfg);
    requireDomain(h2, kind, cfg);
    Rational gap = bounds(h2).inf - bounds(h1).inf;
    if (translate(h1, gap) == h2 && meanOf(h1, kind, cfg.ladder).defined()) {
        Verdict v;
        v.answer = Answer::Yes;
        v.method = Method::ClosedForm;
        v.notes.push_back("H2 = H1 + " + gap.str() + ", self-shift invariance");
        return v;
    }
    if (auto v = closedForm(h1, h2, kind, wkind)) {
        if (cfg.crossCheck) {
            Verdict s = equalWeightSampled(h1, h2, kind, wkind, cfg);
            v->evidence = s.evidence;
            v->notes.push_back("sampler: " + std::string(toString(s.answer)));
        }
        return *v;
    }
    return equalWeightSampled(h1, h2, kind, wkind, cfg);
}

DefectCurve transitivityProbe(const BlockSet& h1, const BlockSet& h2, const BlockSet& h3, MeanKind kind,
                              const Config& cfg)
{
    DefectCurve c;
    for (const auto& x : shiftGrid({h1, h2, h3}, cfg)) {
        BlockSet b = translate(h2, x);
        BlockSet d = translate(h3, x * Rational(2));
        MeanValue parts[] = {
            meanOf(unite(h1, b), kind, cfg.ladder),
            meanOf(unite(b, d), kind, cfg.ladder),
            meanOf(unite(h1, d), kind, cfg.ladder),
            meanOf(b, kind, cfg.ladder),
        };
        auto bad = std::find_if(std::begin(parts), std::end(parts), [](const MeanValue& m) { return !m.defined(); });
        if (bad != std::end(parts)) {
            c.samples.push_back({x, *bad});
            continue;
        }
        c.samples.push_back({x, parts[0] + parts[1] - (parts[2] + parts[3])});
    }
    c.trend = classifyTrend(c.samples, cfg.ladder.tol, &c.slope);
    return c;
}

} // namespace setmeans
