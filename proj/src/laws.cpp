#include "setmeans/laws.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <random>

namespace setmeans {

namespace {

constexpr std::array<std::string_view, 10> kLawNames = {
    "INTERNAL",        "STRONG_INTERNAL",  "MONOTONE",        "STRONG_MONOTONE",      "DISJOINT_MONOTONE",
    "UNION_MONOTONE",  "D_MONOTONE",       "SHIFT_INVARIANT", "SELF_SHIFT_INVARIANT", "PART_SHIFT_INVARIANT",
};

constexpr std::array<std::string_view, 6> kProfileNames = {"finite",    "sequences", "towers",
                                                           "intervals", "cantor",    "mixed"};

std::string canonicalName(std::string_view s)
{
    std::string out;
    for (char c : s) {
        out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

// Draws are taken with plain modular reduction so corpora do not depend on the
// standard library's distribution implementations.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(int num, int den) { return integer(0, den - 1) < num; }

    Rational rational(long lo, long hi, long maxDen)
    {
        long den = integer(1, maxDen);
        return Rational(integer(lo * den, hi * den), den);
    }

    Rational positive(long hi, long maxDen)
    {
        long den = integer(1, maxDen);
        return Rational(integer(1, hi * den), den);
    }

    Rational nonzero(long lo, long hi, long maxDen)
    {
        Rational r = rational(lo, hi, maxDen);
        return r.isZero() ? Rational(1, 2) : r;
    }

    template <class T, std::size_t N>
    const T& pick(const std::array<T, N>& xs)
    {
        return xs[static_cast<std::size_t>(integer(0, static_cast<long>(N) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

SetExpr genFinite(Draw& d)
{
    std::vector<Rational> pts;
    long n = d.integer(1, 6);
    for (long i = 0; i < n; ++i) {
        pts.push_back(d.rational(-10, 10, 8));
    }
    return finite(std::move(pts));
}

Rational scaleOf(Draw& d)
{
    Rational s = d.positive(4, 2);
    return d.chance(1, 2) ? s : -s;
}

SetExpr genSequences(Draw& d)
{
    static const std::array<Rational, 4> ratios = {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)};
    std::vector<SetExpr> parts;
    long n = d.integer(1, 3);
    bool common = d.chance(1, 2);
    Rational r0 = d.pick(ratios);
    for (long i = 0; i < n; ++i) {
        parts.push_back(geomSeq(d.rational(-10, 10, 4), scaleOf(d), common ? r0 : d.pick(ratios)));
    }
    if (d.chance(1, 3)) {
        parts.push_back(genFinite(d));
    }
    return SetExpr::unite(std::move(parts));
}

SetExpr genTowers(Draw& d)
{
    static const std::array<Rational, 3> ratios = {Rational(1, 4), Rational(1, 5), Rational(1, 7)};
    static const std::array<Rational, 3> scales = {Rational(1), Rational(1, 2), Rational(2)};
    int lvl = d.chance(1, 20) ? 3 : 2;
    Rational ratio = d.pick(ratios);
    Rational scale = d.pick(scales);
    std::vector<SetExpr> parts{tower(lvl, d.rational(-10, 10, 4), ratio, d.chance(1, 2) ? scale : -scale)};
    if (d.chance(1, 3)) {
        parts.push_back(d.chance(1, 2) ? genFinite(d) : geomSeq(d.rational(-10, 10, 4), scaleOf(d), ratio));
    }
    return SetExpr::unite(std::move(parts));
}

SetExpr genIntervals(Draw& d)
{
    std::vector<SetExpr> parts;
    Rational cursor = d.rational(-10, 5, 4);
    long n = d.integer(1, 4);
    for (long i = 0; i < n; ++i) {
        Rational lo = cursor + d.positive(4, 8);
        Rational hi = lo + d.positive(5, 8);
        parts.push_back(interval(lo, hi));
        cursor = hi;
    }
    if (d.chance(1, 4)) {
        parts.push_back(genFinite(d));
    }
    return SetExpr::unite(std::move(parts));
}

SetExpr genCantor(Draw& d)
{
    struct Shape {
        int pieces;
        Rational ratio;
    };
    static const std::array<Shape, 4> shapes = {Shape{2, Rational(1, 3)}, Shape{2, Rational(1, 4)},
                                                Shape{3, Rational(1, 4)}, Shape{3, Rational(1, 5)}};
    const Shape& s = d.pick(shapes);
    Rational lo = d.rational(-10, 6, 4);
    Rational hi = lo + d.positive(6, 2);
    std::vector<SetExpr> parts{cantor(lo, hi, s.pieces, s.ratio)};
    if (d.chance(1, 3)) {
        Rational gap = d.positive(3, 4);
        if (d.chance(1, 2)) {
            parts.push_back(cantor(hi + gap, hi + gap + (hi - lo), s.pieces, s.ratio));
        } else {
            parts.push_back(interval(hi + gap, hi + gap + d.positive(3, 4)));
        }
    }
    return SetExpr::unite(std::move(parts));
}

SetExpr genProfile(Draw& d, Profile p)
{
    switch (p) {
    case Profile::Finite:
        return genFinite(d);
    case Profile::Sequences:
        return genSequences(d);
    case Profile::Towers:
        return genTowers(d);
    case Profile::Intervals:
        return genIntervals(d);
    case Profile::Cantor:
        return genCantor(d);
    case Profile::Mixed:
        break;
    }
    auto base = static_cast<Profile>(d.integer(0, 4));
    SetExpr e = genProfile(d, base);
    if (base != Profile::Cantor && d.chance(1, 5)) {
        auto other = static_cast<Profile>(d.integer(0, 3));
        e = SetExpr::unite({std::move(e), genProfile(d, other)});
    }
    if (d.chance(1, 5)) {
        e = SetExpr::translate(std::move(e), d.rational(-20, 20, 6));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

enum class Cmp { Less, Equal, Greater, Unknown };

class Judge {
public:
    using Cache = std::map<std::string, MeanValue>;

    Judge(MeanKind kind, const Config& cfg, Cache* cache)
        : kind_(kind), cfg_(cfg), slack_(2.0 * cfg.ladder.tol), cache_(cache)
    {
    }

    /// Once one set is outside the domain the trial is skipped, so later
    /// evaluations are not performed.
    MeanValue mean(const BlockSet& h, const std::string& label)
    {
        if (!undefinedReason.empty()) {
            return MeanValue::undefined("not evaluated");
        }
        std::string key = cache_ ? describe(h) : std::string();
        auto hit = cache_ ? cache_->find(key) : Cache::iterator();
        MeanValue m;
        if (cache_ && hit != cache_->end()) {
            m = hit->second;
        } else {
            try {
                m = h.empty() ? MeanValue::undefined("empty set") : meanOf(h, kind_, cfg_.ladder);
            } catch (const SetError& e) {
                m = MeanValue::undefined(e.what());
            }
            if (cache_) {
                cache_->emplace(std::move(key), m);
            }
        }
        observed.push_back("K(" + label + ") = " + m.str());
        if (!m.defined() && undefinedReason.empty()) {
            undefinedReason = label + " outside the domain: " + m.reason();
        }
        return m;
    }

    Cmp cmp(const MeanValue& a, const MeanValue& b) const
    {
        if (a.isExact() && b.isExact()) {
            const Rational &x = a.value(), &y = b.value();
            return x < y ? Cmp::Less : y < x ? Cmp::Greater : Cmp::Equal;
        }
        double diff = a.toDouble() - b.toDouble();
        if (std::fabs(diff) <= slack_) {
            return Cmp::Unknown;
        }
        return diff < 0 ? Cmp::Less : Cmp::Greater;
    }

    std::vector<std::string> observed;
    std::string undefinedReason;

private:
    MeanKind kind_;
    Config cfg_;
    double slack_;
    Cache* cache_;
};

bool atMost(Cmp c) { return c == Cmp::Less || c == Cmp::Equal; }
bool atLeast(Cmp c) { return c == Cmp::Greater || c == Cmp::Equal; }
Cmp flip(Cmp c) { return c == Cmp::Less ? Cmp::Greater : c == Cmp::Greater ? Cmp::Less : c; }

// Conclusion "a <= b" (strict when `strict`) is violated only when it
// certainly fails.
bool violatesLe(Cmp c, bool strict) { return c == Cmp::Greater || (strict && c == Cmp::Equal); }

TrialResult skip(std::string note, std::vector<std::string> observed = {})
{
    return {TrialOutcome::Skipped, std::move(observed), std::move(note)};
}

TrialResult verdict(bool violated, Judge& j)
{
    return {violated ? TrialOutcome::Violated : TrialOutcome::Held, std::move(j.observed), {}};
}

MeanValue exactValue(const Rational& r) { return MeanValue::exact(r); }

void requireArity(const LawInstance& inst, std::size_t sets, std::size_t shifts)
{
    if (inst.sets.size() != sets || inst.shifts.size() != shifts) {
        throw ValidationError("law instance needs " + std::to_string(sets) + " sets and " + std::to_string(shifts) +
                              " shifts");
    }
}

std::size_t setsFor(LawKind law)
{
    switch (law) {
    case LawKind::Internal:
    case LawKind::StrongInternal:
    case LawKind::ShiftInvariant:
    case LawKind::SelfShiftInvariant:
        return 1;
    case LawKind::UnionMonotone:
        return 3;
    default:
        return 2;
    }
}

std::size_t shiftsFor(LawKind law)
{
    switch (law) {
    case LawKind::Internal:
    case LawKind::StrongInternal:
        return 0;
    case LawKind::UnionMonotone:
    case LawKind::DMonotone:
        return 2;
    default:
        return 1;
    }
}

TrialResult trialMonotone(Judge& j, const BlockSet& h1, const BlockSet& h2, bool strong)
{
    Bounds b1 = bounds(h1), b2 = bounds(h2);
    if (strong) {
        if (!b1.accSup || !b2.accInf) {
            return skip("a set has no accumulation point");
        }
        if (*b1.accSup > *b2.accInf) {
            return skip("limsup H1 > liminf H2");
        }
    } else if (b1.sup > b2.inf) {
        return skip("sup H1 > inf H2");
    }
    MeanValue k1 = j.mean(h1, "H1"), k2 = j.mean(h2, "H2"), ku = j.mean(unite(h1, h2), "H1 U H2");
    if (!j.undefinedReason.empty()) {
        return skip(j.undefinedReason, j.observed);
    }
    return verdict(violatesLe(j.cmp(k1, ku), false) || violatesLe(j.cmp(ku, k2), false), j);
}

TrialResult trialDisjointMonotone(Judge& j, const BlockSet& h1, const BlockSet& h2)
{
    if (!disjoint(h1, h2)) {
        return skip("H1 and H2 are not certainly disjoint");
    }
    MeanValue k1 = j.mean(h1, "H1"), k2 = j.mean(h2, "H2"), ku = j.mean(unite(h1, h2), "H1 U H2");
    if (!j.undefinedReason.empty()) {
        return skip(j.undefinedReason, j.observed);
    }
    Cmp order = j.cmp(k1, k2);
    if (order == Cmp::Unknown) {
        return skip("K(H1) and K(H2) are not separated", j.observed);
    }
    const MeanValue& lo = order == Cmp::Greater ? k2 : k1;
    const MeanValue& hi = order == Cmp::Greater ? k1 : k2;
    return verdict(violatesLe(j.cmp(lo, ku), false) || violatesLe(j.cmp(ku, hi), false), j);
}

TrialResult trialUnionMonotone(Judge& j, const BlockSet& a, const BlockSet& b, const BlockSet& c)
{
    if (!disjoint(b, c)) {
        return skip("B and C are not certainly disjoint");
    }
    BlockSet ab = unite(a, b), ac = unite(a, c);
    MeanValue ka = j.mean(a, "A"), kab = j.mean(ab, "A U B"), kac = j.mean(ac, "A U C");
    MeanValue kabc = j.mean(unite(ab, c), "A U B U C");
    if (!j.undefinedReason.empty()) {
        return skip(j.undefinedReason, j.observed);
    }
    Cmp p = j.cmp(ka, kab), q = j.cmp(ka, kac);
    if (p == Cmp::Unknown || q == Cmp::Unknown) {
        return skip("a hypothesis comparison is not separated", j.observed);
    }
    Cmp r = j.cmp(ka, kabc);
    bool applies = false, violated = false;
    if (atMost(p) && atMost(q)) {
        applies = true;
        violated = violated || violatesLe(r, p == Cmp::Less || q == Cmp::Less);
    }
    if (atLeast(p) && atLeast(q)) {
        applies = true;
        violated = violated || violatesLe(flip(r), p == Cmp::Greater || q == Cmp::Greater);
    }
    if (!applies) {
        return skip("K(A U B) and K(A U C) lie on opposite sides of K(A)", j.observed);
    }
    return verdict(violated, j);
}

TrialResult trialDMonotone(Judge& j, const BlockSet& l, const BlockSet& b, const Rational& x)
{
    if (x.isZero()) {
        return skip("x = 0");
    }
    BlockSet lb = unite(l, b), bx = translate(b, x);
    if (!disjoint(l, b) || !disjoint(lb, bx)) {
        return skip("disjointness hypotheses not certain");
    }
    MeanValue kl = j.mean(l, "L"), klb = j.mean(lb, "L U B");
    MeanValue klbx = j.mean(unite(lb, bx), "L U B U (B+x)");
    j.mean(b, "B"); // B must lie in Dom(K) as well
    if (!j.undefinedReason.empty()) {
        return skip(j.undefinedReason, j.observed);
    }
    Cmp p = j.cmp(kl, klb);
    if (x.sign() > 0 && p == Cmp::Less) {
        return verdict(violatesLe(j.cmp(klb, klbx), true), j);
    }
    if (x.sign() < 0 && p == Cmp::Greater) {
        return verdict(violatesLe(j.cmp(klbx, klb), true), j);
    }
    return skip("premise K(L) vs K(L U B) does not match the sign of x", j.observed);
}

TrialResult trialPartShift(Judge& j, const BlockSet& h1, const BlockSet& h2, const Rational& x)
{
    if (x.isZero()) {
        return skip("x = 0");
    }
    BlockSet h2x = translate(h2, x);
    if (!disjoint(h1, h2) || !disjoint(h1, h2x)) {
        return skip("disjointness hypotheses not certain");
    }
    MeanValue k0 = j.mean(unite(h1, h2), "H1 U H2"), kx = j.mean(unite(h1, h2x), "H1 U (H2+x)");
    if (!j.undefinedReason.empty()) {
        return skip(j.undefinedReason, j.observed);
    }
    Cmp s = j.cmp(kx, k0);
    bool signBad = x.sign() > 0 ? (s == Cmp::Less || s == Cmp::Equal) : (s == Cmp::Greater || s == Cmp::Equal);
    MeanValue diff = kx - k0;
    Rational ax = x.abs();
    bool sizeBad = j.cmp(diff, exactValue(ax)) == Cmp::Greater || j.cmp(diff, exactValue(-ax)) == Cmp::Less;
    return verdict(signBad || sizeBad, j);
}

TrialResult dispatch(MeanKind mean, LawKind law, const LawInstance& inst, const Config& cfg, Judge::Cache* cache)
{
    requireArity(inst, setsFor(law), shiftsFor(law));
    std::vector<BlockSet> hs;
    for (const auto& e : inst.sets) {
        hs.push_back(normalize(e));
        if (hs.back().empty()) {
            return skip("empty input set");
        }
    }
    Judge j(mean, cfg, cache);
    switch (law) {
    case LawKind::Internal:
    case LawKind::StrongInternal: {
        Bounds b = bounds(hs[0]);
        std::optional<Rational> lo = b.inf, hi = b.sup;
        if (law == LawKind::StrongInternal) {
            lo = b.accInf;
            hi = b.accSup;
            if (!lo || !hi) {
                return skip("H has no accumulation point");
            }
        }
        MeanValue k = j.mean(hs[0], "H");
        if (!k.defined()) {
            return skip(j.undefinedReason, j.observed);
        }
        return verdict(violatesLe(j.cmp(exactValue(*lo), k), false) || violatesLe(j.cmp(k, exactValue(*hi)), false), j);
    }
    case LawKind::Monotone:
    case LawKind::StrongMonotone:
        return trialMonotone(j, hs[0], translate(hs[1], inst.shifts[0]), law == LawKind::StrongMonotone);
    case LawKind::DisjointMonotone:
        return trialDisjointMonotone(j, hs[0], translate(hs[1], inst.shifts[0]));
    case LawKind::UnionMonotone:
        return trialUnionMonotone(j, hs[0], translate(hs[1], inst.shifts[0]), translate(hs[2], inst.shifts[1]));
    case LawKind::DMonotone:
        return trialDMonotone(j, hs[0], translate(hs[1], inst.shifts[0]), inst.shifts[1]);
    case LawKind::ShiftInvariant: {
        const Rational& x = inst.shifts[0];
        MeanValue k = j.mean(hs[0], "H"), kx = j.mean(translate(hs[0], x), "H+x");
        if (!j.undefinedReason.empty()) {
            return skip(j.undefinedReason, j.observed);
        }
        Cmp c = j.cmp(kx, k + x);
        return verdict(c == Cmp::Less || c == Cmp::Greater, j);
    }
    case LawKind::SelfShiftInvariant: {
        const Rational& x = inst.shifts[0];
        Bounds b = bounds(hs[0]);
        if (x.abs() <= b.sup - b.inf) {
            return skip("|x| does not exceed the diameter of H");
        }
        MeanValue k = j.mean(hs[0], "H"), kx = j.mean(unite(hs[0], translate(hs[0], x)), "H U (H+x)");
        if (!j.undefinedReason.empty()) {
            return skip(j.undefinedReason, j.observed);
        }
        Cmp c = j.cmp(kx, k + x / Rational(2));
        return verdict(c == Cmp::Less || c == Cmp::Greater, j);
    }
    case LawKind::PartShiftInvariant:
        return trialPartShift(j, hs[0], hs[1], inst.shifts[0]);
    }
    return skip("unknown law");
}

TrialResult guardedTrial(MeanKind mean, LawKind law, const LawInstance& inst, const Config& cfg, Judge::Cache* cache)
{
    try {
        return dispatch(mean, law, inst, cfg, cache);
    } catch (const ValidationError&) {
        throw;
    } catch (const SetError& e) {
        return skip(std::string("not representable: ") + e.what());
    }
}

std::vector<std::string> renderInputs(LawKind law, const LawInstance& inst)
{
    static const std::array<const char*, 3> pairNames = {"H1", "H2", ""};
    static const std::array<const char*, 3> unionNames = {"A", "B", "C"};
    static const std::array<const char*, 2> dNames = {"L", "B"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        std::string name = setsFor(law) == 1          ? "H"
                           : law == LawKind::UnionMonotone ? unionNames[i]
                           : law == LawKind::DMonotone     ? dNames[i]
                                                           : pairNames[i];
        std::string text;
        try {
            text = describe(normalize(inst.sets[i]));
        } catch (const SetError& e) {
            text = std::string("<") + e.what() + ">";
        }
        out.push_back(name + " = " + text);
    }
    for (std::size_t i = 0; i < inst.shifts.size(); ++i) {
        std::string name = "x";
        if (law == LawKind::UnionMonotone) {
            name = i == 0 ? "shift(B)" : "shift(C)";
        } else if (law == LawKind::DMonotone && i == 0) {
            name = "shift(B)";
        } else if (law == LawKind::Monotone || law == LawKind::StrongMonotone || law == LawKind::DisjointMonotone) {
            name = "shift(H2)";
        }
        out.push_back(name + " = " + inst.shifts[i].str());
    }
    return out;
}

} // namespace

std::string_view toString(LawKind k) { return kLawNames[static_cast<std::size_t>(k)]; }

std::optional<LawKind> parseLawKind(std::string_view s)
{
    std::string name = canonicalName(s);
    for (std::size_t i = 0; i < kLawNames.size(); ++i) {
        if (name == kLawNames[i]) {
            return static_cast<LawKind>(i);
        }
    }
    return std::nullopt;
}

const std::vector<LawKind>& allLaws()
{
    static const std::vector<LawKind> laws = [] {
        std::vector<LawKind> v;
        for (std::size_t i = 0; i < kLawNames.size(); ++i) {
            v.push_back(static_cast<LawKind>(i));
        }
        return v;
    }();
    return laws;
}

std::string_view toString(Profile p) { return kProfileNames[static_cast<std::size_t>(p)]; }

std::optional<Profile> parseProfile(std::string_view s)
{
    std::string name = canonicalName(s);
    for (std::size_t i = 0; i < kProfileNames.size(); ++i) {
        if (name == canonicalName(kProfileNames[i])) {
            return static_cast<Profile>(i);
        }
    }
    return std::nullopt;
}

std::vector<SetExpr> genCorpus(std::uint64_t seed, int count, Profile profile)
{
    if (count < 1) {
        throw ValidationError("corpus size must be at least 1");
    }
    Draw d(seed);
    std::vector<SetExpr> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        SetExpr e = genProfile(d, profile);
        try {
            if (!normalize(e).empty()) {
                out.push_back(std::move(e));
            }
        } catch (const SetError&) {
            // Redraw; the generator never emits an expression it cannot normalize.
        }
    }
    return out;
}

std::vector<LawInstance> lawInstances(LawKind law, const std::vector<SetExpr>& corpus)
{
    std::vector<LawInstance> out;
    const std::size_t n = corpus.size();
    if (n == 0) {
        return out;
    }
    Draw d(0x1a3c5e7ULL + static_cast<std::uint64_t>(law));
    auto at = [&](std::size_t i) { return corpus[i % n]; };
    for (std::size_t i = 0; i < n; ++i) {
        switch (law) {
        case LawKind::Internal:
        case LawKind::StrongInternal:
            out.push_back({{at(i)}, {}});
            break;
        case LawKind::ShiftInvariant:
            out.push_back({{at(i)}, {d.nonzero(-50, 50, 8)}});
            out.push_back({{at(i)}, {d.nonzero(-5, 5, 16)}});
            break;
        case LawKind::SelfShiftInvariant: {
            Bounds b = bounds(normalize(at(i)));
            Rational x = b.sup - b.inf + d.positive(3, 8);
            out.push_back({{at(i)}, {x}});
            out.push_back({{at(i)}, {-(x + d.positive(20, 4))}});
            break;
        }
        case LawKind::Monotone:
        case LawKind::StrongMonotone: {
            Bounds b1 = bounds(normalize(at(i))), b2 = bounds(normalize(at(i + 1)));
            Rational gap = d.chance(1, 4) ? Rational(0) : d.positive(4, 4);
            Rational x = b1.sup - b2.inf + gap;
            if (law == LawKind::StrongMonotone && b1.accSup && b2.accInf) {
                x = *b1.accSup - *b2.accInf + gap;
            }
            out.push_back({{at(i), at(i + 1)}, {x}});
            break;
        }
        case LawKind::DisjointMonotone:
        case LawKind::PartShiftInvariant:
            out.push_back({{at(i), at(i + 1)}, {d.nonzero(-20, 20, 8)}});
            break;
        case LawKind::UnionMonotone:
            out.push_back({{at(i), at(i + 1), at(i + 2)}, {d.rational(-20, 20, 8), d.rational(-20, 20, 8)}});
            break;
        case LawKind::DMonotone:
            out.push_back({{at(i), at(i + 1)}, {d.rational(-20, 20, 8), d.nonzero(-30, 30, 8)}});
            break;
        }
    }
    return out;
}

TrialResult runTrial(MeanKind mean, LawKind law, const LawInstance& inst, const Config& cfg)
{
    return guardedTrial(mean, law, inst, cfg, nullptr);
}

LawReport checkLaw(MeanKind mean, LawKind law, const std::vector<SetExpr>& corpus, const Config& cfg)
{
    LawReport rep;
    rep.law = law;
    rep.mean = mean;
    Judge::Cache cache;
    for (auto& inst : lawInstances(law, corpus)) {
        TrialResult r = guardedTrial(mean, law, inst, cfg, &cache);
        if (r.outcome == TrialOutcome::Skipped) {
            ++rep.skipped;
            continue;
        }
        ++rep.trials;
        if (r.outcome == TrialOutcome::Violated) {
            std::vector<std::string> inputs = renderInputs(law, inst);
            rep.violations.push_back({std::move(inst), std::move(inputs), std::move(r.observed)});
        }
    }
    return rep;
}

} // namespace setmeans
