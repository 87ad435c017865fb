#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "setmeans/laws.hpp"

using namespace setmeans;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

const std::vector<MeanKind> kMeans = {MeanKind::Arith, MeanKind::Lis, MeanKind::Acc, MeanKind::Avg, MeanKind::Iso};

std::vector<std::pair<Rational, Rational>> intervalsOf(const BlockSet& h, const Rational& shift)
{
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& b : h.blocks()) {
        if (const auto* iv = std::get_if<IntervalBlock>(&b)) {
            out.push_back({iv->lo + shift, iv->hi + shift});
        }
    }
    return out;
}

std::vector<std::string> flatten(const LawReport& r)
{
    std::vector<std::string> out;
    for (const auto& v : r.violations) {
        out.insert(out.end(), v.inputs.begin(), v.inputs.end());
        out.insert(out.end(), v.observed.begin(), v.observed.end());
    }
    return out;
}

} // namespace

TEST_CASE("law and profile names round-trip")
{
    for (LawKind l : allLaws()) {
        CHECK(parseLawKind(toString(l)) == l);
    }
    CHECK(allLaws().size() == 10);
    CHECK(parseLawKind("self-shift-invariant") == LawKind::SelfShiftInvariant);
    CHECK(parseLawKind("d_monotone") == LawKind::DMonotone);
    CHECK_FALSE(parseLawKind("monotonic").has_value());
    CHECK(parseProfile("Towers") == Profile::Towers);
    CHECK(toString(Profile::Cantor) == "cantor");
    CHECK_FALSE(parseProfile("points").has_value());
}

TEST_CASE("corpus generation is deterministic and honours the profile")
{
    auto a = genCorpus(42, 3, Profile::Finite);
    CHECK(a == genCorpus(42, 3, Profile::Finite));
    CHECK(a != genCorpus(43, 3, Profile::Finite));
    REQUIRE(a.size() == 3);
    for (const auto& e : a) {
        for (const auto& b : normalize(e).blocks()) {
            CHECK(std::holds_alternative<FiniteBlock>(b));
        }
    }

    auto t = genCorpus(7, 1, Profile::Towers);
    REQUIRE(t.size() == 1);
    bool tall = false;
    for (const auto& b : normalize(t[0]).blocks()) {
        if (const auto* tw = std::get_if<TowerBlock>(&b)) {
            tall = tall || tw->level >= 2;
        }
    }
    CHECK(tall);
    for (const auto& e : genCorpus(8, 40, Profile::Towers)) {
        auto lvl = level(normalize(e));
        REQUIRE(lvl.has_value());
        CHECK(*lvl >= 2);
    }

    auto m = genCorpus(1, 100, Profile::Mixed);
    CHECK(m.size() == 100);
    for (const auto& e : m) {
        BlockSet h = normalize(e);
        REQUIRE_FALSE(h.empty());
        Bounds b = bounds(h);
        CHECK(b.inf <= b.sup);
    }

    for (const auto& e : genCorpus(3, 30, Profile::Cantor)) {
        CHECK(dimension(normalize(e)).kind != DimValue::Kind::Zero);
    }
    for (const auto& e : genCorpus(3, 30, Profile::Sequences)) {
        CHECK(level(normalize(e)) == std::optional<int>(1));
    }

    CHECK_THROWS_AS(genCorpus(1, 0, Profile::Mixed), ValidationError);
}

TEST_CASE("ARITH shift laws agree with the summation oracle")
{
    auto corpus = genCorpus(11, 150, Profile::Finite);
    for (LawKind law : {LawKind::ShiftInvariant, LawKind::SelfShiftInvariant}) {
        for (const auto& inst : lawInstances(law, corpus)) {
            auto pts = normalize(inst.sets[0]).finitePoints();
            const Rational& x = inst.shifts[0];
            std::vector<Rational> moved = pts;
            for (auto& p : moved) {
                p += x;
            }
            if (law == LawKind::SelfShiftInvariant) {
                moved.insert(moved.end(), pts.begin(), pts.end());
            }
            Rational base = oracle::sum(pts) / Rational(static_cast<long>(pts.size()));
            Rational expect = base + (law == LawKind::ShiftInvariant ? x : x / R(2));
            CHECK(oracle::sum(moved) / Rational(static_cast<long>(moved.size())) == expect);
        }
        LawReport r = checkLaw(MeanKind::Arith, law, corpus);
        CHECK(r.trials == 300);
        CHECK(r.skipped == 0);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("shift laws show no violation for any mean on a mixed corpus")
{
    auto corpus = genCorpus(5, 60, Profile::Mixed);
    for (MeanKind m : kMeans) {
        for (LawKind law : {LawKind::ShiftInvariant, LawKind::SelfShiftInvariant, LawKind::Internal}) {
            CAPTURE(toString(m));
            CAPTURE(toString(law));
            LawReport r = checkLaw(m, law, corpus);
            CHECK(r.trials > 0);
            CHECK(r.trials + r.skipped == static_cast<int>(lawInstances(law, corpus).size()));
            CHECK(flatten(r).empty());
        }
    }
}

TEST_CASE("AVG is monotone on ordered interval pairs")
{
    auto corpus = genCorpus(21, 120, Profile::Intervals);
    auto insts = lawInstances(LawKind::Monotone, corpus);
    for (const auto& inst : insts) {
        BlockSet h1 = normalize(inst.sets[0]), h2 = normalize(inst.sets[1]);
        auto i1 = intervalsOf(h1, R(0)), i2 = intervalsOf(h2, inst.shifts[0]);
        REQUIRE(i1.back().second <= i2.front().first);
        auto iu = i1;
        iu.insert(iu.end(), i2.begin(), i2.end());
        Rational c1 = oracle::centroid(i1), c2 = oracle::centroid(i2), cu = oracle::centroid(iu);
        CHECK(c1 <= cu);
        CHECK(cu <= c2);
        MeanValue k = meanOf(unite(h1, translate(h2, inst.shifts[0])), MeanKind::Avg);
        REQUIRE(k.isExact());
        CHECK(k.value() == cu);
    }
    LawReport r = checkLaw(MeanKind::Avg, LawKind::Monotone, corpus);
    CHECK(r.trials == static_cast<int>(insts.size()));
    CHECK(r.violations.empty());
}

TEST_CASE("part-shift witnesses for LIS are reported and replay")
{
    SetExpr h1 = geomSeq(R(0), R(1), R(1, 2));
    SetExpr h2 = finite({R(5)});
    TrialResult direct = runTrial(MeanKind::Lis, LawKind::PartShiftInvariant, {{h1, h2}, {R(3)}});
    CHECK(direct.outcome == TrialOutcome::Violated);

    LawReport r = checkLaw(MeanKind::Lis, LawKind::PartShiftInvariant, {h1, h2, geomSeq(R(-4), R(1), R(1, 3))});
    REQUIRE_FALSE(r.violations.empty());
    for (const auto& v : r.violations) {
        TrialResult again = runTrial(MeanKind::Lis, LawKind::PartShiftInvariant, v.instance);
        CHECK(again.outcome == TrialOutcome::Violated);
        CHECK(again.observed == v.observed);
        CHECK(v.inputs.size() == 3);
    }

    // The arithmetic mean moves by x·|H2|/|H1 ∪ H2|, which satisfies the law.
    LawReport a = checkLaw(MeanKind::Arith, LawKind::PartShiftInvariant, genCorpus(2, 80, Profile::Finite));
    CHECK(a.trials > 0);
    CHECK(a.violations.empty());
}

TEST_CASE("inputs outside the hypotheses are skipped")
{
    SetExpr h = finite({R(0), R(1, 4), R(1)});
    // At x = diam the copies touch and the arithmetic mean moves by 1/2 - 1/60.
    CHECK(runTrial(MeanKind::Arith, LawKind::SelfShiftInvariant, {{h}, {R(1)}}).outcome == TrialOutcome::Skipped);
    CHECK(runTrial(MeanKind::Arith, LawKind::SelfShiftInvariant, {{h}, {R(5, 4)}}).outcome == TrialOutcome::Held);
    CHECK(runTrial(MeanKind::Arith, LawKind::StrongInternal, {{h}, {}}).outcome == TrialOutcome::Skipped);
    CHECK(runTrial(MeanKind::Arith, LawKind::Monotone, {{h, h}, {R(1, 2)}}).outcome == TrialOutcome::Skipped);
    CHECK(runTrial(MeanKind::Arith, LawKind::Monotone, {{h, h}, {R(1)}}).outcome == TrialOutcome::Held);
    // Outside Dom(LIS): a finite set.
    CHECK(runTrial(MeanKind::Lis, LawKind::ShiftInvariant, {{h}, {R(2)}}).outcome == TrialOutcome::Skipped);
    // A malformed instance is a usage error, not a skip.
    CHECK_THROWS_AS(runTrial(MeanKind::Arith, LawKind::Monotone, {{h}, {R(1)}}), ValidationError);
}

TEST_CASE("union-monotone strictness and d-monotone on crafted sets")
{
    // A = {0, 2}, B = {4}, C = {6}: both unions raise the mean, so must A U B U C.
    SetExpr a = finite({R(0), R(2)}), b = finite({R(4)}), c = finite({R(6)});
    TrialResult u = runTrial(MeanKind::Arith, LawKind::UnionMonotone, {{a, b, c}, {R(0), R(0)}});
    CHECK(u.outcome == TrialOutcome::Held);
    REQUIRE(u.observed.size() == 4);
    CHECK(u.observed[3] == "K(A U B U C) = 3");

    // B and C overlap after the shifts: outside the hypotheses.
    CHECK(runTrial(MeanKind::Arith, LawKind::UnionMonotone, {{a, b, c}, {R(2), R(0)}}).outcome ==
          TrialOutcome::Skipped);

    SetExpr l = finite({R(0), R(1)});
    CHECK(runTrial(MeanKind::Arith, LawKind::DMonotone, {{l, b}, {R(0), R(3)}}).outcome == TrialOutcome::Held);
    // Premise K(L) < K(L U B) with x < 0 does not instantiate the law.
    CHECK(runTrial(MeanKind::Arith, LawKind::DMonotone, {{l, b}, {R(0), R(-3)}}).outcome == TrialOutcome::Skipped);
}

TEST_CASE("checkLaw is deterministic")
{
    auto corpus = genCorpus(9, 40, Profile::Mixed);
    for (LawKind law : allLaws()) {
        LawReport x = checkLaw(MeanKind::Acc, law, corpus);
        LawReport y = checkLaw(MeanKind::Acc, law, corpus);
        CHECK(x.trials == y.trials);
        CHECK(x.skipped == y.skipped);
        CHECK(flatten(x) == flatten(y));
    }
}
