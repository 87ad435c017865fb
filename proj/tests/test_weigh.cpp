#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "setmeans/weigh.hpp"

using namespace setmeans;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }
BlockSet N(const SetExpr& e) { return normalize(e); }
BlockSet seq(long a, long w, long rden) { return N(geomSeq(R(a), R(w), R(1, rden))); }

using Trend = DefectCurve::Trend;

std::vector<Rational> randomFinite(std::mt19937_64& rng, int maxSize)
{
    std::uniform_int_distribution<int> size(1, maxSize);
    std::vector<Rational> pts;
    int n = size(rng);
    while (static_cast<int>(pts.size()) < n) {
        Rational p = oracle::randomRational(rng, 0, 20, 6);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
            pts.push_back(p);
        }
    }
    return pts;
}

std::vector<BlockSet> corpus(MeanKind kind)
{
    switch (kind) {
    case MeanKind::Arith:
        return {N(finite({R(1), R(2)})), N(finite({R(3), R(4), R(5)})), N(finite({R(0), R(9)})), N(finite({R(4)}))};
    case MeanKind::Avg:
        return {N(interval(R(0), R(1))), N(interval(R(4), R(5))), N(interval(R(0), R(2))),
                N(SetExpr::unite({interval(R(0), R(1, 2)), interval(R(3), R(7, 2))})),
                N(cantor(R(0), R(1), 2, R(1, 3))), N(cantor(R(0), R(3), 2, R(1, 3))), N(finite({R(1), R(5)}))};
    case MeanKind::Acc:
        return {seq(0, 1, 2), N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(2), R(1), R(1, 3))})),
                N(tower(2, R(0), R(1, 4))), seq(5, -1, 3), N(finite({R(1), R(3)}))};
    case MeanKind::Lis:
        return {seq(0, 1, 2), N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2))})),
                N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 3)), geomSeq(R(2), R(1), R(1, 3))})),
                N(interval(R(0), R(1))), N(tower(2, R(1), R(1, 4)))};
    case MeanKind::Iso:
        return {seq(0, 1, 2), seq(3, 1, 4),
                N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 4)), geomSeq(R(1), R(1), R(1, 4))})),
                N(tower(2, R(0), R(1, 4)))};
    }
    return {};
}

const MeanKind kAll[] = {MeanKind::Arith, MeanKind::Lis, MeanKind::Acc, MeanKind::Iso, MeanKind::Avg};
const WeightKind kWeights[] = {WeightKind::InBound, WeightKind::InLimit, WeightKind::InEquality};

} // namespace

TEST_CASE("weight defect examples")
{
    CHECK(weightDefect(N(finite({R(1), R(2)})), N(finite({R(3), R(4)})), MeanKind::Arith, R(100)) ==
          MeanValue::exact(R(0)));
    CHECK(weightDefect(N(interval(R(0), R(2))), N(interval(R(4), R(5))), MeanKind::Avg, R(0)) ==
          MeanValue::exact(R(-7, 12)));
    CHECK(weightDefect(N(finite({R(0)})), N(finite({R(0)})), MeanKind::Arith, R(10)) == MeanValue::exact(R(0)));
}

TEST_CASE("equal weight examples")
{
    CHECK(equalWeight(N(finite({R(1), R(2)})), N(finite({R(3), R(4), R(5)})), MeanKind::Arith, WeightKind::InBound)
              .answer == Answer::No);
    CHECK(equalWeight(N(interval(R(0), R(1))), N(interval(R(4), R(5))), MeanKind::Avg, WeightKind::InEquality)
              .answer == Answer::Yes);
    BlockSet a = N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2))}));
    BlockSet b = N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 3)), geomSeq(R(2), R(1), R(1, 3))}));
    CHECK(equalWeight(a, b, MeanKind::Lis, WeightKind::InLimit).answer == Answer::No);
    CHECK(equalWeight(a, b, MeanKind::Lis, WeightKind::InBound).answer == Answer::Yes);
    CHECK(equalWeight(seq(0, 1, 2), N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 4)), geomSeq(R(1), R(1), R(1, 4))})),
                      MeanKind::Iso, WeightKind::InLimit)
              .answer == Answer::Yes);
    CHECK(equalWeight(seq(0, 1, 2), seq(0, 1, 3), MeanKind::Iso, WeightKind::InBound).answer == Answer::No);
    CHECK(equalWeight(seq(0, 1, 2), N(tower(2, R(0), R(1, 4))), MeanKind::Acc, WeightKind::InBound).answer ==
          Answer::No);
    CHECK_THROWS_AS(equalWeight(N(finite({R(1)})), seq(0, 1, 2), MeanKind::Lis, WeightKind::InBound),
                    DomainViolation);
}

TEST_CASE("arith defect matches the closed form at separated shifts")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto p1 = randomFinite(rng, 6);
        auto p2 = randomFinite(rng, 6);
        BlockSet h1 = N(finite(p1)), h2 = N(finite(p2));
        Rational n(static_cast<long>(p1.size())), m(static_cast<long>(p2.size()));
        Rational s1 = oracle::sum(p1), s2 = oracle::sum(p2);
        Rational c = (s1 + s2) / (n + m);
        Rational d = (s1 / n + s2 / m) / R(2);
        for (const auto& x : shiftGrid({h1, h2}, Config{})) {
            Rational expect = (c - d) + (m / (n + m) - R(1, 2)) * x;
            CHECK(weightDefect(h1, h2, MeanKind::Arith, x) == MeanValue::exact(expect));
        }
        DefectCurve curve = defectCurve(h1, h2, MeanKind::Arith);
        CHECK((curve.trend == Trend::LinearGrowth) == (n != m));
        if (n != m) {
            REQUIRE(curve.slope);
            CHECK(*curve.slope == doctest::Approx((m / (n + m) - R(1, 2)).toDouble()));
        }
    }
}

TEST_CASE("avg defect on interval unions matches the measure-weighted oracle")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<Rational, Rational>> i1, i2;
        std::vector<SetExpr> e1, e2;
        for (auto* target : {&i1, &i2}) {
            Rational cursor = oracle::randomRational(rng, 0, 3, 4);
            for (int k = 0; k < 2; ++k) {
                Rational lo = cursor + oracle::randomRational(rng, 1, 3, 4);
                Rational hi = lo + oracle::randomRational(rng, 1, 3, 4);
                target->push_back({lo, hi});
                cursor = hi;
            }
        }
        for (auto& [lo, hi] : i1) {
            e1.push_back(interval(lo, hi));
        }
        for (auto& [lo, hi] : i2) {
            e2.push_back(interval(lo, hi));
        }
        auto moment = [](const std::vector<std::pair<Rational, Rational>>& iv) {
            Rational s(0);
            for (const auto& [lo, hi] : iv) {
                s += (hi * hi - lo * lo) / R(2);
            }
            return s;
        };
        Rational m1 = oracle::lebesgue(i1), m2 = oracle::lebesgue(i2);
        Rational a1 = moment(i1) / m1, a2 = moment(i2) / m2;
        BlockSet h1 = N(SetExpr::unite(e1)), h2 = N(SetExpr::unite(e2));
        for (const auto& x : shiftGrid({h1, h2}, Config{})) {
            Rational u = (m1 * a1 + m2 * (a2 + x)) / (m1 + m2);
            CHECK(weightDefect(h1, h2, MeanKind::Avg, x) == MeanValue::exact(u - (a1 + a2 + x) / R(2)));
        }
        Verdict v = equalWeight(h1, h2, MeanKind::Avg, WeightKind::InBound);
        CHECK((v.answer == Answer::Yes) == (m1 == m2));
        Verdict s = equalWeightSampled(h1, h2, MeanKind::Avg, WeightKind::InBound);
        CHECK((s.answer == Answer::No) == (m1 != m2));
    }
}

TEST_CASE("symmetry, reflexivity and the implication chain")
{
    for (MeanKind kind : kAll) {
        auto sets = corpus(kind);
        for (const auto& h1 : sets) {
            if (!inClassDomain(h1, kind)) {
                continue;
            }
            if (kind != MeanKind::Iso) {
                CHECK(equalWeight(h1, h1, kind, WeightKind::InEquality).answer == Answer::Yes);
            }
            for (const auto& h2 : sets) {
                if (!inClassDomain(h2, kind)) {
                    continue;
                }
                for (WeightKind w : kWeights) {
                    CHECK(equalWeight(h1, h2, kind, w).answer == equalWeight(h2, h1, kind, w).answer);
                }
                Answer eq = equalWeight(h1, h2, kind, WeightKind::InEquality).answer;
                Answer lim = equalWeight(h1, h2, kind, WeightKind::InLimit).answer;
                Answer bnd = equalWeight(h1, h2, kind, WeightKind::InBound).answer;
                if (eq == Answer::Yes) {
                    CHECK(lim == Answer::Yes);
                }
                if (lim == Answer::Yes) {
                    CHECK(bnd == Answer::Yes);
                }
            }
        }
    }
}

TEST_CASE("closed forms agree with the sampler")
{
    for (MeanKind kind : {MeanKind::Arith, MeanKind::Avg, MeanKind::Acc, MeanKind::Lis}) {
        auto sets = corpus(kind);
        for (const auto& h1 : sets) {
            for (const auto& h2 : sets) {
                if (!inClassDomain(h1, kind) || !inClassDomain(h2, kind)) {
                    continue;
                }
                for (WeightKind w : kWeights) {
                    Verdict c = equalWeight(h1, h2, kind, w);
                    Verdict s = equalWeightSampled(h1, h2, kind, w);
                    CHECK(s.method == Method::Sampler);
                    CHECK(s.answer != Answer::Yes);
                    if (c.answer == Answer::Yes) {
                        CHECK(s.answer == Answer::Inconclusive);
                    }
                }
            }
        }
    }
}

TEST_CASE("lis diameters decide equal weight in limit")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<long> anchor(0, 4);
        long a1 = anchor(rng), b1 = a1 + anchor(rng) + 1, a2 = anchor(rng), b2 = a2 + anchor(rng) + 1;
        BlockSet h1 = N(SetExpr::unite({geomSeq(R(a1), R(1), R(1, 2)), geomSeq(R(b1), R(-1), R(1, 3))}));
        BlockSet h2 = N(SetExpr::unite({geomSeq(R(a2), R(-1), R(1, 2)), geomSeq(R(b2), R(1), R(1, 2))}));
        bool same = (b1 - a1) == (b2 - a2);
        CHECK((equalWeight(h1, h2, MeanKind::Lis, WeightKind::InLimit).answer == Answer::Yes) == same);
        DefectCurve c = defectCurve(h1, h2, MeanKind::Lis);
        CHECK((c.trend == Trend::ToZero) == same);
        // On the positive side the defect is ((b2 − a2) − (b1 − a1))/4 once separated.
        CHECK(c.samples.back().second == MeanValue::exact(R((b2 - a2) - (b1 - a1), 4)));
    }
}

TEST_CASE("iso growth comparison")
{
    IsoGrowth a{1, 1.0 / std::log(2.0), {{1, R(1, 2)}}};
    IsoGrowth b{1, 2.0 / std::log(4.0), {{1, R(1, 4)}, {1, R(1, 4)}}};
    IsoGrowth c{1, 1.0 / std::log(3.0), {{1, R(1, 3)}}};
    CHECK(sameIsoGrowth(a, b) == std::optional<bool>(true));
    CHECK(sameIsoGrowth(a, c) == std::optional<bool>(false));
    IsoGrowth d{1, 3.0 / std::log(8.0), {{1, R(1, 8)}, {1, R(1, 8)}, {1, R(1, 8)}}};
    CHECK(sameIsoGrowth(a, d) == std::optional<bool>(true));
}

TEST_CASE("transitivity probe")
{
    BlockSet f = N(finite({R(0), R(1)}));
    DefectCurve same = transitivityProbe(f, translate(f, R(3)), translate(f, R(7)), MeanKind::Arith);
    for (const auto& [x, d] : same.samples) {
        CHECK(d == MeanValue::exact(R(0)));
    }
    CHECK(same.trend == Trend::ToZero);

    DefectCurve eq =
        transitivityProbe(N(interval(R(0), R(1))), N(interval(R(2), R(3))), N(interval(R(5), R(6))), MeanKind::Avg);
    CHECK(eq.trend == Trend::ToZero);

    // Lengths 1, 2, 1: the x-coefficient 2/3 + 4/3 − 1 − 1 vanishes.
    DefectCurve mid =
        transitivityProbe(N(interval(R(0), R(1))), N(interval(R(2), R(4))), N(interval(R(5), R(6))), MeanKind::Avg);
    CHECK(mid.trend == Trend::ToZero);

    // Lengths 1, 1, 2: x-coefficient 1/2 + 5/3 − 4/3 − 1 = −1/6.
    DefectCurve grow =
        transitivityProbe(N(interval(R(0), R(1))), N(interval(R(2), R(3))), N(interval(R(5), R(7))), MeanKind::Avg);
    CHECK(grow.trend == Trend::LinearGrowth);
    REQUIRE(grow.slope);
    CHECK(*grow.slope == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("trend classification")
{
    auto ex = [](long v) { return MeanValue::exact(R(v)); };
    std::vector<std::pair<Rational, MeanValue>> lin = {{R(-100), ex(50)}, {R(-10), ex(5)}, {R(-1), ex(0)},
                                                       {R(1), ex(0)},     {R(10), ex(-5)}, {R(100), ex(-50)}};
    CHECK(classifyTrend(lin, 1e-9) == Trend::Bounded); // the three points per side are not affine
    lin[2].second = MeanValue::exact(R(1, 2));
    lin[3].second = MeanValue::exact(R(-1, 2));
    CHECK(classifyTrend(lin, 1e-9) == Trend::LinearGrowth);
    std::vector<std::pair<Rational, MeanValue>> flat = {
        {R(-10), ex(1)}, {R(-1), ex(1)}, {R(1), ex(1)}, {R(10), ex(1)}};
    CHECK(classifyTrend(flat, 1e-9) == Trend::Bounded);
    flat[0].second = MeanValue::undefined("x");
    CHECK(classifyTrend(flat, 1e-9) == Trend::Inconclusive);
}
