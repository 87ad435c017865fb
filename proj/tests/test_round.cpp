#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "setmeans/round.hpp"

using namespace setmeans;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }
BlockSet N(const SetExpr& e) { return normalize(e); }

std::vector<Rational> randomPoints(std::mt19937_64& rng, int maxSize)
{
    std::uniform_int_distribution<int> size(1, maxSize);
    int n = size(rng);
    std::vector<Rational> pts;
    while (static_cast<int>(pts.size()) < n) {
        Rational p = oracle::randomRational(rng, 0, 100, 16);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
            pts.push_back(p);
        }
    }
    return pts;
}

// Disjoint intervals with gaps, as (lo, hi) pairs.
std::vector<std::pair<Rational, Rational>> randomIntervals(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(1, 4);
    int n = count(rng);
    std::vector<std::pair<Rational, Rational>> out;
    Rational cursor = oracle::randomRational(rng, -5, 5, 8);
    for (int i = 0; i < n; ++i) {
        Rational lo = cursor + oracle::randomRational(rng, 1, 4, 8);
        Rational hi = lo + oracle::randomRational(rng, 1, 5, 8);
        out.push_back({lo, hi});
        cursor = hi;
    }
    return out;
}

} // namespace

TEST_CASE("round examples")
{
    RoundReport sym = roundDefect(N(finite({R(0), R(1), R(2), R(3)})), MeanKind::Arith);
    CHECK(sym.defect == MeanValue::exact(R(0)));
    CHECK(sym.verdict.answer == Answer::Yes);
    Verdict symW = roundWitness(N(finite({R(0), R(1), R(2), R(3)})), MeanKind::Arith);
    CHECK(symW.answer == Answer::Yes);
    CHECK(symW.notes.front() == "cardinality split 2|2");

    BlockSet avg = N(SetExpr::unite({interval(R(0), R(2)), interval(R(4), R(5))}));
    RoundReport a = roundDefect(avg, MeanKind::Avg);
    CHECK(a.k == MeanValue::exact(R(13, 6)));
    CHECK(a.k1 == MeanValue::exact(R(1)));
    CHECK(a.k2 == MeanValue::exact(R(9, 2)));
    CHECK(a.defect == MeanValue::exact(R(7, 12)));
    CHECK(a.verdict.answer == Answer::No);
    CHECK(roundWitness(avg, MeanKind::Avg).answer == Answer::No);

    BlockSet four = N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2)),
                                      geomSeq(R(2), R(1), R(1, 2)), geomSeq(R(3), R(1), R(1, 2))}));
    CHECK(roundDefect(four, MeanKind::Lis).verdict.answer == Answer::Yes);
    CHECK(roundWitness(four, MeanKind::Lis).answer == Answer::Yes);

    BlockSet two = N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2))}));
    RoundReport iso = roundDefect(two, MeanKind::Iso);
    CHECK(iso.verdict.answer == Answer::Yes);
    Verdict isoW = roundWitness(two, MeanKind::Iso);
    CHECK(isoW.answer == Answer::Yes);
    CHECK_FALSE(isoW.ratioTrace.empty());

    CHECK_THROWS_AS(roundDefect(N(geomSeq(R(0), R(1), R(1, 2))), MeanKind::Lis), DomainViolation);
}

TEST_CASE("arith: defect verdict agrees with the cardinality split")
{
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        auto pts = randomPoints(rng, 12);
        BlockSet h = N(finite(pts));
        Rational k = oracle::sum(pts) / Rational(static_cast<long>(pts.size()));
        long below = 0, above = 0;
        for (const auto& p : pts) {
            below += p <= k ? 1 : 0;
            above += p >= k ? 1 : 0;
        }
        RoundReport rep = roundDefect(h, MeanKind::Arith);
        CHECK((rep.verdict.answer == Answer::Yes) == (below == above));
        CHECK(roundWitness(h, MeanKind::Arith).answer == rep.verdict.answer);
    }
}

TEST_CASE("arith: removing k from H keeps the verdict")
{
    std::mt19937_64 rng(77);
    int withK = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto pts = randomPoints(rng, 6);
        Rational k = oracle::sum(pts) / Rational(static_cast<long>(pts.size()));
        if (std::find(pts.begin(), pts.end(), k) == pts.end()) {
            pts.push_back(k); // the mean stays k
        }
        ++withK;
        std::vector<Rational> rest;
        for (const auto& p : pts) {
            if (p != k) {
                rest.push_back(p);
            }
        }
        if (rest.empty()) {
            continue;
        }
        Answer full = roundDefect(N(finite(pts)), MeanKind::Arith).verdict.answer;
        Answer reduced = roundDefect(N(finite(rest)), MeanKind::Arith).verdict.answer;
        CHECK(full == reduced);
    }
    CHECK(withK > 0);
}

TEST_CASE("avg: defect verdict agrees with the measure split")
{
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        auto ivs = randomIntervals(rng);
        std::vector<SetExpr> parts;
        Rational mass(0), moment(0);
        for (const auto& [lo, hi] : ivs) {
            parts.push_back(interval(lo, hi));
            mass += hi - lo;
            moment += (hi * hi - lo * lo) / R(2);
        }
        Rational k = moment / mass;
        std::vector<std::pair<Rational, Rational>> left, right;
        for (const auto& [lo, hi] : ivs) {
            if (lo < k) {
                left.push_back({lo, min(hi, k)});
            }
            if (hi > k) {
                right.push_back({max(lo, k), hi});
            }
        }
        bool expect = oracle::lebesgue(left) == oracle::lebesgue(right);
        BlockSet h = N(SetExpr::unite(parts));
        RoundReport rep = roundDefect(h, MeanKind::Avg);
        CHECK(rep.k == MeanValue::exact(k));
        CHECK((rep.verdict.answer == Answer::Yes) == expect);
        CHECK(roundWitness(h, MeanKind::Avg).answer == rep.verdict.answer);
    }
    // A single Cantor block is symmetric about its midpoint.
    for (int m : {2, 4}) {
        BlockSet c = N(cantor(R(0), R(1), m, R(1, m + 1)));
        CHECK(roundDefect(c, MeanKind::Avg).verdict.answer == Answer::Yes);
        CHECK(roundWitness(c, MeanKind::Avg).answer == Answer::Yes);
    }
    // With an odd piece count the midpoint sits in every middle piece.
    CHECK_THROWS_AS(roundDefect(N(cantor(R(0), R(1), 3, R(1, 4))), MeanKind::Avg), CutNotRepresentable);
    BlockSet lop = N(SetExpr::unite({cantor(R(0), R(1), 2, R(1, 3)), cantor(R(2), R(5), 2, R(1, 3))}));
    CHECK(roundWitness(lop, MeanKind::Avg).answer == roundDefect(lop, MeanKind::Avg).verdict.answer);
}

TEST_CASE("acc: defect verdict agrees with the top-level split")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> pos(0, 12);
    std::uniform_int_distribution<int> kindPick(0, 2);
    int unequalLevels = 0;
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<SetExpr> parts;
        std::vector<long> anchors;
        int n = 1 + trial % 4;
        for (int i = 0; i < n; ++i) {
            long a = pos(rng) * 2;
            if (std::find(anchors.begin(), anchors.end(), a) != anchors.end()) {
                continue;
            }
            anchors.push_back(a);
            int pick = kindPick(rng);
            if (pick == 0) {
                parts.push_back(tower(2, R(a), R(1, 4)));
            } else if (pick == 1) {
                parts.push_back(geomSeq(R(a), R(1), R(1, 3)));
            } else {
                parts.push_back(tower(2, R(a), R(1, 5), R(-1)));
            }
        }
        BlockSet h = N(SetExpr::unite(parts));
        RoundReport rep;
        try {
            rep = roundDefect(h, MeanKind::Acc);
        } catch (const DomainViolation&) {
            CHECK_THROWS_AS(roundWitness(h, MeanKind::Acc), DomainViolation);
            continue;
        }
        Verdict w = roundWitness(h, MeanKind::Acc);
        CHECK(w.answer == rep.verdict.answer);
        auto l1 = level(cutBelow(h, rep.k.value())), l2 = level(cutAbove(h, rep.k.value()));
        CHECK((w.notes.size() == 2) == (*l1 != *l2));
        if (*l1 != *l2) {
            ++unequalLevels;
        }
    }
    // A lone tower: k is its anchor and the lower half is {k}, round by definition.
    BlockSet t = N(tower(2, R(0), R(1, 4)));
    CHECK(roundDefect(t, MeanKind::Acc).verdict.answer == Answer::Yes);
    CHECK(roundWitness(t, MeanKind::Acc).answer == Answer::Yes);
    CHECK(unequalLevels > 0);
}

TEST_CASE("lis: defect verdict agrees with the accumulation identity")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> pos(0, 9);
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<SetExpr> parts;
        int n = 2 + trial % 3;
        for (int i = 0; i < n; ++i) {
            parts.push_back(geomSeq(R(pos(rng)), R(i % 2 ? 1 : -1, 2), R(1, 2)));
        }
        BlockSet h = N(SetExpr::unite(parts));
        RoundReport rep;
        try {
            rep = roundDefect(h, MeanKind::Lis);
        } catch (const DomainViolation&) {
            continue;
        }
        CHECK(roundWitness(h, MeanKind::Lis).answer == rep.verdict.answer);
    }
}

TEST_CASE("iso: defect verdict agrees with the clause test")
{
    std::vector<BlockSet> sets = {
        N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2))})),
        N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(3), R(-1), R(1, 2))})),
        N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2)), geomSeq(R(2), R(1), R(1, 2))})),
        N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(2), R(1), R(1, 2)), geomSeq(R(3), R(1), R(1, 2))})),
    };
    for (const auto& h : sets) {
        RoundReport rep = roundDefect(h, MeanKind::Iso);
        Verdict w = roundWitness(h, MeanKind::Iso);
        if (rep.verdict.answer == Answer::Inconclusive || w.answer == Answer::Inconclusive) {
            continue;
        }
        CHECK(w.answer == rep.verdict.answer);
    }
    // One sequence below k against two above: |P_n|/|S_n| tends to 2.
    for (std::size_t i : {2, 3}) {
        CHECK(roundDefect(sets[i], MeanKind::Iso).verdict.answer == Answer::No);
        CHECK(roundWitness(sets[i], MeanKind::Iso).answer == Answer::No);
    }
}

TEST_CASE("reflection negates the defect")
{
    std::vector<BlockSet> sets = {
        N(finite({R(0), R(1), R(5)})),
        N(SetExpr::unite({interval(R(0), R(2)), interval(R(4), R(5))})),
        N(SetExpr::unite({geomSeq(R(0), R(1), R(1, 2)), geomSeq(R(1), R(1), R(1, 2)), geomSeq(R(5), R(1), R(1, 3))})),
        N(SetExpr::unite({tower(2, R(0), R(1, 4)), geomSeq(R(3), R(1), R(1, 2)), tower(2, R(7), R(1, 5))})),
    };
    const MeanKind kinds[] = {MeanKind::Arith, MeanKind::Avg, MeanKind::Lis, MeanKind::Acc};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        RoundReport a = roundDefect(sets[i], kinds[i]);
        RoundReport b = roundDefect(translate(reflect(sets[i]), R(3, 2)), kinds[i]);
        CHECK(b.defect == MeanValue::exact(-a.defect.value()));
    }
}
