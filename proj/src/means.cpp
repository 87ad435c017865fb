#include "setmeans/means.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace setmeans {

std::string_view toString(MeanKind k)
{
    switch (k) {
    case MeanKind::Arith:
        return "arith";
    case MeanKind::Lis:
        return "lis";
    case MeanKind::Acc:
        return "acc";
    case MeanKind::Iso:
        return "iso";
    case MeanKind::Avg:
        return "avg";
    }
    return "?";
}

std::optional<MeanKind> parseMeanKind(std::string_view s)
{
    std::string lower;
    for (char c : s) {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (MeanKind k : {MeanKind::Arith, MeanKind::Lis, MeanKind::Acc, MeanKind::Iso, MeanKind::Avg}) {
        if (lower == toString(k)) {
            return k;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

MeanValue MeanValue::exact(Rational v)
{
    MeanValue m;
    m.status_ = Status::Exact;
    m.exact_ = std::move(v);
    return m;
}

MeanValue MeanValue::approx(double v, double tol)
{
    MeanValue m;
    m.status_ = Status::Approx;
    m.approx_ = v;
    m.tol_ = tol;
    return m;
}

MeanValue MeanValue::undefined(std::string reason)
{
    MeanValue m;
    m.status_ = Status::Undefined;
    m.reason_ = std::move(reason);
    return m;
}

const Rational& MeanValue::value() const
{
    if (!isExact()) {
        throw std::logic_error("MeanValue::value on a non-exact value");
    }
    return exact_;
}

double MeanValue::toDouble() const
{
    switch (status_) {
    case Status::Exact:
        return exact_.toDouble();
    case Status::Approx:
        return approx_;
    case Status::Undefined:
        break;
    }
    throw std::logic_error("MeanValue::toDouble on an undefined value");
}

Rational MeanValue::cutPoint() const
{
    if (isExact()) {
        return exact_;
    }
    if (isApprox()) {
        return approximate(approx_, tol_);
    }
    throw DomainViolation("undefined mean: " + reason_);
}

std::string MeanValue::str() const
{
    switch (status_) {
    case Status::Exact:
        return exact_.str();
    case Status::Approx: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g (+/- %.3g)", approx_, tol_);
        return buf;
    }
    case Status::Undefined:
        return "undefined (" + reason_ + ")";
    }
    return "?";
}

namespace {

MeanValue combine(const MeanValue& a, const MeanValue& b, int sign)
{
    if (!a.defined()) {
        return a;
    }
    if (!b.defined()) {
        return b;
    }
    if (a.isExact() && b.isExact()) {
        return MeanValue::exact(sign > 0 ? a.value() + b.value() : a.value() - b.value());
    }
    double v = sign > 0 ? a.toDouble() + b.toDouble() : a.toDouble() - b.toDouble();
    return MeanValue::approx(v, a.tol() + b.tol());
}

} // namespace

MeanValue operator+(const MeanValue& a, const MeanValue& b) { return combine(a, b, 1); }
MeanValue operator-(const MeanValue& a, const MeanValue& b) { return combine(a, b, -1); }

MeanValue operator*(const MeanValue& a, const Rational& c)
{
    if (a.isExact()) {
        return MeanValue::exact(a.value() * c);
    }
    if (a.isApprox()) {
        double f = c.toDouble();
        return MeanValue::approx(a.toDouble() * f, a.tol() * std::fabs(f));
    }
    return a;
}

MeanValue operator+(const MeanValue& a, const Rational& c) { return a + MeanValue::exact(c); }

bool sameValue(const MeanValue& a, const MeanValue& b, double slack)
{
    if (!a.defined() || !b.defined()) {
        return false;
    }
    if (a.isExact() && b.isExact()) {
        return a.value() == b.value();
    }
    return std::fabs(a.toDouble() - b.toDouble()) <= slack;
}

void LadderConfig::check() const
{
    if (eps0.sign() <= 0) {
        throw ValidationError("ladder start must be positive");
    }
    if (shrink.sign() <= 0 || shrink >= Rational(1)) {
        throw ValidationError("ladder shrink factor must lie in (0, 1)");
    }
    if (maxSteps < 4) {
        throw ValidationError("ladder needs at least 4 steps");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
}

// ---------------------------------------------------------------------------

Rational arithMean(const std::vector<Rational>& points)
{
    if (points.empty()) {
        throw DomainViolation("arithmetic mean of no points");
    }
    Rational sum(0);
    for (const auto& p : points) {
        sum += p;
    }
    return sum / Rational(static_cast<long>(points.size()));
}

MeanValue meanArith(const BlockSet& h)
{
    if (h.empty()) {
        return MeanValue::undefined("empty set");
    }
    if (!h.isFinite()) {
        return MeanValue::undefined("infinite set");
    }
    return MeanValue::exact(arithMean(h.finitePoints()));
}

MeanValue meanLis(const BlockSet& h)
{
    if (h.empty()) {
        return MeanValue::undefined("empty set");
    }
    if (h.isFinite()) {
        return MeanValue::undefined("finite set");
    }
    Bounds b = bounds(h);
    return MeanValue::exact((*b.accInf + *b.accSup) / Rational(2));
}

MeanValue meanAcc(const BlockSet& h)
{
    if (h.empty()) {
        return MeanValue::undefined("empty set");
    }
    auto lev = level(h);
    if (!lev) {
        return MeanValue::undefined("infinite level");
    }
    return MeanValue::exact(arithMean(derivedSet(h, *lev).finitePoints()));
}

Rational extrapolateToZero(const std::vector<Rational>& t, const std::vector<Rational>& y)
{
    // Lagrange form evaluated at 0.
    Rational out(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Rational w(1);
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j != i) {
                w *= (-t[j]) / (t[i] - t[j]);
            }
        }
        out += w * y[i];
    }
    return out;
}

namespace {

void requireIsolatedClosure(const BlockSet& h)
{
    for (const auto& b : h.blocks()) {
        if (std::holds_alternative<IntervalBlock>(b) || std::holds_alternative<CantorBlock>(b)) {
            throw DomainViolation("set is not the closure of its isolated points (" + describeBlock(b) + ")");
        }
    }
}

bool pairwiseWithin(const std::vector<Rational>& v, double tol)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if ((v[i] - v[j]).abs().toDouble() >= tol) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

IsoLadder isoLadder(const BlockSet& h, const LadderConfig& cfg)
{
    cfg.check();
    requireIsolatedClosure(h);
    IsoLadder out;
    if (h.isFinite()) {
        return out;
    }
    Rational eps = cfg.eps0;
    std::vector<Rational> recent;
    for (int k = 0; k < cfg.maxSteps; ++k, eps *= cfg.shrink) {
        auto pts = isolatedOutside(h, eps);
        if (pts.empty() || (!out.records.empty() && pts.size() <= out.records.back().count)) {
            continue;
        }
        LadderRecord rec{eps, pts.size(), arithMean(pts), std::nullopt};
        out.records.push_back(rec);
        std::size_t n = out.records.size();
        if (n < 3) {
            continue;
        }
        std::vector<Rational> ts, ys;
        for (std::size_t i = n - 3; i < n; ++i) {
            ts.push_back(Rational(1) / Rational(static_cast<long>(out.records[i].count)));
            ys.push_back(out.records[i].mean);
        }
        Rational e = extrapolateToZero(ts, ys);
        out.records.back().extrapolated = e;
        recent.push_back(e);
        if (recent.size() >= 3) {
            std::vector<Rational> last(recent.end() - 3, recent.end());
            if (pairwiseWithin(last, cfg.tol)) {
                out.converged = true;
                out.limit = e;
                break;
            }
        }
    }
    return out;
}

MeanValue meanIso(const BlockSet& h, const LadderConfig& cfg)
{
    if (h.empty()) {
        return MeanValue::undefined("empty set");
    }
    requireIsolatedClosure(h);
    if (h.isFinite()) {
        return MeanValue::undefined("finite set");
    }
    IsoLadder ladder = isoLadder(h, cfg);
    if (!ladder.converged) {
        return MeanValue::undefined("no convergence");
    }
    return MeanValue::approx(ladder.limit->toDouble(), cfg.tol);
}

MeanValue avgMean(const BlockSet& h)
{
    if (h.empty()) {
        return MeanValue::undefined("empty set");
    }
    DimValue s = dimension(h);
    switch (s.kind) {
    case DimValue::Kind::Zero:
        if (!h.isFinite()) {
            return MeanValue::undefined("infinite counting measure");
        }
        return MeanValue::exact(arithMean(h.finitePoints()));
    case DimValue::Kind::One: {
        Rational mass(0), moment(0);
        for (const auto& b : h.blocks()) {
            if (const auto* iv = std::get_if<IntervalBlock>(&b)) {
                Rational len = iv->hi - iv->lo;
                mass += len;
                moment += len * (iv->lo + iv->hi) / Rational(2);
            }
        }
        return MeanValue::exact(moment / mass);
    }
    case DimValue::Kind::LogRatio:
        break;
    }

    std::vector<const CantorBlock*> top;
    for (const auto& b : h.blocks()) {
        if (const auto* c = std::get_if<CantorBlock>(&b); c && compareDims(blockDimension(b), s) == 0) {
            top.push_back(c);
        }
    }
    for (std::size_t i = 0; i < top.size(); ++i) {
        for (std::size_t j = i + 1; j < top.size(); ++j) {
            if (top[i]->lo < top[j]->hi && top[j]->lo < top[i]->hi) {
                return MeanValue::undefined("overlapping fractal blocks");
            }
        }
    }
    Rational base = top.front()->hi - top.front()->lo;
    Rational mass(0), moment(0);
    bool exact = true;
    for (const auto* c : top) {
        Rational mid = (c->lo + c->hi) / Rational(2);
        auto j = integerLog((c->hi - c->lo) / base, c->ratio.inverse());
        if (!j) {
            exact = false;
            break;
        }
        Rational w = Rational(c->pieces).pow(static_cast<unsigned long>(std::labs(*j)));
        if (*j < 0) {
            w = w.inverse();
        }
        mass += w;
        moment += w * mid;
    }
    if (exact) {
        return MeanValue::exact(moment / mass);
    }
    double sd = s.toDouble();
    double dmass = 0.0, dmoment = 0.0;
    for (const auto* c : top) {
        double w = std::pow((c->hi - c->lo).toDouble(), sd);
        dmass += w;
        dmoment += w * ((c->lo + c->hi) / Rational(2)).toDouble();
    }
    double v = dmoment / dmass;
    return MeanValue::approx(v, 1e-12 * std::max(1.0, std::fabs(v)));
}

MeanValue meanOf(const BlockSet& h, MeanKind kind, const LadderConfig& cfg)
{
    try {
        switch (kind) {
        case MeanKind::Arith:
            return meanArith(h);
        case MeanKind::Lis:
            return meanLis(h);
        case MeanKind::Acc:
            return meanAcc(h);
        case MeanKind::Iso:
            return meanIso(h, cfg);
        case MeanKind::Avg:
            return avgMean(h);
        }
    } catch (const DomainViolation& e) {
        return MeanValue::undefined(e.what());
    } catch (const IncomparableDimensions& e) {
        return MeanValue::undefined(e.what());
    }
    return MeanValue::undefined("unknown mean");
}

bool inDomain(const BlockSet& h, MeanKind kind, const LadderConfig& cfg)
{
    return meanOf(h, kind, cfg).defined();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> candidateCuts(const BlockSet& h)
{
    std::vector<Rational> c;
    for (const auto& b : h.blocks()) {
        c.push_back(blockInf(b));
        c.push_back(blockSup(b));
        std::visit(
            [&](const auto& blk) {
                using T = std::decay_t<decltype(blk)>;
                if constexpr (std::is_same_v<T, FiniteBlock>) {
                    c.insert(c.end(), blk.points.begin(), blk.points.end());
                } else if constexpr (std::is_same_v<T, GeomSeqBlock>) {
                    c.push_back(blk.anchor);
                    Rational p = blk.ratio;
                    for (int i = 0; i < 3; ++i, p *= blk.ratio) {
                        c.push_back(blk.anchor + blk.scale * p);
                    }
                } else if constexpr (std::is_same_v<T, TowerBlock>) {
                    c.push_back(blk.anchor);
                    c.push_back(blk.anchor + blk.scale * blk.ratio);
                } else if constexpr (std::is_same_v<T, CantorBlock>) {
                    Rational len = blk.hi - blk.lo;
                    Rational piece = len * blk.ratio;
                    Rational step = piece + (len - piece * Rational(blk.pieces)) / Rational(blk.pieces - 1);
                    for (int i = 0; i < blk.pieces; ++i) {
                        c.push_back(blk.lo + step * Rational(i));
                        c.push_back(blk.lo + step * Rational(i) + piece);
                    }
                }
            },
            b);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

} // namespace

KBounds kBounds(const BlockSet& h, MeanKind kind, const LadderConfig& cfg)
{
    KBounds out{MeanValue::undefined("mean undefined"), MeanValue::undefined("mean undefined"), {}};
    MeanValue ref = meanOf(h, kind, cfg);
    if (!ref.defined()) {
        out.notes.push_back("K(H) undefined: " + ref.reason());
        return out;
    }
    const double slack = 2.0 * cfg.tol;
    auto equalAt = [&](const Rational& x, bool above) {
        try {
            BlockSet part = above ? cutAbove(h, x) : cutBelow(h, x);
            if (part.empty()) {
                return false;
            }
            MeanValue v = meanOf(part, kind, cfg);
            if (!v.defined()) {
                out.notes.push_back("skipped " + std::string(above ? "H^{+" : "H^{-") + x.str() +
                                    "}: " + v.reason());
                return false;
            }
            return sameValue(v, ref, slack);
        } catch (const CutNotRepresentable& e) {
            out.notes.push_back(std::string("skipped cut at ") + x.str() + ": " + e.what());
            return false;
        }
    };

    std::vector<Rational> cand = candidateCuts(h);
    Bounds b = bounds(h);

    Rational lower = b.inf;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (cand[i] > lower && equalAt(cand[i], true)) {
            lower = cand[i];
        }
        if (i + 1 < cand.size() && cand[i + 1] > lower && equalAt((cand[i] + cand[i + 1]) / Rational(2), true)) {
            lower = cand[i + 1];
        }
    }
    Rational upper = b.sup;
    for (std::size_t i = cand.size(); i-- > 0;) {
        if (cand[i] < upper && equalAt(cand[i], false)) {
            upper = cand[i];
        }
        if (i > 0 && cand[i - 1] < upper && equalAt((cand[i - 1] + cand[i]) / Rational(2), false)) {
            upper = cand[i - 1];
        }
    }
    out.kLiminf = MeanValue::exact(lower);
    out.kLimsup = MeanValue::exact(upper);
    return out;
}

} // namespace setmeans
