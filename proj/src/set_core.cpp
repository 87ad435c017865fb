#include "setmeans/set_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace setmeans {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Largest element of the standard tower T_k: r + r^2 + ... + r^k.
Rational towerMax(int k, const Rational& r)
{
    Rational sum(0);
    Rational p(1);
    for (int i = 0; i < k; ++i) {
        p *= r;
        sum += p;
    }
    return sum;
}

// A piece offset + scale * T_level in standard tower coordinates.
struct TowerPiece {
    int level;
    Rational offset;
    Rational scale;
};

void mapPieces(std::vector<TowerPiece>& out, const std::vector<TowerPiece>& sub, const Rational& offset,
               const Rational& scale)
{
    for (const auto& p : sub) {
        out.push_back({p.level, offset + scale * p.offset, scale * p.scale});
    }
}

// Points of T_k that are <= s.
std::vector<TowerPiece> towerCutBelowStd(int k, const Rational& r, const Rational& s)
{
    if (s.sign() < 0) {
        return {};
    }
    if (k == 0 || s.isZero()) {
        return {{0, Rational(0), Rational(1)}};
    }
    if (s >= towerMax(k, r)) {
        return {{k, Rational(0), Rational(1)}};
    }
    Rational spread = Rational(1) + towerMax(k - 1, r);
    Rational p = r; // r^n
    int n = 1;
    while (p * spread > s) {
        p *= r;
        ++n;
    }
    // {0} and every cluster n' >= n form r^(n-1) * T_k.
    Rational prev = p / r;
    std::vector<TowerPiece> out{{k, Rational(0), prev}};
    if (prev <= s) {
        mapPieces(out, towerCutBelowStd(k - 1, r, (s - prev) / prev), prev, prev);
    }
    return out;
}

// Points of T_k that are >= s.
std::vector<TowerPiece> towerCutAboveStd(int k, const Rational& r, const Rational& s)
{
    if (s.sign() <= 0) {
        return {{k, Rational(0), Rational(1)}};
    }
    if (k == 0 || s > towerMax(k, r)) {
        return {};
    }
    Rational spread = Rational(1) + towerMax(k - 1, r);
    std::vector<TowerPiece> out;
    Rational p = r;
    for (;;) {
        if (p >= s) {
            out.push_back({k - 1, p, p});
        } else if (p * spread >= s) {
            mapPieces(out, towerCutAboveStd(k - 1, r, (s - p) / p), p, p);
            break;
        } else {
            break;
        }
        p *= r;
    }
    return out;
}

bool towerContainsStd(int k, const Rational& r, const Rational& t)
{
    if (t.isZero()) {
        return true;
    }
    if (k == 0 || t.sign() < 0 || t > towerMax(k, r)) {
        return false;
    }
    Rational spread = Rational(1) + towerMax(k - 1, r);
    Rational p = r;
    for (;;) {
        if (t > p * spread) {
            return false;
        }
        if (t >= p) {
            return towerContainsStd(k - 1, r, (t - p) / p);
        }
        p *= r;
    }
}

// Is there a point of T_k (closure, for k >= 1 the same open-ball answer) at
// distance < e from t?
bool towerNearStd(int k, const Rational& r, const Rational& t, const Rational& e)
{
    if ((t.abs()) < e) {
        return true;
    }
    if (k == 0 || t.sign() < 0) {
        return false;
    }
    if (t == e) {
        return true; // points accumulate at 0 from above
    }
    Rational top = towerMax(k, r);
    if (t - top >= e) {
        return false;
    }
    Rational spread = Rational(1) + towerMax(k - 1, r);
    Rational p = r;
    for (;;) {
        Rational hi = p * spread;
        if (hi <= t - e) {
            return false;
        }
        if (p < t + e && towerNearStd(k - 1, r, (t - p) / p, e / p)) {
            return true;
        }
        p *= r;
    }
}

void enumerateTowerTop(int k, const Rational& r, const Rational& absScale, const Rational& eps, int minIndex,
                       const Rational& partial, const Rational& pStart, std::vector<Rational>& out)
{
    // Choose the next index n >= minIndex; for the last index, scale*r^n >= eps.
    Rational p = pStart;
    for (int n = minIndex;; ++n) {
        if (absScale * p < eps) {
            return;
        }
        if (k == 1) {
            out.push_back(partial + p);
        } else {
            enumerateTowerTop(k - 1, r, absScale, eps, n + 1, partial + p, p * r, out);
        }
        p *= r;
    }
}

struct CantorGeometry {
    Rational length;
    Rational piece;
    Rational step; // piece + gap
};

CantorGeometry geometry(const CantorBlock& c)
{
    Rational len = c.hi - c.lo;
    Rational piece = len * c.ratio;
    Rational gap = (len - piece * Rational(c.pieces)) / Rational(c.pieces - 1);
    return {len, piece, piece + gap};
}

CantorBlock subPiece(const CantorBlock& c, const CantorGeometry& g, int i)
{
    Rational lo = c.lo + g.step * Rational(i);
    return CantorBlock{lo, lo + g.piece, c.pieces, c.ratio};
}

constexpr int kCantorCutDepth = 64;

void cantorCutBelow(const CantorBlock& c, const Rational& y, int depth, std::vector<Block>& out)
{
    if (y >= c.hi) {
        out.push_back(c);
        return;
    }
    if (y < c.lo) {
        return;
    }
    if (y == c.lo) {
        out.push_back(FiniteBlock{{c.lo}});
        return;
    }
    if (depth >= kCantorCutDepth) {
        throw CutNotRepresentable("cut at " + y.str() + " is not a gap point of " + describeBlock(c));
    }
    CantorGeometry g = geometry(c);
    for (int i = 0; i < c.pieces; ++i) {
        CantorBlock sub = subPiece(c, g, i);
        if (y >= sub.hi) {
            out.push_back(sub);
        } else if (y >= sub.lo) {
            cantorCutBelow(sub, y, depth + 1, out);
            return;
        } else {
            return;
        }
    }
}

bool cantorNear(const CantorBlock& c, const Rational& x, const Rational& e, int depth)
{
    if (x + e <= c.lo || x - e >= c.hi) {
        return false;
    }
    if ((x - e < c.lo && c.lo < x + e) || (x - e < c.hi && c.hi < x + e)) {
        return true;
    }
    if (depth > 512) {
        throw MembershipUndecided("distance to " + describeBlock(c) + " undecided");
    }
    CantorGeometry g = geometry(c);
    for (int i = 0; i < c.pieces; ++i) {
        if (cantorNear(subPiece(c, g, i), x, e, depth + 1)) {
            return true;
        }
    }
    return false;
}

std::vector<Block> cutBelowBlock(const Block& b, const Rational& y)
{
    return std::visit(
        Overloaded{
            [&](const FiniteBlock& f) -> std::vector<Block> {
                FiniteBlock out;
                for (const auto& p : f.points) {
                    if (p <= y) {
                        out.points.push_back(p);
                    }
                }
                if (out.points.empty()) {
                    return {};
                }
                return {out};
            },
            [&](const GeomSeqBlock& g) -> std::vector<Block> {
                if (g.scale.sign() > 0) {
                    Rational d = y - g.anchor;
                    if (d.sign() <= 0) {
                        return {};
                    }
                    Rational p = g.scale * g.ratio;
                    if (p <= d) {
                        return {g};
                    }
                    while (p > d) {
                        p *= g.ratio;
                    }
                    return {GeomSeqBlock{g.anchor, p / g.ratio, g.ratio}};
                }
                if (y >= g.anchor) {
                    return {g};
                }
                Rational d = g.anchor - y;
                Rational w = g.scale.abs();
                FiniteBlock out;
                for (Rational p = w * g.ratio; p >= d; p *= g.ratio) {
                    out.points.push_back(g.anchor - p);
                }
                if (out.points.empty()) {
                    return {};
                }
                std::sort(out.points.begin(), out.points.end());
                return {out};
            },
            [&](const TowerBlock& t) -> std::vector<Block> {
                Rational s = (y - t.anchor) / t.scale;
                std::vector<TowerPiece> pieces = t.scale.sign() > 0 ? towerCutBelowStd(t.level, t.ratio, s)
                                                                    : towerCutAboveStd(t.level, t.ratio, s);
                std::vector<Block> out;
                for (const auto& p : pieces) {
                    Rational at = t.anchor + t.scale * p.offset;
                    if (p.level == 0) {
                        out.push_back(FiniteBlock{{at}});
                    } else {
                        out.push_back(TowerBlock{p.level, at, t.ratio, t.scale * p.scale});
                    }
                }
                return out;
            },
            [&](const IntervalBlock& iv) -> std::vector<Block> {
                if (y < iv.lo) {
                    return {};
                }
                if (y == iv.lo) {
                    return {FiniteBlock{{iv.lo}}};
                }
                if (y >= iv.hi) {
                    return {iv};
                }
                return {IntervalBlock{iv.lo, y}};
            },
            [&](const CantorBlock& c) -> std::vector<Block> {
                std::vector<Block> out;
                cantorCutBelow(c, y, 0, out);
                return out;
            },
        },
        b);
}

std::vector<Block> cutAboveBlock(const Block& b, const Rational& y)
{
    std::vector<Block> out;
    for (const auto& piece : cutBelowBlock(reflectBlock(b), -y)) {
        out.push_back(reflectBlock(piece));
    }
    return out;
}

std::vector<Block> evaluate(const SetExpr& e)
{
    switch (e.kind) {
    case SetExpr::Kind::Leaf:
        validate(e.block);
        return {e.block};
    case SetExpr::Kind::Union: {
        std::vector<Block> out;
        for (const auto& c : e.children) {
            auto part = evaluate(c);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    case SetExpr::Kind::Translate: {
        std::vector<Block> out;
        for (const auto& b : evaluate(e.children.at(0))) {
            out.push_back(translateBlock(b, e.param));
        }
        return out;
    }
    case SetExpr::Kind::CutBelow:
    case SetExpr::Kind::CutAbove: {
        std::vector<Block> out;
        bool below = e.kind == SetExpr::Kind::CutBelow;
        for (const auto& b : evaluate(e.children.at(0))) {
            auto part = below ? cutBelowBlock(b, e.param) : cutAboveBlock(b, e.param);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    }
    return {};
}

bool hullsDisjoint(const Block& a, const Block& b)
{
    return blockSup(a) < blockInf(b) || blockSup(b) < blockInf(a);
}

bool hullInside(const Block& inner, const IntervalBlock& iv)
{
    return iv.lo <= blockInf(inner) && blockSup(inner) <= iv.hi;
}

bool blockNear(const Block& b, const Rational& x, const Rational& eps)
{
    return std::visit(
        Overloaded{
            [&](const FiniteBlock& f) {
                auto it = std::lower_bound(f.points.begin(), f.points.end(), x);
                if (it != f.points.end() && (*it - x) < eps) {
                    return true;
                }
                return it != f.points.begin() && (x - *std::prev(it)) < eps;
            },
            [&](const GeomSeqBlock& g) {
                return towerNearStd(1, g.ratio, (x - g.anchor) / g.scale, eps / g.scale.abs());
            },
            [&](const TowerBlock& t) {
                return towerNearStd(t.level, t.ratio, (x - t.anchor) / t.scale, eps / t.scale.abs());
            },
            [&](const IntervalBlock& iv) { return x + eps > iv.lo && x - eps < iv.hi; },
            [&](const CantorBlock& c) { return cantorNear(c, x, eps, 0); },
        },
        b);
}

// Prime factorization of |n| as exponent map; unfactored residues keep their
// decimal string as key.
void factorInto(mpz_class n, int sign, std::map<std::string, long>& exps)
{
    n = abs(n);
    for (unsigned long p = 2; p < 100000 && n > 1; ++p) {
        if (p * p > n) {
            break;
        }
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            exps[std::to_string(p)] += sign;
        }
    }
    if (n > 1) {
        exps[n.get_str()] += sign;
    }
}

std::map<std::string, long> logCoefficients(const Rational& q)
{
    std::map<std::string, long> exps;
    factorInto(q.num(), 1, exps);
    factorInto(q.den(), -1, exps);
    std::erase_if(exps, [](const auto& kv) { return kv.second == 0; });
    return exps;
}

// Formal expansion of ln(a) * ln(b) over pairs of prime symbols.
std::map<std::pair<std::string, std::string>, long> logProduct(const Rational& a, const Rational& b)
{
    std::map<std::pair<std::string, std::string>, long> out;
    for (const auto& [p, e] : logCoefficients(a)) {
        for (const auto& [q, f] : logCoefficients(b)) {
            auto key = p < q ? std::make_pair(p, q) : std::make_pair(q, p);
            out[key] += e * f;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Rational intPow(long m, long e)
{
    Rational r = Rational(m).pow(static_cast<unsigned long>(std::labs(e)));
    return e >= 0 ? r : r.inverse();
}

} // namespace

std::optional<long> integerLog(const Rational& q, const Rational& base)
{
    if (q == Rational(1)) {
        return 0;
    }
    if (q.sign() <= 0 || base <= Rational(1)) {
        return std::nullopt;
    }
    Rational x = q;
    long e = 0;
    if (x > Rational(1)) {
        while (x > Rational(1) && e < 4096) {
            x /= base;
            ++e;
        }
    } else {
        while (x < Rational(1) && e > -4096) {
            x *= base;
            --e;
        }
    }
    if (x == Rational(1)) {
        return e;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

int variantRank(const Block& b) { return static_cast<int>(b.index()); }

bool isCountable(const Block& b)
{
    return std::holds_alternative<FiniteBlock>(b) || std::holds_alternative<GeomSeqBlock>(b) ||
           std::holds_alternative<TowerBlock>(b);
}

Rational blockInf(const Block& b)
{
    return std::visit(Overloaded{
                          [](const FiniteBlock& f) { return f.points.front(); },
                          [](const GeomSeqBlock& g) {
                              return g.scale.sign() > 0 ? g.anchor : g.anchor + g.scale * g.ratio;
                          },
                          [](const TowerBlock& t) {
                              return t.scale.sign() > 0 ? t.anchor
                                                        : t.anchor + t.scale * towerMax(t.level, t.ratio);
                          },
                          [](const IntervalBlock& iv) { return iv.lo; },
                          [](const CantorBlock& c) { return c.lo; },
                      },
                      b);
}

Rational blockSup(const Block& b)
{
    return std::visit(Overloaded{
                          [](const FiniteBlock& f) { return f.points.back(); },
                          [](const GeomSeqBlock& g) {
                              return g.scale.sign() > 0 ? g.anchor + g.scale * g.ratio : g.anchor;
                          },
                          [](const TowerBlock& t) {
                              return t.scale.sign() > 0 ? t.anchor + t.scale * towerMax(t.level, t.ratio)
                                                        : t.anchor;
                          },
                          [](const IntervalBlock& iv) { return iv.hi; },
                          [](const CantorBlock& c) { return c.hi; },
                      },
                      b);
}

void validate(const Block& b)
{
    std::visit(Overloaded{
                   [](const FiniteBlock& f) {
                       if (f.points.empty()) {
                           throw ValidationError("finite block needs at least one point");
                       }
                   },
                   [](const GeomSeqBlock& g) {
                       if (g.scale.isZero()) {
                           throw ValidationError("seq scale must be nonzero");
                       }
                       if (g.ratio.sign() <= 0 || g.ratio >= Rational(1)) {
                           throw ValidationError("seq ratio must lie in (0, 1)");
                       }
                   },
                   [](const TowerBlock& t) {
                       if (t.level < 1) {
                           throw ValidationError("tower level must be >= 1");
                       }
                       if (t.ratio.sign() <= 0 || t.ratio >= Rational(1, 3)) {
                           throw ValidationError("tower ratio must lie in (0, 1/3)");
                       }
                       if (t.scale.isZero()) {
                           throw ValidationError("tower scale must be nonzero");
                       }
                   },
                   [](const IntervalBlock& iv) {
                       if (!(iv.lo < iv.hi)) {
                           throw ValidationError("interval needs lo < hi");
                       }
                   },
                   [](const CantorBlock& c) {
                       if (c.pieces < 2) {
                           throw ValidationError("cantor needs at least 2 pieces");
                       }
                       if (!(c.lo < c.hi)) {
                           throw ValidationError("cantor needs lo < hi");
                       }
                       if (c.ratio.sign() <= 0 || c.ratio >= Rational(1, c.pieces)) {
                           throw ValidationError("cantor ratio must lie in (0, 1/pieces)");
                       }
                   },
               },
               b);
}

Block translateBlock(const Block& b, const Rational& x)
{
    return std::visit(Overloaded{
                          [&](const FiniteBlock& f) -> Block {
                              FiniteBlock out = f;
                              for (auto& p : out.points) {
                                  p += x;
                              }
                              return out;
                          },
                          [&](const GeomSeqBlock& g) -> Block { return GeomSeqBlock{g.anchor + x, g.scale, g.ratio}; },
                          [&](const TowerBlock& t) -> Block {
                              return TowerBlock{t.level, t.anchor + x, t.ratio, t.scale};
                          },
                          [&](const IntervalBlock& iv) -> Block { return IntervalBlock{iv.lo + x, iv.hi + x}; },
                          [&](const CantorBlock& c) -> Block {
                              return CantorBlock{c.lo + x, c.hi + x, c.pieces, c.ratio};
                          },
                      },
                      b);
}

Block reflectBlock(const Block& b)
{
    return std::visit(Overloaded{
                          [](const FiniteBlock& f) -> Block {
                              FiniteBlock out;
                              for (auto it = f.points.rbegin(); it != f.points.rend(); ++it) {
                                  out.points.push_back(-*it);
                              }
                              return out;
                          },
                          [](const GeomSeqBlock& g) -> Block { return GeomSeqBlock{-g.anchor, -g.scale, g.ratio}; },
                          [](const TowerBlock& t) -> Block {
                              return TowerBlock{t.level, -t.anchor, t.ratio, -t.scale};
                          },
                          [](const IntervalBlock& iv) -> Block { return IntervalBlock{-iv.hi, -iv.lo}; },
                          [](const CantorBlock& c) -> Block { return CantorBlock{-c.hi, -c.lo, c.pieces, c.ratio}; },
                      },
                      b);
}

bool blockLess(const Block& a, const Block& b)
{
    if (variantRank(a) != variantRank(b)) {
        return variantRank(a) < variantRank(b);
    }
    if (auto c = blockInf(a) <=> blockInf(b); c != 0) {
        return c < 0;
    }
    if (auto c = blockSup(a) <=> blockSup(b); c != 0) {
        return c < 0;
    }
    return a < b;
}

// ---------------------------------------------------------------------------

SetExpr SetExpr::leaf(Block b)
{
    SetExpr e;
    e.kind = Kind::Leaf;
    e.block = std::move(b);
    return e;
}

SetExpr SetExpr::unite(std::vector<SetExpr> parts)
{
    if (parts.size() == 1) {
        return std::move(parts.front());
    }
    SetExpr e;
    e.kind = Kind::Union;
    e.children = std::move(parts);
    return e;
}

namespace {
SetExpr unary(SetExpr::Kind kind, SetExpr child, Rational p)
{
    SetExpr e;
    e.kind = kind;
    e.children.push_back(std::move(child));
    e.param = std::move(p);
    return e;
}
} // namespace

SetExpr SetExpr::translate(SetExpr child, Rational x) { return unary(Kind::Translate, std::move(child), std::move(x)); }
SetExpr SetExpr::cutBelow(SetExpr child, Rational y) { return unary(Kind::CutBelow, std::move(child), std::move(y)); }
SetExpr SetExpr::cutAbove(SetExpr child, Rational y) { return unary(Kind::CutAbove, std::move(child), std::move(y)); }

SetExpr finite(std::vector<Rational> points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Block b = FiniteBlock{std::move(points)};
    validate(b);
    return SetExpr::leaf(std::move(b));
}

SetExpr geomSeq(Rational anchor, Rational scale, Rational ratio)
{
    Block b = GeomSeqBlock{std::move(anchor), std::move(scale), std::move(ratio)};
    validate(b);
    return SetExpr::leaf(std::move(b));
}

SetExpr tower(int level, Rational anchor, Rational ratio, Rational scale)
{
    Block b = TowerBlock{level, std::move(anchor), std::move(ratio), std::move(scale)};
    validate(b);
    return SetExpr::leaf(std::move(b));
}

SetExpr interval(Rational lo, Rational hi)
{
    Block b = IntervalBlock{std::move(lo), std::move(hi)};
    validate(b);
    return SetExpr::leaf(std::move(b));
}

SetExpr cantor(Rational lo, Rational hi, int pieces, Rational ratio)
{
    Block b = CantorBlock{std::move(lo), std::move(hi), pieces, std::move(ratio)};
    validate(b);
    return SetExpr::leaf(std::move(b));
}

// ---------------------------------------------------------------------------

BlockSet BlockSet::fromBlocks(std::vector<Block> raw)
{
    std::vector<Rational> points;
    std::vector<IntervalBlock> intervals;
    std::vector<Block> others;
    for (auto& b : raw) {
        if (auto* f = std::get_if<FiniteBlock>(&b)) {
            points.insert(points.end(), f->points.begin(), f->points.end());
        } else if (auto* t = std::get_if<TowerBlock>(&b); t && t->level == 1) {
            points.push_back(t->anchor);
            others.push_back(GeomSeqBlock{t->anchor, t->scale, t->ratio});
        } else if (auto* iv = std::get_if<IntervalBlock>(&b)) {
            intervals.push_back(*iv);
        } else {
            others.push_back(std::move(b));
        }
    }

    std::sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    std::vector<IntervalBlock> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }

    std::vector<Block> kept;
    for (auto& b : others) {
        bool covered = std::any_of(merged.begin(), merged.end(), [&](const auto& iv) { return hullInside(b, iv); });
        if (!covered) {
            kept.push_back(std::move(b));
        }
    }
    for (const auto& iv : merged) {
        kept.push_back(iv);
    }
    std::sort(kept.begin(), kept.end(), blockLess);
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::erase_if(points, [&](const Rational& p) {
        return std::any_of(kept.begin(), kept.end(), [&](const Block& b) {
            try {
                return blockContains(b, p);
            } catch (const MembershipUndecided&) {
                return false;
            }
        });
    });

    BlockSet out;
    if (!points.empty()) {
        out.blocks_.push_back(FiniteBlock{std::move(points)});
    }
    for (auto& b : kept) {
        out.blocks_.push_back(std::move(b));
    }
    return out;
}

bool BlockSet::isFinite() const
{
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const Block& b) { return std::holds_alternative<FiniteBlock>(b); });
}

std::vector<Rational> BlockSet::finitePoints() const
{
    std::vector<Rational> out;
    for (const auto& b : blocks_) {
        if (const auto* f = std::get_if<FiniteBlock>(&b)) {
            out.insert(out.end(), f->points.begin(), f->points.end());
        }
    }
    return out;
}

std::size_t BlockSet::cardinality() const
{
    if (!isFinite()) {
        throw DomainViolation("cardinality of an infinite set");
    }
    return finitePoints().size();
}

SetExpr BlockSet::toExpr() const
{
    std::vector<SetExpr> parts;
    for (const auto& b : blocks_) {
        parts.push_back(SetExpr::leaf(b));
    }
    if (parts.empty()) {
        throw EmptyResult();
    }
    return SetExpr::unite(std::move(parts));
}

BlockSet normalize(const SetExpr& e)
{
    BlockSet out = BlockSet::fromBlocks(evaluate(e));
    if (out.empty()) {
        throw EmptyResult();
    }
    return out;
}

BlockSet translate(const BlockSet& h, const Rational& x)
{
    std::vector<Block> out;
    for (const auto& b : h.blocks()) {
        out.push_back(translateBlock(b, x));
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet reflect(const BlockSet& h)
{
    std::vector<Block> out;
    for (const auto& b : h.blocks()) {
        out.push_back(reflectBlock(b));
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet unite(const BlockSet& a, const BlockSet& b)
{
    std::vector<Block> out = a.blocks();
    out.insert(out.end(), b.blocks().begin(), b.blocks().end());
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet cutBelow(const BlockSet& h, const Rational& y)
{
    std::vector<Block> out;
    for (const auto& b : h.blocks()) {
        auto part = cutBelowBlock(b, y);
        out.insert(out.end(), part.begin(), part.end());
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet cutAbove(const BlockSet& h, const Rational& y)
{
    std::vector<Block> out;
    for (const auto& b : h.blocks()) {
        auto part = cutAboveBlock(b, y);
        out.insert(out.end(), part.begin(), part.end());
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet derivedSet(const BlockSet& h)
{
    std::vector<Block> out;
    for (const auto& b : h.blocks()) {
        std::visit(Overloaded{
                       [](const FiniteBlock&) {},
                       [&](const GeomSeqBlock& g) { out.push_back(FiniteBlock{{g.anchor}}); },
                       [&](const TowerBlock& t) {
                           if (t.level <= 1) {
                               out.push_back(FiniteBlock{{t.anchor}});
                           } else {
                               out.push_back(TowerBlock{t.level - 1, t.anchor, t.ratio, t.scale});
                           }
                       },
                       [&](const IntervalBlock& iv) { out.push_back(iv); },
                       [&](const CantorBlock& c) { out.push_back(c); },
                   },
                   b);
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet derivedSet(const BlockSet& h, int times)
{
    BlockSet cur = h;
    for (int i = 0; i < times && !cur.empty(); ++i) {
        cur = derivedSet(cur);
    }
    return cur;
}

std::optional<int> level(const BlockSet& h)
{
    if (h.empty()) {
        throw DomainViolation("level of the empty set");
    }
    for (const auto& b : h.blocks()) {
        if (std::holds_alternative<IntervalBlock>(b) || std::holds_alternative<CantorBlock>(b)) {
            return std::nullopt;
        }
    }
    int n = 0;
    BlockSet cur = derivedSet(h);
    while (!cur.empty()) {
        ++n;
        cur = derivedSet(cur);
    }
    return n;
}

Bounds bounds(const BlockSet& h)
{
    if (h.empty()) {
        throw DomainViolation("bounds of the empty set");
    }
    auto hull = [](const BlockSet& s) {
        std::pair<Rational, Rational> out{blockInf(s.blocks().front()), blockSup(s.blocks().front())};
        for (const auto& b : s.blocks()) {
            out.first = min(out.first, blockInf(b));
            out.second = max(out.second, blockSup(b));
        }
        return out;
    };
    auto [inf, sup] = hull(h);
    Bounds out{inf, sup, std::nullopt, std::nullopt};
    if (!h.isFinite()) {
        auto [accInf, accSup] = hull(derivedSet(h));
        out.accInf = accInf;
        out.accSup = accSup;
    }
    return out;
}

bool withinDistance(const BlockSet& s, const Rational& x, const Rational& eps)
{
    return std::any_of(s.blocks().begin(), s.blocks().end(), [&](const Block& b) { return blockNear(b, x, eps); });
}

std::vector<Rational> outsideNeighbourhood(const std::vector<Rational>& points, const BlockSet& acc,
                                           const Rational& eps)
{
    std::vector<Rational> out;
    for (const auto& p : points) {
        if (!withinDistance(acc, p, eps)) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Rational> isolatedOutside(const BlockSet& h, const Rational& eps)
{
    if (eps.sign() <= 0) {
        throw DomainViolation("isolatedOutside needs eps > 0");
    }
    // Candidates from a sequence or tower are enumerated at distance >= eps
    // from that block's own accumulation points (the nearest one is the sum
    // without its last term), so only the other blocks need a distance test.
    const auto& blocks = h.blocks();
    std::vector<BlockSet> acc;
    for (const auto& b : blocks) {
        acc.push_back(derivedSet(BlockSet::fromBlocks({b})));
    }
    std::vector<Rational> out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::vector<Rational> candidates;
        std::visit(Overloaded{
                       [&](const FiniteBlock& f) { candidates = f.points; },
                       [&](const GeomSeqBlock& g) {
                           Rational w = g.scale.abs();
                           for (Rational p = g.ratio; w * p >= eps; p *= g.ratio) {
                               candidates.push_back(g.anchor + g.scale * p);
                           }
                       },
                       [&](const TowerBlock& t) {
                           std::vector<Rational> sums;
                           enumerateTowerTop(t.level, t.ratio, t.scale.abs(), eps, 1, Rational(0), t.ratio, sums);
                           for (const auto& s : sums) {
                               candidates.push_back(t.anchor + t.scale * s);
                           }
                       },
                       [](const IntervalBlock&) {},
                       [](const CantorBlock&) {},
                   },
                   blocks[i]);
        for (const auto& p : candidates) {
            bool near = false;
            for (std::size_t j = 0; j < blocks.size() && !near; ++j) {
                near = j != i && withinDistance(acc[j], p, eps);
            }
            if (!near) {
                out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool blockContains(const Block& b, const Rational& x, const MembershipOptions& opts)
{
    return std::visit(
        Overloaded{
            [&](const FiniteBlock& f) { return std::binary_search(f.points.begin(), f.points.end(), x); },
            [&](const GeomSeqBlock& g) {
                Rational t = (x - g.anchor) / g.scale;
                if (t.sign() <= 0 || t > g.ratio) {
                    return false;
                }
                Rational p = g.ratio;
                while (p > t) {
                    p *= g.ratio;
                }
                return p == t;
            },
            [&](const TowerBlock& t) { return towerContainsStd(t.level, t.ratio, (x - t.anchor) / t.scale); },
            [&](const IntervalBlock& iv) { return iv.lo <= x && x <= iv.hi; },
            [&](const CantorBlock& c) {
                if (x < c.lo || x > c.hi) {
                    return false;
                }
                Rational len = c.hi - c.lo;
                Rational u = (x - c.lo) / len;
                Rational gap = (Rational(1) - c.ratio * Rational(c.pieces)) / Rational(c.pieces - 1);
                Rational step = c.ratio + gap;
                std::set<Rational> seen;
                for (int depth = 0; depth < opts.cantorDepth; ++depth) {
                    if (u.isZero() || u == Rational(1)) {
                        return true;
                    }
                    if (!seen.insert(u).second) {
                        return true; // periodic orbit stays inside
                    }
                    bool found = false;
                    for (int i = 0; i < c.pieces; ++i) {
                        Rational start = step * Rational(i);
                        if (start <= u && u <= start + c.ratio) {
                            u = (u - start) / c.ratio;
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        return false;
                    }
                }
                throw MembershipUndecided("membership of " + x.str() + " in " + describeBlock(c) +
                                          " undecided at depth " + std::to_string(opts.cantorDepth));
            },
        },
        b);
}

bool contains(const BlockSet& h, const Rational& x, const MembershipOptions& opts)
{
    return std::any_of(h.blocks().begin(), h.blocks().end(),
                       [&](const Block& b) { return blockContains(b, x, opts); });
}

namespace {

std::vector<Block> clipToInterval(const Block& b, const IntervalBlock& iv)
{
    std::vector<Block> out;
    try {
        for (const auto& piece : cutBelowBlock(b, iv.hi)) {
            auto part = cutAboveBlock(piece, iv.lo);
            out.insert(out.end(), part.begin(), part.end());
        }
    } catch (const CutNotRepresentable& e) {
        throw IntersectionNotRepresentable(e.what());
    }
    return out;
}

// Two sequences with distinct anchors can only share points at distance at
// least half the anchor gap from one of the anchors, and there are finitely
// many of those.
std::vector<Block> intersectSequences(const GeomSeqBlock& s, const GeomSeqBlock& t)
{
    if (s.anchor == t.anchor) {
        if (s.scale.sign() != t.scale.sign()) {
            return {};
        }
        throw IntersectionNotRepresentable("intersection of sequences with a common anchor " + s.anchor.str());
    }
    Rational delta = (s.anchor - t.anchor).abs() / Rational(2);
    FiniteBlock out;
    auto scan = [&](const GeomSeqBlock& u, const Block& other) {
        for (Rational step = u.scale * u.ratio; step.abs() >= delta; step *= u.ratio) {
            Rational p = u.anchor + step;
            if (blockContains(other, p)) {
                out.points.push_back(p);
            }
        }
    };
    scan(s, t);
    scan(t, s);
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    if (out.points.empty()) {
        return {};
    }
    return {out};
}

std::vector<Block> intersectBlocks(const Block& a, const Block& b)
{
    if (hullsDisjoint(a, b)) {
        return {};
    }
    if (const auto* f = std::get_if<FiniteBlock>(&a)) {
        FiniteBlock out;
        for (const auto& p : f->points) {
            try {
                if (blockContains(b, p)) {
                    out.points.push_back(p);
                }
            } catch (const MembershipUndecided& e) {
                throw IntersectionNotRepresentable(e.what());
            }
        }
        if (out.points.empty()) {
            return {};
        }
        return {out};
    }
    if (std::holds_alternative<FiniteBlock>(b)) {
        return intersectBlocks(b, a);
    }
    if (a == b) {
        return {a};
    }
    if (const auto* iv = std::get_if<IntervalBlock>(&a)) {
        return clipToInterval(b, *iv);
    }
    if (const auto* iv = std::get_if<IntervalBlock>(&b)) {
        return clipToInterval(a, *iv);
    }
    const auto* s1 = std::get_if<GeomSeqBlock>(&a);
    const auto* s2 = std::get_if<GeomSeqBlock>(&b);
    if (s1 != nullptr && s2 != nullptr) {
        return intersectSequences(*s1, *s2);
    }
    throw IntersectionNotRepresentable("intersection of " + describeBlock(a) + " and " + describeBlock(b));
}

// Block minus a set; throws DifferenceNotRepresentable.
std::vector<Block> subtractFrom(const Block& b, const BlockSet& v)
{
    std::vector<const Block*> touching;
    for (const auto& c : v.blocks()) {
        if (!hullsDisjoint(b, c)) {
            touching.push_back(&c);
        }
    }
    if (touching.empty()) {
        return {b};
    }
    if (const auto* f = std::get_if<FiniteBlock>(&b)) {
        FiniteBlock out;
        for (const auto& p : f->points) {
            bool removed = false;
            for (const auto* c : touching) {
                try {
                    removed = removed || blockContains(*c, p);
                } catch (const MembershipUndecided& e) {
                    throw DifferenceNotRepresentable(e.what());
                }
            }
            if (!removed) {
                out.points.push_back(p);
            }
        }
        if (out.points.empty()) {
            return {};
        }
        return {out};
    }
    for (const auto* c : touching) {
        if (*c == b) {
            return {};
        }
    }
    // Remaining case: only finitely many points of v may meet b.
    std::vector<Rational> hits;
    for (const auto* c : touching) {
        const auto* f = std::get_if<FiniteBlock>(c);
        if (f == nullptr) {
            throw DifferenceNotRepresentable("difference of " + describeBlock(b) + " and " + describeBlock(*c));
        }
        for (const auto& p : f->points) {
            if (blockContains(b, p)) {
                hits.push_back(p);
            }
        }
    }
    if (hits.empty()) {
        return {b};
    }
    const auto* g = std::get_if<GeomSeqBlock>(&b);
    if (g == nullptr) {
        throw DifferenceNotRepresentable("removing points from " + describeBlock(b));
    }
    // Split the sequence into an explicit head and an untouched tail.
    std::sort(hits.begin(), hits.end());
    FiniteBlock head;
    Rational p = g->ratio;
    std::size_t removed = 0;
    while (removed < hits.size()) {
        Rational point = g->anchor + g->scale * p;
        if (std::binary_search(hits.begin(), hits.end(), point)) {
            ++removed;
        } else {
            head.points.push_back(point);
        }
        p *= g->ratio;
    }
    std::vector<Block> out{GeomSeqBlock{g->anchor, g->scale * p / g->ratio, g->ratio}};
    if (!head.points.empty()) {
        std::sort(head.points.begin(), head.points.end());
        out.push_back(head);
    }
    return out;
}

} // namespace

BlockSet intersect(const BlockSet& a, const BlockSet& b)
{
    std::vector<Block> out;
    for (const auto& x : a.blocks()) {
        for (const auto& y : b.blocks()) {
            auto part = intersectBlocks(x, y);
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return BlockSet::fromBlocks(std::move(out));
}

BlockSet difference(const BlockSet& a, const BlockSet& b)
{
    std::vector<Block> out;
    for (const auto& x : a.blocks()) {
        auto part = subtractFrom(x, b);
        out.insert(out.end(), part.begin(), part.end());
    }
    return BlockSet::fromBlocks(std::move(out));
}

bool disjoint(const BlockSet& a, const BlockSet& b)
{
    for (const auto& x : a.blocks()) {
        for (const auto& y : b.blocks()) {
            if (hullsDisjoint(x, y)) {
                continue;
            }
            try {
                if (!intersectBlocks(x, y).empty()) {
                    return false;
                }
            } catch (const IntersectionNotRepresentable&) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

double DimValue::toDouble() const
{
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::One:
        return 1.0;
    case Kind::LogRatio:
        return std::log(static_cast<double>(pieces)) / std::log(invRatio.toDouble());
    }
    return 0.0;
}

std::string DimValue::str() const
{
    switch (kind) {
    case Kind::Zero:
        return "0";
    case Kind::One:
        return "1";
    case Kind::LogRatio:
        return "log(" + std::to_string(pieces) + ")/log(" + invRatio.str() + ")";
    }
    return "?";
}

int compareDims(const DimValue& a, const DimValue& b)
{
    auto rank = [](DimValue::Kind k) {
        return k == DimValue::Kind::Zero ? 0 : (k == DimValue::Kind::LogRatio ? 1 : 2);
    };
    if (rank(a.kind) != rank(b.kind)) {
        return rank(a.kind) < rank(b.kind) ? -1 : 1;
    }
    if (a.kind != DimValue::Kind::LogRatio || a == b) {
        return 0;
    }
    // sign(ln m1 ln i2 - ln m2 ln i1); equal when the forms agree symbolically.
    if (logProduct(Rational(a.pieces), b.invRatio) == logProduct(Rational(b.pieces), a.invRatio)) {
        return 0;
    }
    long double d = std::log(static_cast<long double>(a.pieces)) * std::log(static_cast<long double>(b.invRatio.toDouble())) -
                    std::log(static_cast<long double>(b.pieces)) * std::log(static_cast<long double>(a.invRatio.toDouble()));
    if (std::fabs(static_cast<double>(d)) > 1e-12) {
        return d < 0 ? -1 : 1;
    }
    throw IncomparableDimensions("cannot separate dimensions " + a.str() + " and " + b.str());
}

DimValue blockDimension(const Block& b)
{
    if (const auto* c = std::get_if<CantorBlock>(&b)) {
        return DimValue::logRatio(c->pieces, c->ratio.inverse());
    }
    if (std::holds_alternative<IntervalBlock>(b)) {
        return DimValue::one();
    }
    return DimValue::zero();
}

DimValue dimension(const BlockSet& h)
{
    if (h.empty()) {
        throw DomainViolation("dimension of the empty set");
    }
    DimValue best = blockDimension(h.blocks().front());
    for (const auto& b : h.blocks()) {
        DimValue d = blockDimension(b);
        if (compareDims(d, best) > 0) {
            best = d;
        }
    }
    return best;
}

Weight measureAt(const BlockSet& h, const DimValue& s)
{
    Weight w;
    w.dim = s;
    w.coeff = Rational(0);
    switch (s.kind) {
    case DimValue::Kind::Zero:
        for (const auto& b : h.blocks()) {
            if (const auto* f = std::get_if<FiniteBlock>(&b)) {
                w.coeff += Rational(static_cast<long>(f->points.size()));
            } else if (isCountable(b)) {
                w.infinite = true;
            }
        }
        w.value = w.infinite ? HUGE_VAL : w.coeff.toDouble();
        return w;
    case DimValue::Kind::One:
        for (const auto& b : h.blocks()) {
            if (const auto* iv = std::get_if<IntervalBlock>(&b)) {
                w.coeff += iv->hi - iv->lo;
            }
        }
        w.value = w.coeff.toDouble();
        return w;
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
                throw DomainViolation("overlapping fractal blocks " + describeBlock(*top[i]) + " and " +
                                      describeBlock(*top[j]));
            }
        }
    }
    double sd = s.toDouble();
    double total = 0.0;
    if (!top.empty()) {
        w.base = top.front()->hi - top.front()->lo;
    }
    for (const auto* c : top) {
        Rational len = c->hi - c->lo;
        total += std::pow(len.toDouble(), sd);
        if (w.exact) {
            // len = base * invr^j  =>  len^s = base^s * m^j
            auto j = integerLog(len / w.base, c->ratio.inverse());
            if (j) {
                w.coeff += intPow(c->pieces, *j);
            } else {
                w.exact = false;
            }
        }
    }
    w.value = total;
    if (!w.exact) {
        w.coeff = Rational(0);
    }
    return w;
}

std::optional<int> compareWeights(const Weight& a, const Weight& b)
{
    if (a.dim.kind != b.dim.kind || !(a.dim == b.dim)) {
        int c = compareDims(a.dim, b.dim);
        if (c != 0) {
            throw DomainViolation("weights at different dimensions");
        }
    }
    if (a.infinite || b.infinite) {
        if (a.infinite && b.infinite) {
            return std::nullopt;
        }
        return a.infinite ? 1 : -1;
    }
    if (a.exact && b.exact) {
        if (a.base == b.base || a.dim.kind != DimValue::Kind::LogRatio) {
            auto c = a.coeff <=> b.coeff;
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        if (a.coeff.isZero() || b.coeff.isZero()) {
            auto c = a.coeff <=> b.coeff;
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        if (auto j = integerLog(a.base / b.base, a.dim.invRatio)) {
            Rational lhs = a.coeff * intPow(a.dim.pieces, *j);
            auto c = lhs <=> b.coeff;
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
    }
    double scale = std::max({std::fabs(a.value), std::fabs(b.value), 1.0});
    double d = a.value - b.value;
    if (std::fabs(d) > 1e-12 * scale) {
        return d < 0 ? -1 : 1;
    }
    return std::nullopt;
}

std::string describeBlock(const Block& b)
{
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const FiniteBlock& f) {
                       os << "{";
                       for (std::size_t i = 0; i < f.points.size(); ++i) {
                           os << (i ? ", " : "") << f.points[i];
                       }
                       os << "}";
                   },
                   [&](const GeomSeqBlock& g) { os << "seq(" << g.anchor << ", " << g.scale << ", " << g.ratio << ")"; },
                   [&](const TowerBlock& t) {
                       os << "tower(" << t.level << ", " << t.anchor << ", " << t.ratio;
                       if (t.scale != Rational(1)) {
                           os << ", " << t.scale;
                       }
                       os << ")";
                   },
                   [&](const IntervalBlock& iv) { os << "[" << iv.lo << ", " << iv.hi << "]"; },
                   [&](const CantorBlock& c) {
                       os << "cantor(" << c.lo << ", " << c.hi << ", " << c.pieces << ", " << c.ratio << ")";
                   },
               },
               b);
    return os.str();
}

std::string describe(const BlockSet& h)
{
    if (h.empty()) {
        return "{}";
    }
    std::string out;
    for (const auto& b : h.blocks()) {
        out += (out.empty() ? "" : " U ") + describeBlock(b);
    }
    return out;
}

} // namespace setmeans
