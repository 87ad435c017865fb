#ifndef SETMEANS_SET_CORE_HPP
#define SETMEANS_SET_CORE_HPP

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "setmeans/errors.hpp"
#include "setmeans/rational.hpp"

namespace setmeans {

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

/// Finitely many points, kept sorted and duplicate-free.
struct FiniteBlock {
    std::vector<Rational> points;
    friend auto operator<=>(const FiniteBlock&, const FiniteBlock&) = default;
};

/// {anchor + scale * ratio^n : n >= 1}, converging to the anchor.
struct GeomSeqBlock {
    Rational anchor;
    Rational scale;
    Rational ratio;
    friend auto operator<=>(const GeomSeqBlock&, const GeomSeqBlock&) = default;
};

/// {anchor + scale * (r^n1 + ... + r^nj) : 0 <= j <= level, 1 <= n1 < ... < nj}.
///
/// With ratio < 1/3 the j-fold sums are pairwise distinct and the derived set
/// of a level-k tower is the level-(k-1) tower with the same parameters; the
/// anchor itself (j = 0) belongs to the set.
struct TowerBlock {
    int level = 1;
    Rational anchor;
    Rational ratio;
    Rational scale{1};
    friend auto operator<=>(const TowerBlock&, const TowerBlock&) = default;
};

/// Closed interval [lo, hi] with lo < hi.
struct IntervalBlock {
    Rational lo;
    Rational hi;
    friend auto operator<=>(const IntervalBlock&, const IntervalBlock&) = default;
};

/// Attractor of `pieces` equally spaced similitudes of ratio `ratio` on [lo, hi];
/// the first piece starts at lo and the last ends at hi.
struct CantorBlock {
    Rational lo;
    Rational hi;
    int pieces = 2;
    Rational ratio;
    friend auto operator<=>(const CantorBlock&, const CantorBlock&) = default;
};

using Block = std::variant<FiniteBlock, GeomSeqBlock, TowerBlock, IntervalBlock, CantorBlock>;

/// Ordering rank of a block variant (FINITE < GEOMSEQ < TOWER < INTERVAL < CANTOR).
int variantRank(const Block& b);
bool isCountable(const Block& b);
Rational blockInf(const Block& b);
Rational blockSup(const Block& b);

/// Throws ValidationError when parameters are out of range.
void validate(const Block& b);

Block translateBlock(const Block& b, const Rational& x);
/// Image under x -> -x.
Block reflectBlock(const Block& b);

/// Canonical block order: (variant rank, inf, sup, parameters).
bool blockLess(const Block& a, const Block& b);

// ---------------------------------------------------------------------------
// Expressions and normal forms
// ---------------------------------------------------------------------------

struct SetExpr {
    enum class Kind { Leaf, Union, Translate, CutBelow, CutAbove };

    Kind kind = Kind::Leaf;
    Block block;                   // Leaf
    std::vector<SetExpr> children; // Union: n >= 1, unary nodes: exactly 1
    Rational param;                // Translate: shift, cuts: cut point

    static SetExpr leaf(Block b);
    static SetExpr unite(std::vector<SetExpr> parts);
    static SetExpr translate(SetExpr child, Rational x);
    static SetExpr cutBelow(SetExpr child, Rational y);
    static SetExpr cutAbove(SetExpr child, Rational y);

    friend bool operator==(const SetExpr&, const SetExpr&) = default;
};

// Convenience constructors (validated).
SetExpr finite(std::vector<Rational> points);
SetExpr geomSeq(Rational anchor, Rational scale, Rational ratio);
SetExpr tower(int level, Rational anchor, Rational ratio, Rational scale = Rational(1));
SetExpr interval(Rational lo, Rational hi);
SetExpr cantor(Rational lo, Rational hi, int pieces, Rational ratio);

/// Normalized finite union of blocks.
///
/// Invariants: a single FINITE block at most, holding no point that lies in
/// another block; overlapping or touching intervals merged; no duplicate
/// blocks; blocks in canonical order.
class BlockSet {
public:
    BlockSet() = default;

    /// Canonicalizes an arbitrary list of blocks (empty result allowed).
    static BlockSet fromBlocks(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }
    bool isFinite() const;
    /// All points when the set is finite.
    std::vector<Rational> finitePoints() const;
    std::size_t cardinality() const; // requires isFinite()

    SetExpr toExpr() const;

    friend bool operator==(const BlockSet&, const BlockSet&) = default;

private:
    std::vector<Block> blocks_;
};

/// Evaluates an expression to its normal form. Throws CutNotRepresentable,
/// EmptyResult.
BlockSet normalize(const SetExpr& e);

BlockSet translate(const BlockSet& h, const Rational& x);
BlockSet reflect(const BlockSet& h);
BlockSet unite(const BlockSet& a, const BlockSet& b);
BlockSet cutBelow(const BlockSet& h, const Rational& y); // H ∩ (-inf, y]
BlockSet cutAbove(const BlockSet& h, const Rational& y); // H ∩ [y, +inf)

/// Set of accumulation points.
BlockSet derivedSet(const BlockSet& h);
BlockSet derivedSet(const BlockSet& h, int times);

/// Cantor-Bendixson level; std::nullopt means infinite.
std::optional<int> level(const BlockSet& h);

struct Bounds {
    Rational inf;
    Rational sup;
    std::optional<Rational> accInf;
    std::optional<Rational> accSup;
};

Bounds bounds(const BlockSet& h);

/// Points of H at distance >= eps from every accumulation point of H, sorted.
std::vector<Rational> isolatedOutside(const BlockSet& h, const Rational& eps);

/// Points of `points` at distance >= eps from `acc` (the open eps-neighbourhood
/// of `acc` is excluded).
std::vector<Rational> outsideNeighbourhood(const std::vector<Rational>& points, const BlockSet& acc,
                                           const Rational& eps);

/// True iff some point of the block set lies at distance < eps from x.
bool withinDistance(const BlockSet& s, const Rational& x, const Rational& eps);

struct MembershipOptions {
    int cantorDepth = 256;
};

bool contains(const BlockSet& h, const Rational& x, const MembershipOptions& opts = {});
bool blockContains(const Block& b, const Rational& x, const MembershipOptions& opts = {});

/// Exact intersection on the decidable fragment; throws IntersectionNotRepresentable.
BlockSet intersect(const BlockSet& a, const BlockSet& b);

/// Exact difference a - b on the decidable fragment; throws DifferenceNotRepresentable.
BlockSet difference(const BlockSet& a, const BlockSet& b);

/// True when the two sets certainly share no point (hull or exact test).
bool disjoint(const BlockSet& a, const BlockSet& b);

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

/// Hausdorff dimension of a block family: 0, 1, or log(m) / log(invRatio).
struct DimValue {
    enum class Kind { Zero, LogRatio, One };
    Kind kind = Kind::Zero;
    int pieces = 0;
    Rational invRatio;

    static DimValue zero() { return {}; }
    static DimValue one() { return {Kind::One, 0, Rational(0)}; }
    static DimValue logRatio(int m, Rational invr) { return {Kind::LogRatio, m, std::move(invr)}; }

    double toDouble() const;
    std::string str() const;
    friend bool operator==(const DimValue&, const DimValue&) = default;
};

/// Three-way comparison; throws IncomparableDimensions when the two values
/// cannot be separated.
int compareDims(const DimValue& a, const DimValue& b);

DimValue blockDimension(const Block& b);
/// Maximum block dimension of a nonempty set.
DimValue dimension(const BlockSet& h);

/// s-dimensional measure of the parts of h of dimension s.
///
/// value = coeff * base^s. `exact` means the coefficient captures every block
/// exactly (weights of distinct lengths are rationally related). `infinite` is
/// set for countably infinite sets at s = 0.
struct Weight {
    DimValue dim;
    Rational coeff;
    Rational base{1};
    bool exact = true;
    bool infinite = false;
    double value = 0.0;
};

Weight measureAt(const BlockSet& h, const DimValue& s);

/// -1, 0, 1, or nullopt when equal-looking values cannot be decided exactly.
std::optional<int> compareWeights(const Weight& a, const Weight& b);

std::string describeBlock(const Block& b);
/// Blocks joined with " U "; "{}" for the empty set.
std::string describe(const BlockSet& h);

/// Exponent e with q = base^e (base > 1), searched for |e| <= 4096.
std::optional<long> integerLog(const Rational& q, const Rational& base);

} // namespace setmeans

#endif
