#ifndef SETMEANS_MEANS_HPP
#define SETMEANS_MEANS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setmeans/set_core.hpp"

namespace setmeans {

enum class MeanKind { Arith, Lis, Acc, Iso, Avg };

std::string_view toString(MeanKind k);
/// Accepts "arith", "lis", "acc", "iso", "avg" (case-insensitive).
std::optional<MeanKind> parseMeanKind(std::string_view s);

/// Exact rational, numeric value with tolerance, or undefined with a reason.
class MeanValue {
public:
    enum class Status { Exact, Approx, Undefined };

    static MeanValue exact(Rational v);
    static MeanValue approx(double v, double tol);
    static MeanValue undefined(std::string reason);

    Status status() const { return status_; }
    bool isExact() const { return status_ == Status::Exact; }
    bool isApprox() const { return status_ == Status::Approx; }
    bool defined() const { return status_ != Status::Undefined; }

    const Rational& value() const; // requires isExact()
    double toDouble() const;        // requires defined()
    double tol() const { return tol_; }
    const std::string& reason() const { return reason_; }

    /// Value usable as a cut point: the exact value, or the simplest rational
    /// within tol of an approximate one.
    Rational cutPoint() const;

    std::string str() const;

    friend bool operator==(const MeanValue&, const MeanValue&) = default;

private:
    Status status_ = Status::Undefined;
    Rational exact_;
    double approx_ = 0.0;
    double tol_ = 0.0;
    std::string reason_;
};

// Arithmetic on mean values; undefined is absorbing, tolerances add up.
MeanValue operator+(const MeanValue& a, const MeanValue& b);
MeanValue operator-(const MeanValue& a, const MeanValue& b);
MeanValue operator*(const MeanValue& a, const Rational& c);
MeanValue operator+(const MeanValue& a, const Rational& c);

/// Exact equality when both are exact, otherwise |a - b| <= slack.
/// Undefined values never compare equal.
bool sameValue(const MeanValue& a, const MeanValue& b, double slack);

struct LadderConfig {
    Rational eps0{1, 2};
    Rational shrink{1, 2};
    int maxSteps = 60;
    double tol = 1e-9;

    /// Throws ValidationError on eps0 <= 0, shrink outside (0,1), maxSteps < 4
    /// or tol <= 0.
    void check() const;
};

/// Options shared by the classifiers, weight testers and roundness checks.
struct Config {
    LadderConfig ladder;
    int xmax = 4;            // largest exponent j of the 10^j sampling grid
    bool crossCheck = false; // attach sampler evidence to closed-form verdicts
};

MeanValue meanOf(const BlockSet& h, MeanKind kind, const LadderConfig& cfg = {});

/// Multiset arithmetic mean; duplicates count.
Rational arithMean(const std::vector<Rational>& points);

MeanValue meanArith(const BlockSet& h);
MeanValue meanLis(const BlockSet& h);
MeanValue meanAcc(const BlockSet& h);
/// Throws DomainViolation when h has interval or Cantor blocks.
MeanValue meanIso(const BlockSet& h, const LadderConfig& cfg = {});
/// Throws IncomparableDimensions.
MeanValue avgMean(const BlockSet& h);

bool inDomain(const BlockSet& h, MeanKind kind, const LadderConfig& cfg = {});

/// One rung of the isolated-point ladder, recorded only when the count grew.
struct LadderRecord {
    Rational eps;
    std::size_t count = 0;
    Rational mean;
    std::optional<Rational> extrapolated;
};

struct IsoLadder {
    std::vector<LadderRecord> records;
    bool converged = false;
    std::optional<Rational> limit;
};

/// Runs the ladder eps_k = eps0 * shrink^k. Throws DomainViolation like meanIso.
IsoLadder isoLadder(const BlockSet& h, const LadderConfig& cfg = {});

/// Value at t = 0 of the quadratic through (t_i, y_i); the t_i must differ.
Rational extrapolateToZero(const std::vector<Rational>& t, const std::vector<Rational>& y);

struct KBounds {
    MeanValue kLiminf;
    MeanValue kLimsup;
    std::vector<std::string> notes;
};

/// K-liminf = sup{x : K(H) = K(H^{+x})}, K-limsup = inf{x : K(H) = K(H^{-x})},
/// searched over a finite lattice of candidate cut points.
KBounds kBounds(const BlockSet& h, MeanKind kind, const LadderConfig& cfg = {});

} // namespace setmeans

#endif
