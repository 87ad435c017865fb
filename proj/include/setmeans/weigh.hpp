#ifndef SETMEANS_WEIGH_HPP
#define SETMEANS_WEIGH_HPP

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "setmeans/classify.hpp"

namespace setmeans {

enum class WeightKind { InBound, InLimit, InEquality };

std::string_view toString(WeightKind k);
WeightKind parseWeightKind(std::string_view text); // "bound" | "limit" | "equality"

struct DefectCurve {
    enum class Trend { Bounded, LinearGrowth, ToZero, Inconclusive };

    std::vector<std::pair<Rational, MeanValue>> samples; // ascending x
    Trend trend = Trend::Inconclusive;
    std::optional<double> slope;
};

std::string_view toString(DefectCurve::Trend t);

/// K(h1 ∪ (h2+x)) − (K(h1) + K(h2+x))/2, signed.
MeanValue weightDefect(const BlockSet& h1, const BlockSet& h2, MeanKind kind, const Rational& x,
                       const Config& cfg = {});

/// Shifts ±(D+1)·10^j, j = 0..cfg.xmax, with D the hull diameter of the
/// union of `sets`. Ascending.
std::vector<Rational> shiftGrid(const std::vector<BlockSet>& sets, const Config& cfg);

/// Trend of a sampled curve; each side of x = 0 is judged on its own and the
/// worse side wins.
DefectCurve::Trend classifyTrend(const std::vector<std::pair<Rational, MeanValue>>& samples, double tol,
                                 std::optional<double>* slope = nullptr);

DefectCurve defectCurve(const BlockSet& h1, const BlockSet& h2, MeanKind kind, const Config& cfg = {});

/// Closed form where a characterization applies, else a sampled verdict that
/// can only be NO or INCONCLUSIVE. Throws DomainViolation outside Dom(K).
Verdict equalWeight(const BlockSet& h1, const BlockSet& h2, MeanKind kind, WeightKind wkind,
                    const Config& cfg = {});

/// Sampled verdict only.
Verdict equalWeightSampled(const BlockSet& h1, const BlockSet& h2, MeanKind kind, WeightKind wkind,
                           const Config& cfg = {});

/// K(H1 ∪ H2+x) + K(H2+x ∪ H3+2x) − (K(H1 ∪ H3+2x) + K(H2+x)) over the grid.
DefectCurve transitivityProbe(const BlockSet& h1, const BlockSet& h2, const BlockSet& h3, MeanKind kind,
                              const Config& cfg = {});

/// Equality of the isolated-point growth coefficients; nullopt when they agree
/// numerically but no exact comparison is available.
std::optional<bool> sameIsoGrowth(const IsoGrowth& a, const IsoGrowth& b);

} // namespace setmeans

#endif
