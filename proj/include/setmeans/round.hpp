#ifndef SETMEANS_ROUND_HPP
#define SETMEANS_ROUND_HPP

#include <string>
#include <utility>
#include <vector>

#include "setmeans/classify.hpp"

namespace setmeans {

/// k = K(H), k1 = K(H^{-k}), k2 = K(H^{+k}); both halves keep k when k ∈ H.
struct RoundReport {
    MeanValue k;
    MeanValue k1;
    MeanValue k2;
    MeanValue defect; // (k1 + k2)/2 − k
    Verdict verdict;
    std::vector<std::pair<std::string, std::string>> details;
};

/// Throws DomainViolation when K(H) is undefined or a half lies outside
/// Dom(K). An ISO half whose ladder does not converge yields INCONCLUSIVE.
RoundReport roundDefect(const BlockSet& h, MeanKind kind, const Config& cfg = {});

/// Decides roundness from the per-mean characterization instead of the defect:
/// the cardinality, measure, top-level or accumulation split at k, and for ISO
/// the half-means or the ratio |P_n|/|S_n| of isolated points on each side.
Verdict roundWitness(const BlockSet& h, MeanKind kind, const Config& cfg = {});

} // namespace setmeans

#endif
