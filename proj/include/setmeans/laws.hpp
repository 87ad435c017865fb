#ifndef SETMEANS_LAWS_HPP
#define SETMEANS_LAWS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setmeans/means.hpp"

namespace setmeans {

enum class LawKind {
    Internal,
    StrongInternal,
    Monotone,
    StrongMonotone,
    DisjointMonotone,
    UnionMonotone,
    DMonotone,
    ShiftInvariant,
    SelfShiftInvariant,
    PartShiftInvariant,
};

/// Upper snake case, e.g. "SELF_SHIFT_INVARIANT".
std::string_view toString(LawKind k);
/// Case-insensitive; '-' and '_' are interchangeable.
std::optional<LawKind> parseLawKind(std::string_view s);
const std::vector<LawKind>& allLaws();

enum class Profile { Finite, Sequences, Towers, Intervals, Cantor, Mixed };

std::string_view toString(Profile p);
std::optional<Profile> parseProfile(std::string_view s);

/// Deterministic corpus of bounded, normalizable expressions. Throws
/// ValidationError when count < 1.
std::vector<SetExpr> genCorpus(std::uint64_t seed, int count, Profile profile);

/// One instantiation of a law: the sets in the order the law names them
/// (H; H1 H2; A B C; L B) and the sampled shifts.
///
/// MONOTONE, STRONG_MONOTONE, DISJOINT_MONOTONE: shifts[0] moves H2.
/// UNION_MONOTONE: shifts move B and C. D_MONOTONE: shifts[0] moves B and
/// shifts[1] is the x of the law. PART_SHIFT_INVARIANT: shifts[0] is x.
struct LawInstance {
    std::vector<SetExpr> sets;
    std::vector<Rational> shifts;
};

struct Violation {
    LawInstance instance;
    std::vector<std::string> inputs;   // rendered sets and shifts
    std::vector<std::string> observed; // "K(...) = value" lines
};

struct LawReport {
    LawKind law = LawKind::Internal;
    MeanKind mean = MeanKind::Arith;
    int trials = 0;  // instances that met the hypotheses
    int skipped = 0; // instances outside the hypotheses or the domain
    std::vector<Violation> violations;
};

enum class TrialOutcome { Skipped, Held, Violated };

struct TrialResult {
    TrialOutcome outcome = TrialOutcome::Skipped;
    std::vector<std::string> observed;
    std::string note; // reason for a skip
};

/// Evaluates one instance. Replaying a recorded violation reproduces it.
TrialResult runTrial(MeanKind mean, LawKind law, const LawInstance& inst, const Config& cfg = {});

/// Instances drawn from the corpus (neighbouring elements form the pairs and
/// triples) with shifts from a fixed-seed generator. Comparisons are exact for
/// exact values and use a 2·tol band otherwise; a comparison inside the band
/// never counts as a violation.
LawReport checkLaw(MeanKind mean, LawKind law, const std::vector<SetExpr>& corpus, const Config& cfg = {});

/// The instances checkLaw evaluates, in order.
std::vector<LawInstance> lawInstances(LawKind law, const std::vector<SetExpr>& corpus);

} // namespace setmeans

#endif
