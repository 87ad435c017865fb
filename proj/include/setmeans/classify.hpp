#ifndef SETMEANS_CLASSIFY_HPP
#define SETMEANS_CLASSIFY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "setmeans/means.hpp"

namespace setmeans {

enum class Answer { Yes, No, Inconclusive };
enum class Method { ClosedForm, Sampler };

std::string_view toString(Answer a);
std::string_view toString(Method m);

/// One sampled comparison: the probe value at shift x against the reference.
struct Evidence {
    Rational x;
    MeanValue lhs;
    MeanValue rhs;
    std::string label;
};

struct Verdict {
    Answer answer = Answer::Inconclusive;
    Method method = Method::ClosedForm;
    std::vector<Evidence> evidence;
    std::vector<double> ratioTrace;
    std::vector<std::string> notes;
};

/// Is v in S_K(h), i.e. does neither h ∪ (v+x) nor h − (v+x) move K(h)?
/// Throws DomainViolation when h is outside Dom(K).
Verdict isSmallFor(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg = {});

/// Is v in B_K(h)? By duality this is isSmallFor(h, v); NO when v is outside
/// Dom(K).
Verdict isBigFor(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg = {});

/// YES iff v is neither small nor big for h.
Verdict comparable(const BlockSet& h, const BlockSet& v, MeanKind kind, const Config& cfg = {});

/// Strong: h1 ∩ h2 lies in the global small family of K. Weak: the
/// intersection is small for both sets. Throws IntersectionNotRepresentable.
Verdict kDisjoint(const BlockSet& h1, const BlockSet& h2, MeanKind kind, bool weak, const Config& cfg = {});

/// Sampling falsifier for v in S_K(h); answers NO with a witness or
/// INCONCLUSIVE.
Verdict sampleSmall(const BlockSet& v, const BlockSet& h, MeanKind kind, const Config& cfg = {});

/// Number of isolated points at distance >= eps from the accumulation points.
std::size_t isolatedCount(const BlockSet& h, const Rational& eps);

/// Dom(K) as used by the classifiers: ISO is checked structurally (infinite,
/// countable), the other means by evaluation.
bool inClassDomain(const BlockSet& h, MeanKind kind, const Config& cfg = {});

/// Largest per-block growth degree (GEOMSEQ 1, TOWER(k) k); an upper bound on
/// the degree of the isolated-point count of h and of any set it contains.
int isoDegreeBound(const BlockSet& h);

/// Growth of |H - S(H', eps)| as eps -> 0 for disjoint-hull countable sets:
/// count ~ coefficient * ln(1/eps)^degree.
struct IsoGrowth {
    int degree = 0;
    double coefficient = 0.0;
    std::vector<std::pair<int, Rational>> terms; // (tower level, ratio) of top-degree blocks
};

/// nullopt when the closed form does not apply: interval or Cantor blocks, or
/// two blocks sharing infinitely many points (or an undecidable intersection).
std::optional<IsoGrowth> isoGrowth(const BlockSet& h);

enum class WitnessKind { Small, Big };

struct IsoWitness {
    BlockSet set;
    std::vector<Rational> stageEps; // eps at which each stage is read
    std::vector<Rational> ratios;   // n_eps / m_eps at those eps
};

/// Truncated constructions of a set that is small (resp. big) for h2 under
/// the isolated-point mean. Throws DomainViolation when h2 is finite or has
/// interval or Cantor blocks, or when depth < 2.
IsoWitness isoWitness(const BlockSet& h2, WitnessKind which, int depth);
BlockSet buildIsoWitness(const BlockSet& h2, WitnessKind which, int depth);

/// Witness points at distance >= eps from h2' divided by |h2 - S(h2', eps)|.
Rational witnessRatio(const BlockSet& witness, const BlockSet& h2, const Rational& eps);

} // namespace setmeans

#endif
