#ifndef SETMEANS_REPORT_HPP
#define SETMEANS_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "setmeans/classify.hpp"
#include "setmeans/laws.hpp"
#include "setmeans/round.hpp"
#include "setmeans/weigh.hpp"

namespace setmeans {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

/// Outcome of one CLI command. `result` carries a "type" key (mean, verdict,
/// round, law or curve) and is null when the command failed.
struct Report {
    std::string command;
    std::vector<std::string> inputs;
    Json result;
    std::vector<std::string> diagnostics;
    std::string version{kVersion};

    friend bool operator==(const Report&, const Report&) = default;
};

/// Pretty-printed with a trailing newline; keys in schema order.
std::string toJson(const Report& r);
/// Throws ValidationError when the text is not a report.
Report reportFromJson(std::string_view text);

// Rationals become {"num", "den"} decimal strings; approximate values
// {"approx", "tol"} with 15 significant digits.
Json encode(const Rational& q);
Json encode(const MeanValue& m);
Json encode(const Verdict& v);
Json encode(const RoundReport& r);
Json encode(const LawReport& r);
Json encode(const DefectCurve& c);
Json encode(const KBounds& k);

/// Fixed "%.15g" formatting used for every double on the wire.
std::string decimal(double v);

} // namespace setmeans

#endif
