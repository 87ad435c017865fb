#include "setmeans/report.hpp"

#include <cstdio>

namespace setmeans {

std::string decimal(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Json encode(const Rational& q) { return Json{{"num", q.numString()}, {"den", q.denString()}}; }

Json encode(const MeanValue& m)
{
    switch (m.status()) {
    case MeanValue::Status::Exact:
        return Json{{"status", "exact"}, {"value", encode(m.value())}};
    case MeanValue::Status::Approx:
        return Json{{"status", "approx"}, {"value", Json{{"approx", decimal(m.toDouble())}, {"tol", decimal(m.tol())}}}};
    case MeanValue::Status::Undefined:
        break;
    }
    return Json{{"status", "undefined"}, {"reason", m.reason()}};
}

Json encode(const Verdict& v)
{
    Json out{{"answer", toString(v.answer)}, {"method", toString(v.method)}};
    Json evidence = Json::array();
    for (const auto& e : v.evidence) {
        evidence.push_back(Json{{"x", encode(e.x)}, {"lhs", encode(e.lhs)}, {"rhs", encode(e.rhs)}, {"label", e.label}});
    }
    out["evidence"] = std::move(evidence);
    Json trace = Json::array();
    for (double r : v.ratioTrace) {
        trace.push_back(decimal(r));
    }
    out["ratioTrace"] = std::move(trace);
    out["notes"] = v.notes;
    return out;
}

Json encode(const RoundReport& r)
{
    Json details = Json::object();
    for (const auto& [k, v] : r.details) {
        details[k] = v;
    }
    return Json{{"k", encode(r.k)},         {"k1", encode(r.k1)},           {"k2", encode(r.k2)},
                {"defect", encode(r.defect)}, {"verdict", encode(r.verdict)}, {"details", std::move(details)}};
}

Json encode(const LawReport& r)
{
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back(Json{{"inputs", v.inputs}, {"observed", v.observed}});
    }
    return Json{{"law", toString(r.law)},
                {"mean", toString(r.mean)},
                {"trials", r.trials},
                {"skipped", r.skipped},
                {"violations", std::move(violations)}};
}

Json encode(const DefectCurve& c)
{
    Json samples = Json::array();
    for (const auto& [x, d] : c.samples) {
        samples.push_back(Json{{"x", encode(x)}, {"defect", encode(d)}});
    }
    Json out{{"trend", toString(c.trend)}, {"samples", std::move(samples)}};
    out["slope"] = c.slope ? Json(decimal(*c.slope)) : Json(nullptr);
    return out;
}

Json encode(const KBounds& k)
{
    return Json{{"kLiminf", encode(k.kLiminf)}, {"kLimsup", encode(k.kLimsup)}, {"notes", k.notes}};
}

std::string toJson(const Report& r)
{
    Json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    j["diagnostics"] = r.diagnostics;
    j["version"] = r.version;
    return j.dump(2) + "\n";
}

Report reportFromJson(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("report is not JSON: ") + e.what());
    }
    static const char* keys[] = {"command", "inputs", "result", "diagnostics", "version"};
    if (!j.is_object() || j.size() != 5) {
        throw ValidationError("report must be an object with exactly the keys command, inputs, result, diagnostics, version");
    }
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        if (it.key() != keys[i]) {
            throw ValidationError("report key " + std::to_string(i) + " must be '" + keys[i] + "'");
        }
    }
    auto strings = [](const Json& a, const char* name) {
        if (!a.is_array()) {
            throw ValidationError(std::string(name) + " must be an array of strings");
        }
        std::vector<std::string> out;
        for (const auto& s : a) {
            if (!s.is_string()) {
                throw ValidationError(std::string(name) + " must be an array of strings");
            }
            out.push_back(s.get<std::string>());
        }
        return out;
    };
    if (!j["command"].is_string() || !j["version"].is_string()) {
        throw ValidationError("command and version must be strings");
    }
    const Json& result = j["result"];
    if (!result.is_null() && !(result.is_object() && result.contains("type"))) {
        throw ValidationError("result must be null or an object with a type");
    }
    Report r;
    r.command = j["command"].get<std::string>();
    r.inputs = strings(j["inputs"], "inputs");
    r.result = result;
    r.diagnostics = strings(j["diagnostics"], "diagnostics");
    r.version = j["version"].get<std::string>();
    return r;
}

} // namespace setmeans
