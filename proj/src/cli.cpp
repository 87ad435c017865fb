#include "setmeans/cli.hpp"

#include "CLI11.hpp"
#include "setmeans/dsl.hpp"

namespace setmeans {

namespace {

struct Globals {
    bool json = false;
    bool strict = false;
    double tol = 1e-9;
    std::string ladderStart = "1/2";
    int ladderSteps = 60;
    int xmax = 4;
    std::uint64_t seed = 1;
};

struct Args {
    std::string mean;
    std::string expr;
    std::vector<std::string> pair;
    bool weak = false;
    std::string kind;
    std::string law;
    int n = 100;
    std::string profile = "mixed";
    bool isoSmall = false;
    bool isoBig = false;
    int depth = 6;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything a command produced besides the JSON payload.
struct Run {
    std::vector<std::string> text;
    std::vector<Answer> answers;
    bool undefined = false;
};

MeanKind meanArg(const std::string& s)
{
    if (s.empty()) {
        throw UsageError("--mean is required");
    }
    auto k = parseMeanKind(s);
    if (!k) {
        throw UsageError("unknown mean '" + s + "' (expected arith, lis, acc, iso or avg)");
    }
    return *k;
}

Config configFrom(const Globals& g)
{
    Config cfg;
    try {
        cfg.ladder.eps0 = Rational::parse(g.ladderStart);
    } catch (const std::invalid_argument&) {
        throw ValidationError("--ladder-start must be a rational, got '" + g.ladderStart + "'");
    }
    cfg.ladder.maxSteps = g.ladderSteps;
    cfg.ladder.tol = g.tol;
    cfg.ladder.check();
    if (g.xmax < 0 || g.xmax > 12) {
        throw ValidationError("--xmax must lie in 0..12");
    }
    cfg.xmax = g.xmax;
    return cfg;
}

std::string meanText(const MeanValue& m)
{
    switch (m.status()) {
    case MeanValue::Status::Exact:
        return "EXACT " + m.value().str();
    case MeanValue::Status::Approx:
        return "APPROX " + decimal(m.toDouble()) + " (tol " + decimal(m.tol()) + ")";
    case MeanValue::Status::Undefined:
        break;
    }
    return "UNDEFINED (" + m.reason() + ")";
}

void verdictText(Run& run, const std::string& label, const Verdict& v)
{
    run.answers.push_back(v.answer);
    std::string head = label.empty() ? "" : label + ": ";
    run.text.push_back(head + std::string(toString(v.answer)) + " (" + std::string(toString(v.method)) + ")");
    for (const auto& n : v.notes) {
        run.text.push_back("  " + n);
    }
    for (const auto& e : v.evidence) {
        run.text.push_back("  x = " + e.x.str() + ": " + e.lhs.str() + " vs " + e.rhs.str() +
                           (e.label.empty() ? "" : " [" + e.label + "]"));
    }
}

Json cmdEval(const Args& a, const Config& cfg, const BlockSet& h, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    MeanValue m = meanOf(h, kind, cfg.ladder);
    run.text.push_back(meanText(m));
    run.undefined = !m.defined();
    return Json{{"type", "mean"}, {"mean", toString(kind)}, {"value", encode(m)}};
}

Json cmdKBounds(const Args& a, const Config& cfg, const BlockSet& h, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    KBounds kb = kBounds(h, kind, cfg.ladder);
    run.text.push_back("K-liminf = " + kb.kLiminf.str());
    run.text.push_back("K-limsup = " + kb.kLimsup.str());
    for (const auto& n : kb.notes) {
        run.text.push_back("  " + n);
    }
    Json out{{"type", "mean"}, {"mean", toString(kind)}};
    out.update(encode(kb));
    return out;
}

Json cmdClassify(const Args& a, const Config& cfg, const BlockSet& h, const BlockSet& v, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    Verdict small = isSmallFor(v, h, kind, cfg);
    Verdict big = isBigFor(v, h, kind, cfg);
    Verdict comp = comparable(h, v, kind, cfg);
    verdictText(run, "small", small);
    verdictText(run, "big", big);
    verdictText(run, "comparable", comp);
    return Json{{"type", "verdict"}, {"mean", toString(kind)},  {"small", encode(small)},
                {"big", encode(big)}, {"comparable", encode(comp)}};
}

Json cmdDisjoint(const Args& a, const Config& cfg, const BlockSet& h1, const BlockSet& h2, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    Verdict v = kDisjoint(h1, h2, kind, a.weak, cfg);
    verdictText(run, a.weak ? "weakly disjoint" : "disjoint", v);
    return Json{{"type", "verdict"}, {"mean", toString(kind)}, {"weak", a.weak}, {"verdict", encode(v)}};
}

Json cmdWeigh(const Args& a, const Config& cfg, const BlockSet& h1, const BlockSet& h2, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    if (a.kind.empty()) {
        throw UsageError("--kind is required");
    }
    WeightKind wk = parseWeightKind(a.kind);
    Verdict v = equalWeight(h1, h2, kind, wk, cfg);
    DefectCurve curve = defectCurve(h1, h2, kind, cfg);
    verdictText(run, std::string(toString(wk)), v);
    run.text.push_back("trend: " + std::string(toString(curve.trend)));
    for (const auto& [x, d] : curve.samples) {
        run.text.push_back("  x = " + x.str() + ": " + d.str());
    }
    return Json{{"type", "verdict"},
                {"mean", toString(kind)},
                {"kind", toString(wk)},
                {"verdict", encode(v)},
                {"curve", encode(curve)}};
}

Json cmdRound(const Args& a, const Config& cfg, const BlockSet& h, Run& run, std::vector<std::string>& diags)
{
    MeanKind kind = meanArg(a.mean);
    RoundReport rep = roundDefect(h, kind, cfg);
    run.text.push_back("k = " + rep.k.str());
    run.text.push_back("k1 = " + rep.k1.str());
    run.text.push_back("k2 = " + rep.k2.str());
    run.text.push_back("defect = " + rep.defect.str());
    verdictText(run, "round", rep.verdict);
    Json out{{"type", "round"}, {"mean", toString(kind)}};
    out.update(encode(rep));
    try {
        Verdict w = roundWitness(h, kind, cfg);
        verdictText(run, "characterization", w);
        out["witness"] = encode(w);
    } catch (const SetError& e) {
        diags.push_back(std::string("characterization unavailable: ") + e.what());
        out["witness"] = nullptr;
    }
    return out;
}

Json cmdLaws(const Args& a, const Globals& g, const Config& cfg, Run& run)
{
    MeanKind kind = meanArg(a.mean);
    if (a.law.empty()) {
        throw UsageError("--law is required");
    }
    auto law = parseLawKind(a.law);
    if (!law) {
        throw UsageError("unknown law '" + a.law + "'");
    }
    auto profile = parseProfile(a.profile);
    if (!profile) {
        throw UsageError("unknown profile '" + a.profile + "'");
    }
    LawReport rep = checkLaw(kind, *law, genCorpus(g.seed, a.n, *profile), cfg);
    run.text.push_back(std::string(toString(*law)) + " for " + std::string(toString(kind)) + ": " +
                       std::to_string(rep.trials) + " trials, " + std::to_string(rep.skipped) + " skipped, " +
                       std::to_string(rep.violations.size()) + " violations");
    for (const auto& v : rep.violations) {
        run.text.push_back("violation:");
        for (const auto& s : v.inputs) {
            run.text.push_back("  " + s);
        }
        for (const auto& s : v.observed) {
            run.text.push_back("  " + s);
        }
    }
    Json out{{"type", "law"}, {"profile", toString(*profile)}, {"seed", g.seed}, {"n", a.n}};
    out.update(encode(rep));
    return out;
}

Json cmdWitness(const Args& a, const BlockSet& h, Run& run)
{
    if (a.isoSmall == a.isoBig) {
        throw UsageError("witness needs exactly one of --iso-small and --iso-big");
    }
    WitnessKind which = a.isoSmall ? WitnessKind::Small : WitnessKind::Big;
    IsoWitness w = isoWitness(h, which, a.depth);
    bool up = true, down = true;
    for (std::size_t i = 1; i < w.ratios.size(); ++i) {
        up = up && w.ratios[i - 1] < w.ratios[i];
        down = down && w.ratios[i] < w.ratios[i - 1];
    }
    std::string monotone = w.ratios.size() < 2 ? "none" : up ? "increasing" : down ? "decreasing" : "none";
    run.text.push_back("witness: " + describe(w.set));
    Json samples = Json::array();
    for (std::size_t i = 0; i < w.ratios.size(); ++i) {
        run.text.push_back("  eps = " + w.stageEps[i].str() + ": ratio " + w.ratios[i].str());
        samples.push_back(Json{{"eps", encode(w.stageEps[i])}, {"ratio", encode(w.ratios[i])}});
    }
    run.text.push_back("ratio ladder " + monotone);
    return Json{{"type", "curve"},
                {"kind", which == WitnessKind::Small ? "SMALL" : "BIG"},
                {"depth", a.depth},
                {"witness", describe(w.set)},
                {"samples", std::move(samples)},
                {"monotone", monotone}};
}

std::string joinLines(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines) {
        out += l + "\n";
    }
    return out;
}

} // namespace

CommandOutcome runCommand(const std::vector<std::string>& args)
{
    Globals g;
    Args a;
    CLI::App app{"Means of sets of real numbers", "setmeans"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", g.json, "Emit a JSON report");
    app.add_flag("--strict", g.strict, "Exit with 4 when an answer is INCONCLUSIVE");
    app.add_option("--tol", g.tol, "Ladder tolerance");
    app.add_option("--ladder-start", g.ladderStart, "First ladder radius (rational)");
    app.add_option("--ladder-steps", g.ladderSteps, "Number of ladder rungs");
    app.add_option("--xmax", g.xmax, "Largest exponent j of the 10^j shift grid");
    app.add_option("--seed", g.seed, "Corpus seed");

    auto withMean = [&](CLI::App* sub) { sub->add_option("--mean", a.mean, "arith, lis, acc, iso or avg"); };
    CLI::App* eval = app.add_subcommand("eval", "Evaluate K(H)");
    withMean(eval);
    eval->add_option("expr", a.expr)->required();
    CLI::App* classify = app.add_subcommand("classify", "Is V small, big or comparable for H");
    withMean(classify);
    classify->add_option("--of", a.pair, "H V")->expected(2)->allow_extra_args(false)->required();
    CLI::App* disj = app.add_subcommand("disjoint", "K-disjointness of H1 and H2");
    withMean(disj);
    disj->add_flag("--weak", a.weak);
    disj->add_option("sets", a.pair, "H1 H2")->expected(2)->allow_extra_args(false)->required();
    CLI::App* weigh = app.add_subcommand("weigh", "Equal weight of H1 and H2");
    withMean(weigh);
    weigh->add_option("--kind", a.kind, "bound, limit or equality");
    weigh->add_option("sets", a.pair, "H1 H2")->expected(2)->allow_extra_args(false)->required();
    CLI::App* round = app.add_subcommand("round", "Roundness of H");
    withMean(round);
    round->add_option("expr", a.expr)->required();
    CLI::App* laws = app.add_subcommand("laws", "Check a mean axiom on a generated corpus");
    withMean(laws);
    laws->add_option("--law", a.law);
    laws->add_option("--n", a.n, "Corpus size");
    laws->add_option("--profile", a.profile, "finite, sequences, towers, intervals, cantor or mixed");
    CLI::App* kb = app.add_subcommand("kbounds", "K-liminf and K-limsup of H");
    withMean(kb);
    kb->add_option("expr", a.expr)->required();
    CLI::App* wit = app.add_subcommand("witness", "Truncated small or big set for H under the isolated-point mean");
    wit->add_flag("--iso-small", a.isoSmall);
    wit->add_flag("--iso-big", a.isoBig);
    wit->add_option("--depth", a.depth, "Number of stages");
    wit->add_option("expr", a.expr)->required();

    CommandOutcome res;
    std::vector<const char*> argv{"setmeans"};
    for (const auto& s : args) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.exitCode = kExitUsage;
        res.err = std::string(e.what()) + "\n";
        res.report.command = args.empty() ? "" : args.front();
        res.report.diagnostics.push_back(std::string("usage: ") + e.what());
        return res;
    }

    CLI::App* sub = app.get_subcommands().front();
    Report& rep = res.report;
    rep.command = sub->get_name();
    if (!a.expr.empty()) {
        rep.inputs.push_back(a.expr);
    }
    rep.inputs.insert(rep.inputs.end(), a.pair.begin(), a.pair.end());

    Run run;
    try {
        Config cfg = configFrom(g);
        std::vector<BlockSet> sets;
        for (const auto& src : rep.inputs) {
            sets.push_back(normalize(parse(src)));
        }
        if (sub == eval) {
            rep.result = cmdEval(a, cfg, sets[0], run);
        } else if (sub == classify) {
            rep.result = cmdClassify(a, cfg, sets[0], sets[1], run);
        } else if (sub == disj) {
            rep.result = cmdDisjoint(a, cfg, sets[0], sets[1], run);
        } else if (sub == weigh) {
            rep.result = cmdWeigh(a, cfg, sets[0], sets[1], run);
        } else if (sub == round) {
            rep.result = cmdRound(a, cfg, sets[0], run, rep.diagnostics);
        } else if (sub == laws) {
            rep.result = cmdLaws(a, g, cfg, run);
        } else if (sub == kb) {
            rep.result = cmdKBounds(a, cfg, sets[0], run);
        } else {
            rep.result = cmdWitness(a, sets[0], run);
        }
        if (run.undefined) {
            res.exitCode = kExitDomain;
        } else if (g.strict) {
            for (Answer ans : run.answers) {
                if (ans == Answer::Inconclusive) {
                    res.exitCode = kExitInconclusive;
                    rep.diagnostics.push_back("strict: an answer is INCONCLUSIVE");
                    break;
                }
            }
        }
    } catch (const UsageError& e) {
        res.exitCode = kExitUsage;
        rep.diagnostics.push_back(std::string("usage: ") + e.what());
    } catch (const ParseError& e) {
        res.exitCode = kExitUsage;
        rep.diagnostics.push_back(std::string("parse error: ") + e.what());
    } catch (const ValidationError& e) {
        res.exitCode = kExitUsage;
        rep.diagnostics.push_back(std::string("invalid input: ") + e.what());
    } catch (const SetError& e) {
        res.exitCode = kExitDomain;
        rep.diagnostics.push_back(std::string("domain error: ") + e.what());
    }
    if (res.exitCode == kExitUsage || (res.exitCode == kExitDomain && !run.undefined)) {
        rep.result = nullptr;
        res.err = joinLines(rep.diagnostics);
    } else if (!rep.diagnostics.empty()) {
        res.err = joinLines(rep.diagnostics);
    }
    res.out = g.json ? toJson(rep) : joinLines(run.text);
    return res;
}

} // namespace setmeans
