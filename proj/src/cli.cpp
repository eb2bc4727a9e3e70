#include "vermawb/cli.hpp"

#include "vermawb/tensor.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace vwb::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kWeightNames{"c", "h", "hW", "cL", "cLI", "hI", "alpha", "beta", "F"};

class Context {
public:
    explicit Context(const Job& job) : job_(job)
    {
        if (job.symbolic.size() > kMaxSymbolic)
            throw UsageError("at most " + std::to_string(kMaxSymbolic) + " symbolic parameters");
        std::vector<std::string> main;
        for (const auto& s : job.symbolic) {
            if (std::count(job.symbolic.begin(), job.symbolic.end(), s) > 1)
                throw UsageError("symbolic parameter " + s + " declared twice");
            if (s == "n")
                throw UsageError("parameter name n is reserved");
            if (s != "F")
                main.push_back(s);
        }
        ps_ = makeParams(main);
    }

    const Params& params() const { return ps_; }
    bool symbolic(const std::string& name) const
    {
        return std::find(job_.symbolic.begin(), job_.symbolic.end(), name) != job_.symbolic.end();
    }

    std::optional<std::string> raw(const std::string& key) const
    {
        auto it = job_.params.find(key);
        if (it == job_.params.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<Scalar> scalar(const std::string& key) const
    {
        Params ps = key == "F" && symbolic("F") ? makeParams({"F"}) : ps_;
        if (auto r = raw(key)) {
            try {
                return Scalar::parse(ps, *r);
            } catch (const std::exception& e) {
                throw UsageError("--" + key + ": " + e.what());
            }
        }
        if (symbolic(key))
            return Scalar::param(ps, key);
        return std::nullopt;
    }

    Scalar requireScalar(const std::string& key) const
    {
        auto s = scalar(key);
        if (!s)
            throw UsageError("missing --" + key + " (or declare it with --symbolic " + key + ")");
        return *s;
    }

    std::optional<int> integer(const std::string& key) const
    {
        auto r = raw(key);
        if (!r)
            return std::nullopt;
        int v = 0;
        auto [end, ec] = std::from_chars(r->data(), r->data() + r->size(), v);
        if (ec != std::errc() || end != r->data() + r->size())
            throw UsageError("--" + key + " expects an integer, got '" + *r + "'");
        return v;
    }

    int requireInteger(const std::string& key) const
    {
        auto v = integer(key);
        if (!v)
            throw UsageError("missing --" + key);
        return *v;
    }

    std::vector<std::string> list(const std::string& key) const
    {
        std::vector<std::string> out;
        auto r = raw(key);
        if (!r)
            return out;
        std::stringstream ss(*r);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    AlgebraKind algebra() const
    {
        auto a = raw("algebra").value_or("w22");
        try {
            return parseAlgebraKind(a);
        } catch (const std::exception&) {
            throw UsageError("--algebra must be w22 or hv");
        }
    }

private:
    const Job& job_;
    Params ps_;
};

json monomialJson(const PBWMonomial& m)
{
    return {{"w", m.w}, {"l", m.l}};
}

json vectorJson(const ModuleVector& v, AlgebraKind k)
{
    json terms = json::array();
    for (const auto& [m, c] : v.terms()) {
        json t = monomialJson(m);
        t["coeff"] = c.toString();
        terms.push_back(std::move(t));
    }
    return {{"level", v.level()}, {"terms", terms}, {"text", v.toString(k)}, {"latex", v.toLatex(k)}};
}

json weightJson(const HighestWeight& hw)
{
    if (hw.kind == AlgebraKind::HV)
        return {{"algebra", "hv"},
                {"cL", hw.c.toString()},
                {"cLI", hw.cLI.toString()},
                {"h", hw.h.toString()},
                {"hI", hw.hI().toString()}};
    return {{"algebra", "w22"}, {"c", hw.c.toString()}, {"h", hw.h.toString()}, {"hW", hw.hW.toString()}};
}

json optionalInt(const std::optional<int>& v)
{
    return v ? json(*v) : json(nullptr);
}

// W(2,2) weight; c defaults to the u' binding -24 h_W / (p^2 - 1) when p >= 2.
HighestWeight w22Weight(const Context& ctx, std::optional<int> p, std::optional<Scalar> hDefault, Report& rep)
{
    Scalar hW = ctx.requireScalar("hW");
    auto c = ctx.scalar("c");
    if (!c) {
        if (!p || *p < 2)
            throw UsageError("missing --c (or declare it with --symbolic c)");
        c = Scalar(-24) * hW / Scalar(*p * *p - 1);
        rep.notes.push_back("c bound to -24 hW/(p^2-1)");
    }
    auto h = ctx.scalar("h");
    if (!h) {
        if (!hDefault)
            throw UsageError("missing --h (or declare it with --symbolic h)");
        h = hDefault;
    }
    return HighestWeight::w22(*c, *h, hW);
}

HighestWeight hvWeight(const Context& ctx)
{
    return HighestWeight::hv(ctx.requireScalar("cL"), ctx.requireScalar("cLI"), ctx.requireScalar("h"),
                             ctx.requireScalar("hI"));
}

HighestWeight anyWeight(const Context& ctx, Report& rep)
{
    if (ctx.algebra() == AlgebraKind::HV)
        return hvWeight(ctx);
    return w22Weight(ctx, std::nullopt, std::nullopt, rep);
}

json decisionJson(const TensorDecision& d)
{
    json j{{"verdict", verdictName(d.verdict)},
           {"reason", reasonName(d.reason)},
           {"witnessProduct", d.witnessProduct ? json(d.witnessProduct->toString()) : json(nullptr)},
           {"witnessIndex", optionalInt(d.witnessIndex)},
           {"quotientWeight", d.quotientWeight ? weightJson(*d.quotientWeight) : json(nullptr)},
           {"p", optionalInt(d.p)},
           {"r", optionalInt(d.r)},
           {"hvCase", caseName(d.hvCase)},
           {"notes", d.notes}};
    return j;
}

// ---- commands --------------------------------------------------------------

void runSingular(const Context& ctx, Report& rep)
{
    int p = ctx.requireInteger("p");
    if (p < 1)
        throw UsageError("--p must be positive");
    AlgebraKind kind = ctx.algebra();
    json vectors = json::array();
    if (kind == AlgebraKind::W22) {
        HighestWeight hw = w22Weight(ctx, p, Scalar(0), rep);
        VermaModule V(hw);
        rep.results["weight"] = weightJson(hw);
        if (reducibilityValue(hw.c, hw.hW, p).isZero()) {
            vectors.push_back(vectorJson(uPrime(V, p), kind));
            rep.results["kind"] = "u'";
            rep.results["binding"] = hw.hW.isZero() ? "h_{W}=0" : "c=" + hw.c.toLatex();
        } else {
            for (const auto& v : singularSpace(V, p))
                vectors.push_back(vectorJson(v, kind));
            rep.results["kind"] = "nullspace";
        }
    } else {
        HighestWeight hw = hvWeight(ctx);
        VermaModule V(hw);
        rep.results["weight"] = weightJson(hw);
        HVCase which;
        auto q = hvFindP(hw, which);
        if (q && *q == p) {
            vectors.push_back(vectorJson(hvSingular(V, p, which), kind));
            rep.results["kind"] = caseName(which);
        } else {
            for (const auto& v : singularSpace(V, p))
                vectors.push_back(vectorJson(v, kind));
            rep.results["kind"] = "nullspace";
        }
    }
    rep.results["p"] = p;
    rep.results["vectors"] = vectors;
}

void runSubsingular(const Context& ctx, Report& rep)
{
    if (ctx.algebra() != AlgebraKind::W22)
        throw UsageError("subsingular is defined for w22 only");
    int p = ctx.requireInteger("p"), r = ctx.requireInteger("r");
    if (p < 1 || r < 1)
        throw UsageError("--p and --r must be positive");
    std::optional<Scalar> hDefault;
    if (auto hW = ctx.scalar("hW"))
        hDefault = necessaryH(p, r, *hW);
    if (!ctx.scalar("h"))
        rep.notes.push_back("h bound to the necessary value");
    HighestWeight hw = w22Weight(ctx, p, hDefault, rep);
    VermaModule V(hw);
    rep.results["weight"] = weightJson(hw);
    rep.results["p"] = p;
    rep.results["r"] = r;
    std::optional<ModuleVector> u;
    if (ctx.raw("recursive")) {
        if (r != 1)
            throw UsageError("--recursive requires r = 1");
        u = subsingularR1Recursive(V, p);
        rep.results["method"] = "recursion";
    } else {
        u = subsingular(V, p, r);
        rep.results["method"] = "elimination";
    }
    rep.results["found"] = u.has_value();
    rep.results["vector"] = u ? vectorJson(*u, AlgebraKind::W22) : json(nullptr);
    if (!u)
        rep.notes.push_back("linear system inconsistent: no subsingular vector at level " + std::to_string(p * r));
}

void runClassify(const Context& ctx, Report& rep)
{
    HighestWeight hw = anyWeight(ctx, rep);
    int maxP = ctx.integer("maxp").value_or(12);
    VermaModule V(hw);
    StructureReport s = classify(V, maxP);
    rep.results["weight"] = weightJson(hw);
    rep.results["verdict"] = verdictName(s.verdict);
    rep.results["p"] = optionalInt(s.p);
    rep.results["r"] = optionalInt(s.r);
    rep.results["hvCase"] = caseName(s.hvCase);
    rep.results["uPrime"] = s.uPrime ? vectorJson(*s.uPrime, hw.kind) : json(nullptr);
    rep.results["u"] = s.u ? vectorJson(*s.u, hw.kind) : json(nullptr);
    for (const auto& n : s.notes)
        rep.notes.push_back(n);
}

json seriesJson(const CharacterSeries& s)
{
    std::vector<std::string> coeffs;
    for (const auto& c : s.coeffs)
        coeffs.push_back(c.get_str());
    return {{"coeffs", coeffs}, {"text", s.toString()}};
}

void runCharacter(const Context& ctx, Report& rep)
{
    Scalar h = ctx.scalar("h").value_or(Scalar(0));
    auto p = ctx.integer("p"), r = ctx.integer("r");
    int N = ctx.integer("N").value_or(20);
    if (N < 0)
        throw UsageError("--N must be nonnegative");
    Characters ch = characters(h, p, r, N);
    rep.results["offset"] = h.toString();
    rep.results["N"] = N;
    rep.results["p"] = optionalInt(p);
    rep.results["r"] = optionalInt(r);
    json series;
    series["charV"] = seriesJson(ch.charV);
    auto put = [&](const char* name, const std::optional<CharacterSeries>& s) {
        if (s)
            series[name] = seriesJson(*s);
    };
    put("charJprime", ch.charJprime);
    put("charLprime", ch.charLprime);
    put("charJ", ch.charJ);
    put("charL", ch.charL);
    rep.results["series"] = series;
}

IntermediateSeries seriesFrom(const Context& ctx, AlgebraKind kind)
{
    Scalar a = ctx.requireScalar("alpha"), b = ctx.requireScalar("beta");
    if (kind == AlgebraKind::HV)
        return IntermediateSeries::hv(a, b, ctx.scalar("F").value_or(Scalar(0)));
    if (ctx.scalar("F") && !ctx.scalar("F")->isZero())
        throw UsageError("--F applies to hv only");
    return IntermediateSeries::w22(a, b);
}

void runTensor(const Context& ctx, Report& rep)
{
    AlgebraKind kind = ctx.algebra();
    HighestWeight hw = anyWeight(ctx, rep);
    IntermediateSeries s = seriesFrom(ctx, kind);
    int maxP = ctx.integer("maxp").value_or(12);
    TensorDecision d = kind == AlgebraKind::HV ? decideTensorHV(hw, s, maxP) : decideTensor(hw, s, maxP);
    rep.results["weight"] = weightJson(hw);
    rep.results["series"] = {{"alpha", s.alpha.toString()}, {"beta", s.beta.toString()}, {"F", s.F.toString()}};
    rep.results["decision"] = decisionJson(d);

    int window = ctx.integer("window").value_or(8);
    int depth = ctx.integer("depth").value_or(d.r.value_or(1) * d.p.value_or(1) + 2);
    std::vector<int> ns;
    for (const auto& t : ctx.list("n")) {
        int v = 0;
        auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || end != t.data() + t.size())
            throw UsageError("--n expects integers");
        ns.push_back(v);
    }
    if (ns.empty()) {
        int k = d.witnessIndex.value_or(0);
        ns = {k - 1, k, k + 1};
    }
    json checks = json::array();
    if (!ctx.raw("no-check") && s.alpha.isConstant() && s.beta.isConstant() && s.F.isConstant()) {
        TensorModule T(hw, s, Window{-window, window}, FactorMode::Irreducible, maxP);
        for (int n : ns) {
            if (s.excluded(n))
                continue;
            checks.push_back({{"n", n}, {"cyclic", cyclicityCheck(T, n, depth)}});
        }
        rep.notes.push_back("cyclicity at truncation (" + std::to_string(window) + ", " + std::to_string(depth) + ")");
    }
    rep.results["truncation"] = {{"window", window}, {"depth", depth}};
    rep.results["checks"] = checks;
    for (const auto& n : d.notes)
        rep.notes.push_back(n);
    if (d.verdict == TensorVerdict::Unknown)
        rep.exitCode = kExitUnknown;
}

void runHvDecide(const Context& ctx, Report& rep)
{
    HighestWeight hw = hvWeight(ctx);
    IntermediateSeries s = seriesFrom(ctx, AlgebraKind::HV);
    int maxP = ctx.integer("maxp").value_or(12);
    TensorDecision d = decideTensorHV(hw, s, maxP);
    rep.results["weight"] = weightJson(hw);
    rep.results["series"] = {{"alpha", s.alpha.toString()}, {"beta", s.beta.toString()}, {"F", s.F.toString()}};
    rep.results["decision"] = decisionJson(d);
    HVCase which;
    auto p = hvFindP(hw, which);
    if (p && *p <= maxP && !(hw.h.isZero() && hw.hI().isZero())) {
        HVPolynomials polys = hvDecisionPolynomials(hw, IntermediateSeries::hv(s.alpha, s.beta, Scalar(0)), *p);
        json pj{{"case", caseName(polys.which)}, {"p", polys.p}, {"certificate", polys.certificate.toString()}};
        if (polys.s)
            pj["s"] = polys.s->toString();
        if (polys.q)
            pj["q"] = polys.q->toString();
        if (polys.r)
            pj["r"] = polys.r->toString();
        rep.results["polynomials"] = pj;
    } else {
        rep.results["polynomials"] = nullptr;
    }
    for (const auto& n : d.notes)
        rep.notes.push_back(n);
    if (d.verdict == TensorVerdict::Unknown)
        rep.exitCode = kExitUnknown;
}

void runScan(const Context& ctx, Report& rep)
{
    int pMax = ctx.integer("pmax").value_or(3), rMax = ctx.integer("rmax").value_or(3);
    int maxLevel = ctx.integer("max-level").value_or(8);
    std::vector<Rational> offsets;
    auto items = ctx.list("offsets");
    if (items.empty())
        items = {"1/3", "-2"};
    for (const auto& t : items) {
        Scalar o;
        try {
            o = Scalar::parse(nullptr, t);
        } catch (const std::exception& e) {
            throw UsageError("--offsets: " + std::string(e.what()));
        }
        offsets.push_back(*o.constantValue());
    }
    ScanReport s = conjectureScan(pMax, rMax, offsets, maxLevel);
    json rows = json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"p", r.p},
                        {"r", r.r},
                        {"h", r.h.toString()},
                        {"check", r.check},
                        {"expected", r.expected},
                        {"observed", r.observed},
                        {"pass", r.pass},
                        {"detail", r.detail}});
    rep.results["rows"] = rows;
    rep.results["allPass"] = s.allPass();
    for (const auto& n : s.notes)
        rep.notes.push_back(n);
}

// ---- emission --------------------------------------------------------------

std::string str(const json& j)
{
    return j.is_string() ? j.get<std::string>() : j.dump();
}

std::string orDash(const json& j)
{
    return j.is_null() ? "-" : str(j);
}

void textDecision(std::ostream& os, const json& d)
{
    os << "verdict: " << str(d["verdict"]) << " (" << str(d["reason"]) << ")\n";
    if (!d["p"].is_null())
        os << "p = " << d["p"] << (d["r"].is_null() ? "" : ", r = " + d["r"].dump()) << "\n";
    if (!d["witnessProduct"].is_null())
        os << "witness: " << str(d["witnessProduct"]) << "\n";
    if (!d["witnessIndex"].is_null())
        os << "U_" << d["witnessIndex"] << " irreducible\n";
    if (!d["quotientWeight"].is_null()) {
        os << "quotient weight:";
        for (const auto& [k, v] : d["quotientWeight"].items())
            if (k != "algebra")
                os << " " << k << "=" << str(v);
        os << "\n";
    }
}

std::string emitText(const Report& r)
{
    std::ostringstream os;
    const json& res = r.results;
    if (r.command == "singular") {
        if (res["vectors"].empty())
            os << "no singular vectors at level " << res["p"] << "\n";
        for (const auto& v : res["vectors"])
            os << str(v["text"]) << "\n";
    } else if (r.command == "subsingular") {
        if (res["found"].get<bool>())
            os << str(res["vector"]["text"]) << "\n";
        else
            os << "none\n";
    } else if (r.command == "classify") {
        os << "verdict: " << str(res["verdict"]) << "\n";
        os << "p = " << orDash(res["p"]) << ", r = " << orDash(res["r"]) << "\n";
        if (!res["uPrime"].is_null())
            os << "u' = " << str(res["uPrime"]["text"]) << "\n";
        if (!res["u"].is_null())
            os << "u = " << str(res["u"]["text"]) << "\n";
    } else if (r.command == "character") {
        for (const auto& [k, v] : res["series"].items())
            os << k << ": " << str(v["text"]) << "\n";
    } else if (r.command == "tensor" || r.command == "hv-decide") {
        textDecision(os, res["decision"]);
        for (const auto& c : res.value("checks", json::array()))
            os << "n = " << c["n"] << ": " << (c["cyclic"].get<bool>() ? "U_n = U_{n-1}" : "U_n != U_{n-1}") << "\n";
        if (res.contains("polynomials") && !res["polynomials"].is_null())
            for (const auto& [k, v] : res["polynomials"].items())
                os << k << ": " << str(v) << "\n";
    } else if (r.command == "scan") {
        for (const auto& row : res["rows"])
            os << (row["pass"].get<bool>() ? "pass" : "FAIL") << "  p=" << row["p"] << " r=" << row["r"]
               << " h=" << str(row["h"]) << "  " << str(row["check"])
               << (str(row["detail"]).empty() ? "" : "  (" + str(row["detail"]) + ")") << "\n";
        os << (res["allPass"].get<bool>() ? "all rows pass" : "some rows fail") << "\n";
    }
    for (const auto& n : r.notes)
        os << "# " << n << "\n";
    return os.str();
}

std::string latexCell(const json& v)
{
    return "$" + str(v["latex"]) + "$";
}

std::string emitLatex(const Report& r)
{
    std::ostringstream os;
    const json& res = r.results;
    if (r.command == "singular") {
        os << "\\begin{tabular}{|c|c|}\n\\hline\n";
        for (const auto& v : res["vectors"]) {
            std::string left = res.contains("binding") ? "$" + str(res["binding"]) + "$" : "$p=" + res["p"].dump() + "$";
            os << left << " & " << latexCell(v) << "\\\\\\hline\n";
        }
        os << "\\end{tabular}\n";
    } else if (r.command == "subsingular") {
        os << "\\begin{tabular}{|c|c|l|}\n\\hline\n$p$ & $r$ & $u$ \\\\\n\\hline\n";
        os << res["p"] << " & " << res["r"] << " & "
           << (res["found"].get<bool>() ? latexCell(res["vector"]) : std::string("none")) << " \\\\\n";
        os << "\\hline\n\\end{tabular}\n";
    } else if (r.command == "classify") {
        os << "\\begin{tabular}{|l|l|}\n\\hline\nverdict & " << str(res["verdict"]) << " \\\\\n";
        if (!res["uPrime"].is_null())
            os << "$u'$ & " << latexCell(res["uPrime"]) << " \\\\\n";
        if (!res["u"].is_null())
            os << "$u$ & " << latexCell(res["u"]) << " \\\\\n";
        os << "\\hline\n\\end{tabular}\n";
    } else if (r.command == "character") {
        for (const auto& [k, v] : res["series"].items()) {
            std::string t = str(v["text"]);
            std::string out;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] == '^') {
                    std::size_t j = i + 1;
                    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j])))
                        ++j;
                    out += "^{" + t.substr(i + 1, j - i - 1) + "}";
                    i = j - 1;
                } else {
                    out += t[i];
                }
            }
            os << "\\mathrm{" << k << "} = " << out << " \\\\\n";
        }
    } else if (r.command == "tensor" || r.command == "hv-decide") {
        const json& d = res["decision"];
        os << "\\begin{tabular}{|l|l|}\n\\hline\nverdict & " << str(d["verdict"]) << " \\\\\nreason & "
           << str(d["reason"]) << " \\\\\n";
        for (const auto& c : res.value("checks", json::array()))
            os << "$U_{" << c["n"] << "} = U_{" << c["n"].get<int>() - 1 << "}$ & "
               << (c["cyclic"].get<bool>() ? "yes" : "no") << " \\\\\n";
        os << "\\hline\n\\end{tabular}\n";
    } else if (r.command == "scan") {
        os << "\\begin{tabular}{|c|c|l|l|c|}\n\\hline\n$p$ & $r$ & $h$ & check & result \\\\\n\\hline\n";
        for (const auto& row : res["rows"])
            os << row["p"] << " & " << row["r"] << " & $" << str(row["h"]) << "$ & " << str(row["check"]) << " & "
               << (row["pass"].get<bool>() ? "pass" : "fail") << " \\\\\n";
        os << "\\hline\n\\end{tabular}\n";
    }
    return os.str();
}

Job jobFromCommand(const std::string& name, const std::map<std::string, std::string>& opts,
                   const std::vector<std::string>& symbolic)
{
    Job job{name, {}, symbolic};
    for (const auto& [k, v] : opts)
        if (!v.empty())
            job.params[k] = v;
    return job;
}

} // namespace

// ---- public API ------------------------------------------------------------

bool Report::operator==(const Report& o) const
{
    return command == o.command && job == o.job && results == o.results && notes == o.notes &&
           exitCode == o.exitCode;
}

Report run(const Job& job)
{
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = job.command;
    rep.job = {{"params", job.params}, {"symbolic", job.symbolic}};
    rep.results = json::object();
    Context ctx(job);
    if (job.command == "singular")
        runSingular(ctx, rep);
    else if (job.command == "subsingular")
        runSubsingular(ctx, rep);
    else if (job.command == "classify")
        runClassify(ctx, rep);
    else if (job.command == "character")
        runCharacter(ctx, rep);
    else if (job.command == "tensor")
        runTensor(ctx, rep);
    else if (job.command == "hv-decide")
        runHvDecide(ctx, rep);
    else if (job.command == "scan")
        runScan(ctx, rep);
    else
        throw UsageError("unknown command " + job.command);
    rep.timingMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

json toJson(const Report& r, bool withTiming)
{
    json j{{"command", r.command}, {"job", r.job}, {"results", r.results}, {"notes", r.notes}, {"exitCode", r.exitCode}};
    if (withTiming)
        j["timingMs"] = r.timingMs;
    return j;
}

Report fromJson(const json& j)
{
    Report r;
    r.command = j.at("command").get<std::string>();
    r.job = j.at("job");
    r.results = j.at("results");
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.exitCode = j.at("exitCode").get<int>();
    r.timingMs = j.value("timingMs", 0.0);
    return r;
}

std::string emit(const Report& r, const std::string& format, bool withTiming)
{
    if (format == "json")
        return toJson(r, withTiming).dump(2) + "\n";
    if (format == "text")
        return emitText(r);
    if (format == "latex")
        return emitLatex(r);
    throw UsageError("--format must be json, text or latex");
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    if (const char* w = std::getenv("VWB_WORKERS")) {
        int n = std::atoi(w);
        if (n > 0)
            omp_set_num_threads(n);
    }

    CLI::App app{"Exact computations for Verma modules over W(2,2) and the twisted Heisenberg-Virasoro algebra"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    std::string format = "text";
    bool noTiming = false;
    std::vector<std::string> symbolic;
    std::map<std::string, std::string> opts;
    std::map<std::string, bool> flags;

    struct Spec {
        const char* name;
        const char* help;
        std::vector<std::string> options;
        std::vector<std::string> switches;
    };
    const std::vector<std::string> w22{"algebra", "c", "h", "hW", "cL", "cLI", "hI"};
    auto with = [](std::vector<std::string> a, std::initializer_list<std::string> b) {
        a.insert(a.end(), b);
        return a;
    };
    const std::vector<Spec> specs{
        {"singular", "singular vector at level p (u' when the level is critical)", with(w22, {"p"}), {}},
        {"subsingular", "subsingular vector at level rp", with(w22, {"p", "r"}), {"recursive"}},
        {"classify", "structure of the Verma module", with(w22, {"maxp"}), {}},
        {"character", "characters to order N", {"h", "p", "r", "N"}, {}},
        {"tensor", "irreducibility of the tensor product with an intermediate series module",
         with(w22, {"alpha", "beta", "F", "window", "depth", "n", "maxp"}),
         {"no-check"}},
        {"hv-decide", "tensor decision and decision polynomials for HV",
         {"cL", "cLI", "h", "hI", "alpha", "beta", "F", "maxp"},
         {}},
        {"scan", "conjecture evidence over a (p, r) grid", {"pmax", "rmax", "offsets", "max-level"}, {}},
    };

    std::string chosen;
    for (const auto& spec : specs) {
        auto* sub = app.add_subcommand(spec.name, spec.help);
        sub->set_help_flag("--help", "print help");
        sub->callback([&chosen, name = std::string(spec.name)] { chosen = name; });
        for (const auto& o : spec.options) {
            opts.emplace(o, "");
            sub->add_option("--" + o, opts[o]);
            if (std::find(kWeightNames.begin(), kWeightNames.end(), o) != kWeightNames.end()) {
                flags.emplace(o, false);
                sub->add_flag("--" + o + "-sym", flags[o], "treat " + o + " as a symbolic parameter");
            }
        }
        for (const auto& s : spec.switches) {
            flags.emplace(s, false);
            sub->add_flag("--" + s, flags[s]);
        }
        sub->add_option("--symbolic", symbolic, "declare a symbolic parameter (at most 3)");
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "text", "latex"}));
        sub->add_flag("--no-timing", noTiming, "omit timing from json output");
    }

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitPrecondition;
    }

    for (const auto& [k, on] : flags) {
        if (!on)
            continue;
        if (std::find(kWeightNames.begin(), kWeightNames.end(), k) != kWeightNames.end()) {
            if (std::find(symbolic.begin(), symbolic.end(), k) == symbolic.end())
                symbolic.push_back(k);
        } else {
            opts[k] = "1";
        }
    }

    try {
        Report rep = run(jobFromCommand(chosen, opts, symbolic));
        out << emit(rep, format, !noTiming);
        return rep.exitCode;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

} // namespace vwb::cli
