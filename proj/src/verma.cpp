#include "vermawb/verma.hpp"

#include <algorithm>
#include <sstream>

namespace vwb {

namespace {

Scalar frac(long a, long b)
{
    Rational q(a, b);
    q.canonicalize();
    return Scalar(q);
}

bool hasFactor(const std::vector<int>& part, int n)
{
    return std::find(part.begin(), part.end(), n) != part.end();
}

bool currentOnly(const PBWMonomial& m)
{
    return m.l.empty();
}

using SpanFn = std::function<std::vector<ModuleVector>(int)>;

struct SolveResult {
    std::optional<ModuleVector> x;
    int freeUnknowns = 0;
};

// Finds x = fixed + sum x_j unknowns_j with g x in span(spanAt(level - mode))
// for every raising g.
SolveResult solveRaising(const VermaModule& V, int level, const ModuleVector& fixed,
                         const std::vector<PBWMonomial>& unknowns, const SpanFn& spanAt)
{
    const auto gens = raisingGenerators(V.kind());
    std::vector<std::vector<ModuleVector>> spans(gens.size());
    int nAux = 0;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int t = level - gens[gi].mode;
        if (t >= 0 && spanAt)
            spans[gi] = spanAt(t);
        nAux += static_cast<int>(spans[gi].size());
    }
    const int nx = static_cast<int>(unknowns.size());
    const int rhs = nx + nAux;
    std::vector<linalg::Row> rows;
    std::vector<std::map<PBWMonomial, std::size_t, MonomialOrder>> index(gens.size());
    auto rowFor = [&](std::size_t gi, const PBWMonomial& m) -> linalg::Row& {
        auto [it, fresh] = index[gi].emplace(m, rows.size());
        if (fresh)
            rows.emplace_back();
        return rows[it->second];
    };
    int aux = nx;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Generator& g = gens[gi];
        if (level - g.mode < 0)
            continue;
        for (int j = 0; j < nx; ++j)
            for (const auto& [m, c] : V.act(g, unknowns[static_cast<std::size_t>(j)]).terms())
                rowFor(gi, m).emplace_back(j, c);
        for (const auto& [m, c] : V.act(g, fixed).terms())
            rowFor(gi, m).emplace_back(rhs, -c);
        for (const auto& s : spans[gi]) {
            for (const auto& [m, c] : s.terms())
                rowFor(gi, m).emplace_back(aux, -c);
            ++aux;
        }
    }
    linalg::Matrix A(rhs + 1);
    for (auto& r : rows)
        A.addRow(std::move(r));
    std::vector<int> order(static_cast<std::size_t>(rhs + 1));
    for (int i = 0; i <= rhs; ++i)
        order[static_cast<std::size_t>(i)] = i;
    linalg::Echelon e = linalg::rref(A, order);
    SolveResult res;
    std::vector<char> pivot(static_cast<std::size_t>(rhs + 1), 0);
    for (int c : e.pivotCols)
        pivot[static_cast<std::size_t>(c)] = 1;
    if (pivot[static_cast<std::size_t>(rhs)])
        return res;
    for (int j = 0; j < nx; ++j)
        res.freeUnknowns += !pivot[static_cast<std::size_t>(j)];
    ModuleVector x = fixed;
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
        int col = e.pivotCols[k];
        if (col >= nx)
            continue;
        const auto& row = e.rows[k];
        if (!row.empty() && row.back().first == rhs)
            x.add(unknowns[static_cast<std::size_t>(col)], row.back().second);
    }
    res.x = std::move(x);
    return res;
}

void requireW22Reducible(const VermaModule& V, int p)
{
    const auto& hw = V.hw();
    if (hw.kind != AlgebraKind::W22)
        throw KindMismatch("operation requires a W(2,2) highest weight");
    if (p < 1)
        throw PreconditionError("p must be positive");
    if (!reducibilityValue(hw.c, hw.hW, p).isZero())
        throw PreconditionError("2 h_W + (p^2 - 1) c / 12 does not vanish");
}

// Product of commuting current factors: x * X_{-k}.
ModuleVector timesCurrent(const ModuleVector& x, int k)
{
    ModuleVector r(x.level() + k);
    for (const auto& [m, c] : x.terms()) {
        PBWMonomial n = m;
        n.w.insert(std::upper_bound(n.w.begin(), n.w.end(), k, std::greater<int>()), k);
        r.add(n, c);
    }
    return r;
}

std::vector<ModuleVector> fromEchelon(const linalg::Echelon& e, const std::vector<PBWMonomial>& cols, int level)
{
    std::vector<ModuleVector> out;
    for (const auto& row : e.rows) {
        ModuleVector v(level);
        for (const auto& [c, s] : row)
            v.add(cols[static_cast<std::size_t>(c)], s);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

Scalar reducibilityValue(const Scalar& c, const Scalar& hW, int m)
{
    return Scalar(2) * hW + c * frac(static_cast<long>(m) * m - 1, 12);
}

std::optional<int> zdFindP(const Scalar& c, const Scalar& hW, int maxP)
{
    for (int m = 1; m <= maxP; ++m)
        if (reducibilityValue(c, hW, m).isZero())
            return m;
    return std::nullopt;
}

std::vector<Generator> raisingGenerators(AlgebraKind kind)
{
    Family f = currentFamily(kind);
    return {Generator::L(1), Generator::L(2), {f, 1}, {f, 2}};
}

std::vector<ModuleVector> singularSpace(const VermaModule& V, int level)
{
    if (level < 1)
        throw std::invalid_argument("singular vectors live at positive levels");
    auto cols = weightSpaceBasis(level);
    linalg::Matrix A(static_cast<int>(cols.size()));
    std::vector<linalg::Row> rows;
    for (const auto& g : raisingGenerators(V.kind())) {
        std::map<PBWMonomial, std::size_t, MonomialOrder> index;
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [m, c] : V.act(g, cols[j]).terms()) {
                auto [it, fresh] = index.emplace(m, rows.size());
                if (fresh)
                    rows.emplace_back();
                rows[it->second].emplace_back(static_cast<int>(j), c);
            }
    }
    for (auto& r : rows)
        A.addRow(std::move(r));
    std::vector<ModuleVector> out;
    for (const auto& x : linalg::nullspace(A)) {
        ModuleVector v(level);
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!x[j].isZero())
                v.add(cols[j], x[j]);
        out.push_back(std::move(v));
    }
    return out;
}

ModuleVector uPrime(const VermaModule& V, int p)
{
    const auto& hw = V.hw();
    if (hw.kind == AlgebraKind::W22) {
        requireW22Reducible(V, p);
    } else {
        HVCase which;
        auto q = hvFindP(hw, which);
        if (!q || *q != p || which != HVCase::ICase)
            throw PreconditionError("h_I / c_LI - 1 must equal p");
    }
    PBWMonomial lead({p}, {});
    std::vector<PBWMonomial> unknowns;
    for (const auto& m : weightSpaceBasis(p))
        if (currentOnly(m) && !(m == lead))
            unknowns.push_back(m);
    auto res = solveRaising(V, p, ModuleVector::monomial(lead), unknowns, nullptr);
    if (!res.x || res.freeUnknowns != 0)
        throw std::logic_error("singular vector with the expected leading term not found");
    return *res.x;
}

std::vector<ModuleVector> wordSpan(const VermaModule& V, const ModuleVector& x, int level)
{
    std::vector<ModuleVector> out;
    if (level < x.level())
        return out;
    for (const auto& y : weightSpaceBasis(level - x.level()))
        out.push_back(V.applyWord(y, x));
    return out;
}

std::vector<ModuleVector> jPrimeSpan(const VermaModule& V, int p, int level)
{
    if (level < p)
        throw PreconditionError("level must be at least p");
    ModuleVector u = uPrime(V, p);
    auto cols = weightSpaceBasis(level);
    std::map<PBWMonomial, int, MonomialOrder> col;
    std::vector<int> priority;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        col.emplace(cols[j], static_cast<int>(j));
        if (hasFactor(cols[j].w, p))
            priority.push_back(static_cast<int>(j));
    }
    linalg::Matrix A(static_cast<int>(cols.size()));
    for (const auto& v : wordSpan(V, u, level)) {
        linalg::Row r;
        for (const auto& [m, c] : v.terms())
            r.emplace_back(col.at(m), c);
        A.addRow(std::move(r));
    }
    return fromEchelon(linalg::rref(A, priority), cols, level);
}

Scalar necessaryH(int p, int r, const Scalar& hW)
{
    if (p < 1 || r < 1)
        throw std::invalid_argument("p and r must be positive");
    return hW + frac((13L * p + 1) * (p - 1), 12) + frac(static_cast<long>(1 - r) * p, 2);
}

Scalar candidateR(int p, const Scalar& h, const Scalar& hW)
{
    if (p < 1)
        throw std::invalid_argument("p must be positive");
    return Scalar(1) + Scalar(2) * (hW - h) / Scalar(p) + frac((13L * p + 1) * (p - 1), 6L * p);
}

std::optional<ModuleVector> subsingular(const VermaModule& V, int p, int r)
{
    requireW22Reducible(V, p);
    if (r < 1)
        throw PreconditionError("r must be positive");
    const int level = r * p;
    ModuleVector u = uPrime(V, p);
    PBWMonomial lead({}, std::vector<int>(static_cast<std::size_t>(r), p));
    std::vector<PBWMonomial> unknowns;
    for (const auto& m : weightSpaceBasis(level))
        if (!hasFactor(m.w, p) && !(m == lead))
            unknowns.push_back(m);
    auto res = solveRaising(V, level, ModuleVector::monomial(lead), unknowns,
                            [&](int t) { return wordSpan(V, u, t); });
    return res.x;
}

std::vector<ModuleVector> r1RecursionCoefficients(const Scalar& hW, int p)
{
    if (p < 2)
        throw PreconditionError("recursion needs p >= 2");
    std::vector<ModuleVector> w(static_cast<std::size_t>(p));
    for (int n = p - 1; n >= 1; --n) {
        ModuleVector s = ModuleVector::monomial(PBWMonomial({p - n}, {}), Scalar(n + p));
        for (int i = n + 1; i <= p - 1; ++i)
            s += timesCurrent(w[static_cast<std::size_t>(i)], i - n).scaled(Scalar(n + i));
        Scalar f = Scalar(static_cast<long>(p) * p - 1) /
                   (Scalar(2) * hW * Scalar(static_cast<long>(n) * (static_cast<long>(n) * n - static_cast<long>(p) * p)));
        w[static_cast<std::size_t>(n)] = s.scaled(f);
    }
    return w;
}

ModuleVector subsingularR1Recursive(const VermaModule& V, int p)
{
    requireW22Reducible(V, p);
    const auto& hw = V.hw();
    if (!(hw.h == necessaryH(p, 1, hw.hW)))
        throw PreconditionError("h must equal the r = 1 necessary value");
    auto w = r1RecursionCoefficients(hw.hW, p);
    ModuleVector fixed = ModuleVector::monomial(PBWMonomial({}, {p}));
    for (int i = 1; i < p; ++i)
        for (const auto& [m, c] : w[static_cast<std::size_t>(i)].terms())
            fixed.add(PBWMonomial(m.w, {i}), c);
    std::vector<PBWMonomial> unknowns;
    for (const auto& m : weightSpaceBasis(p))
        if (currentOnly(m) && !hasFactor(m.w, p))
            unknowns.push_back(m);
    ModuleVector u = uPrime(V, p);
    auto res = solveRaising(V, p, fixed, unknowns, [&](int t) { return wordSpan(V, u, t); });
    if (!res.x)
        throw std::logic_error("recursive r = 1 construction is inconsistent");
    return *res.x;
}

// ---- characters ------------------------------------------------------------

std::vector<Integer> bipartitionCounts(int N)
{
    if (N < 0)
        throw std::invalid_argument("negative truncation order");
    std::vector<Integer> part(static_cast<std::size_t>(N) + 1, 0);
    part[0] = 1;
    for (int k = 1; k <= N; ++k)
        for (int n = k; n <= N; ++n)
            part[static_cast<std::size_t>(n)] += part[static_cast<std::size_t>(n - k)];
    std::vector<Integer> out(static_cast<std::size_t>(N) + 1, 0);
    for (int n = 0; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            out[static_cast<std::size_t>(n)] += part[static_cast<std::size_t>(i)] * part[static_cast<std::size_t>(n - i)];
    return out;
}

std::string CharacterSeries::toString() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Integer& a = coeffs[k];
        if (a == 0)
            continue;
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        Integer m = abs(a);
        if (k == 0 || m != 1)
            os << m.get_str();
        if (k >= 1)
            os << "q";
        if (k >= 2)
            os << "^" << k;
        first = false;
    }
    return first ? "0" : os.str();
}

namespace {

// series * (sum_i poly[i] q^shift_i), truncated.
std::vector<Integer> timesPoly(const std::vector<Integer>& s, const std::vector<std::pair<int, int>>& poly)
{
    std::vector<Integer> out(s.size(), 0);
    for (const auto& [shift, coeff] : poly)
        for (std::size_t k = 0; k + static_cast<std::size_t>(shift) < s.size(); ++k)
            out[k + static_cast<std::size_t>(shift)] += s[k] * coeff;
    return out;
}

} // namespace

Characters characters(const Scalar& h, std::optional<int> p, std::optional<int> r, int N)
{
    auto base = bipartitionCounts(N);
    Characters ch;
    ch.charV = {h, base};
    if (p) {
        if (*p < 1)
            throw std::invalid_argument("p must be positive");
        ch.charJprime = CharacterSeries{h, timesPoly(base, {{*p, 1}})};
        ch.charLprime = CharacterSeries{h, timesPoly(base, {{0, 1}, {*p, -1}})};
        if (r) {
            if (*r < 1)
                throw std::invalid_argument("r must be positive");
            int rp = *r * *p;
            ch.charJ = CharacterSeries{h, timesPoly(base, {{*p, 1}, {rp, 1}, {rp + *p, -1}})};
            ch.charL = CharacterSeries{h, timesPoly(base, {{0, 1}, {*p, -1}, {rp, -1}, {rp + *p, 1}})};
        }
    }
    return ch;
}

std::vector<PBWMonomial> basisLprime(int p, int level)
{
    std::vector<PBWMonomial> out;
    for (auto& m : weightSpaceBasis(level))
        if (!hasFactor(m.w, p))
            out.push_back(std::move(m));
    return out;
}

std::vector<PBWMonomial> basisL(int p, int r, int level)
{
    std::vector<PBWMonomial> out;
    for (auto& m : basisLprime(p, level))
        if (lpDegree(m, p) < r)
            out.push_back(std::move(m));
    return out;
}

// ---- classification --------------------------------------------------------

std::string verdictName(Verdict v)
{
    switch (v) {
    case Verdict::VermaIrreducible:
        return "VermaIrreducible";
    case Verdict::UprimeOnly:
        return "UprimeOnly";
    case Verdict::UprimeAndSubsingular:
        return "UprimeAndSubsingular";
    }
    return "?";
}

std::string caseName(HVCase c)
{
    switch (c) {
    case HVCase::None:
        return "none";
    case HVCase::ICase:
        return "I";
    case HVCase::LCase:
        return "L";
    }
    return "?";
}

std::optional<int> hvFindP(const HighestWeight& hw, HVCase& which)
{
    which = HVCase::None;
    if (hw.kind != AlgebraKind::HV)
        throw KindMismatch("HV highest weight expected");
    if (hw.cLI.isZero())
        throw PreconditionError("c_LI must be nonzero");
    Scalar rho = hw.hW / hw.cLI;
    auto q = rho.constantValue();
    if (!q)
        throw PreconditionError("h_I / c_LI must be a constant to classify");
    if (q->get_den() != 1 || *q == 1)
        return std::nullopt;
    long n = q->get_num().get_si();
    if (n >= 2) {
        which = HVCase::ICase;
        return static_cast<int>(n - 1);
    }
    which = HVCase::LCase;
    return static_cast<int>(1 - n);
}

ModuleVector hvSingular(const VermaModule& V, int p, HVCase which)
{
    HVCase actual;
    auto q = hvFindP(V.hw(), actual);
    if (!q || *q != p || actual != which)
        throw PreconditionError("no singular vector of that shape at level p");
    if (which == HVCase::ICase)
        return uPrime(V, p);
    PBWMonomial lead({}, {p});
    std::vector<PBWMonomial> unknowns;
    for (const auto& m : weightSpaceBasis(p))
        if (m.l.size() <= 1 && !(m == lead))
            unknowns.push_back(m);
    auto res = solveRaising(V, p, ModuleVector::monomial(lead), unknowns, nullptr);
    if (!res.x || res.freeUnknowns != 0)
        throw std::logic_error("singular vector with leading term L_{-p} not found");
    return *res.x;
}

StructureReport classify(const VermaModule& V, int maxP)
{
    constexpr int kMaxSubsingularLevel = 12;
    const auto& hw = V.hw();
    StructureReport rep;
    rep.kind = hw.kind;
    if (hw.kind == AlgebraKind::HV) {
        HVCase which;
        auto p = hvFindP(hw, which);
        if (!p || *p > maxP) {
            if (p)
                rep.notes.push_back("singular level " + std::to_string(*p) + " exceeds maxP");
            return rep;
        }
        rep.verdict = Verdict::UprimeOnly;
        rep.p = p;
        rep.hvCase = which;
        rep.uPrime = hvSingular(V, *p, which);
        return rep;
    }
    auto p = zdFindP(hw.c, hw.hW, maxP);
    if (!p)
        return rep;
    rep.verdict = Verdict::UprimeOnly;
    rep.p = p;
    rep.uPrime = uPrime(V, *p);
    Scalar r = candidateR(*p, hw.h, hw.hW);
    auto rq = r.constantValue();
    if (!rq || rq->get_den() != 1 || *rq < 1) {
        rep.notes.push_back("no positive integer r solves the necessary condition (r = " + r.toString() + ")");
        return rep;
    }
    int ri = static_cast<int>(rq->get_num().get_si());
    if (ri * *p > kMaxSubsingularLevel) {
        rep.notes.push_back("candidate level " + std::to_string(ri * *p) + " beyond search limit; subsingular not checked");
        return rep;
    }
    if (auto u = subsingular(V, *p, ri)) {
        rep.verdict = Verdict::UprimeAndSubsingular;
        rep.r = ri;
        rep.u = std::move(u);
    } else {
        rep.notes.push_back("no subsingular vector found at the candidate level r = " + std::to_string(ri));
    }
    return rep;
}

// ---- quotients -------------------------------------------------------------

Quotient::Quotient(const VermaModule& V) : V_(&V), eliminate_([](const PBWMonomial&) { return false; }) {}

Quotient::Quotient(const VermaModule& V, std::vector<ModuleVector> generators, Predicate eliminate)
    : V_(&V), generators_(std::move(generators)), eliminate_(std::move(eliminate))
{
}

Quotient Quotient::fromReport(const VermaModule& V, const StructureReport& rep)
{
    if (rep.verdict == Verdict::VermaIrreducible)
        return Quotient(V);
    int p = *rep.p;
    if (rep.kind == AlgebraKind::HV) {
        bool icase = rep.hvCase == HVCase::ICase;
        return Quotient(V, {*rep.uPrime}, [p, icase](const PBWMonomial& m) {
            return hasFactor(icase ? m.w : m.l, p);
        });
    }
    if (rep.verdict == Verdict::UprimeOnly)
        return Quotient(V, {*rep.uPrime}, [p](const PBWMonomial& m) { return hasFactor(m.w, p); });
    int r = *rep.r;
    return Quotient(V, {*rep.uPrime, *rep.u},
                    [p, r](const PBWMonomial& m) { return hasFactor(m.w, p) || lpDegree(m, p) >= r; });
}

std::shared_ptr<const Quotient::Level> Quotient::level(int k) const
{
    {
        std::lock_guard lock(*mutex_);
        auto it = levels_.find(k);
        if (it != levels_.end())
            return it->second;
    }
    auto lv = std::make_shared<Level>();
    auto cols = weightSpaceBasis(k);
    std::vector<int> priority;
    std::map<PBWMonomial, int, MonomialOrder> col;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        col.emplace(cols[j], static_cast<int>(j));
        if (eliminate_(cols[j]))
            priority.push_back(static_cast<int>(j));
    }
    linalg::Matrix A(static_cast<int>(cols.size()));
    for (const auto& g : generators_)
        for (const auto& v : wordSpan(*V_, g, k)) {
            linalg::Row r;
            for (const auto& [m, c] : v.terms())
                r.emplace_back(col.at(m), c);
            A.addRow(std::move(r));
        }
    auto e = linalg::rref(A, priority);
    if (e.pivotCols.size() != priority.size() ||
        !std::all_of(e.pivotCols.begin(), e.pivotCols.end(),
                     [&](int c) { return eliminate_(cols[static_cast<std::size_t>(c)]); }))
        throw std::logic_error("submodule does not match the expected complement basis at level " +
                               std::to_string(k));
    for (int c : e.pivotCols)
        lv->pivots.push_back(cols[static_cast<std::size_t>(c)]);
    lv->rows = fromEchelon(e, cols, k);
    for (const auto& m : cols)
        if (!eliminate_(m))
            lv->basis.push_back(m);
    std::lock_guard lock(*mutex_);
    return levels_.emplace(k, std::move(lv)).first->second;
}

std::vector<PBWMonomial> Quotient::basis(int k) const
{
    if (trivial())
        return weightSpaceBasis(k);
    return level(k)->basis;
}

ModuleVector Quotient::reduce(const ModuleVector& x) const
{
    if (trivial() || x.isZero())
        return x;
    auto lv = level(x.level());
    ModuleVector out = x;
    for (std::size_t i = 0; i < lv->pivots.size(); ++i) {
        Scalar c = x.coefficient(lv->pivots[i]);
        if (!c.isZero())
            out -= lv->rows[i].scaled(c);
    }
    return out;
}

// ---- conjecture scan -------------------------------------------------------

bool ScanReport::allPass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.pass; });
}

HighestWeight scanWeight(int p, int r, const Scalar& offset)
{
    if (p == 1) {
        auto ps = makeParams({"c"});
        Scalar zero(0);
        return HighestWeight::w22(Scalar::param(ps, "c"), necessaryH(1, r, zero) + offset, zero);
    }
    auto ps = makeParams({"hW"});
    Scalar hW = Scalar::param(ps, "hW");
    Scalar c = Scalar(-24) * hW / Scalar(static_cast<long>(p) * p - 1);
    return HighestWeight::w22(c, necessaryH(p, r, hW) + offset, hW);
}

ScanReport conjectureScan(int pMax, int rMax, const std::vector<Rational>& offsets, int maxLevel)
{
    struct Task {
        int p, r;
        Rational delta;
    };
    std::vector<Task> tasks;
    for (int p = 1; p <= pMax; ++p)
        for (int r = 1; r <= rMax; ++r) {
            if (p * r > maxLevel)
                continue;
            tasks.push_back({p, r, Rational(0)});
            for (const auto& d : offsets)
                if (d != 0)
                    tasks.push_back({p, r, d});
        }
    ScanReport rep;
    std::vector<std::vector<ScanRow>> out(tasks.size());
    const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        const Task& t = tasks[static_cast<std::size_t>(i)];
        ScanRow row;
        row.p = t.p;
        row.r = t.r;
        bool exact = t.delta == 0;
        row.check = exact ? "found at necessary h" : "absent at offset " + t.delta.get_str();
        row.expected = exact;
        try {
            VermaModule V(scanWeight(t.p, t.r, Scalar(t.delta)));
            row.h = V.hw().h;
            auto u = subsingular(V, t.p, t.r);
            row.observed = u.has_value();
            row.pass = row.observed == row.expected;
            out[static_cast<std::size_t>(i)].push_back(row);
            if (exact && t.p == 1 && u) {
                ScanRow s = row;
                s.check = "only L(-1) factors";
                s.expected = true;
                s.observed = std::all_of(u->terms().begin(), u->terms().end(), [](const auto& kv) {
                    const auto& l = kv.first.l;
                    return std::all_of(l.begin(), l.end(), [](int k) { return k == 1; });
                });
                s.pass = s.observed;
                out[static_cast<std::size_t>(i)].push_back(s);
            }
        } catch (const std::exception& ex) {
            row.detail = ex.what();
            row.pass = false;
            out[static_cast<std::size_t>(i)].push_back(row);
        }
    }
    for (auto& v : out)
        for (auto& r : v)
            rep.rows.push_back(std::move(r));
    return rep;
}

} // namespace vwb
