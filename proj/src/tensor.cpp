#include "vermawb/tensor.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace vwb {

namespace {

std::optional<long> integerValue(const Scalar& x)
{
    auto q = x.constantValue();
    if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p())
        return std::nullopt;
    return q->get_num().get_si();
}

Rational constantOrThrow(const Scalar& x, const char* what)
{
    auto q = x.constantValue();
    if (!q)
        throw PreconditionError(std::string("integrality of symbolic ") + what + " is undecidable");
    return *q;
}

bool isInteger(const Rational& q)
{
    return q.get_den() == 1;
}

PBWMonomial withoutFirst(const PBWMonomial& m, Generator& first, AlgebraKind kind)
{
    PBWMonomial rest = m;
    if (!m.w.empty()) {
        first = {currentFamily(kind), -m.w.front()};
        rest.w.erase(rest.w.begin());
    } else {
        first = Generator::L(-m.l.front());
        rest.l.erase(rest.l.begin());
    }
    return rest;
}

// Column index for tensor coordinates, assigned on first sight.
struct Columns {
    std::map<TensorVector::Key, int, TensorVector::KeyLess> index;

    linalg::Row row(const TensorVector& x)
    {
        linalg::Row r;
        for (const auto& [k, c] : x.terms()) {
            auto [it, fresh] = index.emplace(k, static_cast<int>(index.size()));
            r.emplace_back(it->second, c);
        }
        return r;
    }
};

int rankOf(const std::vector<linalg::Row>& rows, int cols)
{
    linalg::Matrix A(cols);
    for (const auto& r : rows)
        A.addRow(r);
    return linalg::rref(A).rank();
}

} // namespace

// ---- series ----------------------------------------------------------------

IntermediateSeries IntermediateSeries::w22(Scalar alpha, Scalar beta)
{
    return {std::move(alpha), std::move(beta), Scalar(0)};
}

IntermediateSeries IntermediateSeries::hv(Scalar alpha, Scalar beta, Scalar F)
{
    return {std::move(alpha), std::move(beta), std::move(F)};
}

bool IntermediateSeries::reducible() const
{
    auto a = integerValue(alpha);
    auto b = integerValue(beta);
    return a && b && (*b == 0 || *b == 1) && F.isZero();
}

std::optional<int> IntermediateSeries::excludedIndex() const
{
    if (!reducible())
        return std::nullopt;
    long a = *integerValue(alpha);
    long b = *integerValue(beta);
    return static_cast<int>(b == 0 ? -a : -a - 1);
}

bool IntermediateSeries::excluded(int m) const
{
    auto e = excludedIndex();
    return e && *e == m;
}

Params IntermediateSeries::params() const
{
    return unifyParams(unifyParams(alpha.params(), beta.params()), F.params());
}

SeriesTerm seriesAction(const Generator& g, int m, const IntermediateSeries& s)
{
    if (s.excluded(m))
        throw std::invalid_argument("index " + std::to_string(m) + " is excluded from the series");
    SeriesTerm t{Scalar(0), m + g.mode};
    if (g.isCentral())
        return {Scalar(0), m};
    if (g.family == Family::L)
        t.coeff = -(Scalar(m) + s.alpha + s.beta + Scalar(g.mode) * s.beta);
    else if (g.family == Family::I)
        t.coeff = s.F;
    if (s.excluded(t.target))
        t.coeff = Scalar(0);
    return t;
}

// ---- tensor vectors --------------------------------------------------------

bool TensorVector::KeyLess::operator()(const Key& a, const Key& b) const
{
    if (a.first != b.first)
        return a.first > b.first;
    return MonomialOrder{}(a.second, b.second);
}

TensorVector TensorVector::basis(int m, const PBWMonomial& mono, const Scalar& c)
{
    TensorVector v(m - mono.level());
    v.add(m, mono, c);
    return v;
}

Scalar TensorVector::coefficient(int m, const PBWMonomial& mono) const
{
    auto it = terms_.find({m, mono});
    return it == terms_.end() ? Scalar(0) : it->second;
}

void TensorVector::add(int m, const PBWMonomial& mono, const Scalar& c)
{
    if (m - mono.level() != index_)
        throw std::invalid_argument("tensor term has the wrong index");
    if (c.isZero())
        return;
    auto [it, fresh] = terms_.emplace(Key{m, mono}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

TensorVector& TensorVector::operator+=(const TensorVector& o)
{
    if (terms_.empty())
        index_ = o.index_;
    for (const auto& [k, c] : o.terms_)
        add(k.first, k.second, c);
    return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& o)
{
    if (terms_.empty())
        index_ = o.index_;
    for (const auto& [k, c] : o.terms_)
        add(k.first, k.second, -c);
    return *this;
}

TensorVector TensorVector::scaled(const Scalar& s) const
{
    TensorVector r(index_);
    if (s.isZero())
        return r;
    for (const auto& [k, c] : terms_)
        r.terms_.emplace(k, c * s);
    return r;
}

bool TensorVector::operator==(const TensorVector& o) const
{
    return terms_ == o.terms_ && (terms_.empty() || index_ == o.index_);
}

std::string TensorVector::toString(AlgebraKind kind) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string cs = c.toString();
        bool neg = !cs.empty() && cs[0] == '-' && c.isConstant();
        if (neg)
            cs = (-c).toString();
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        if (cs != "1")
            os << (c.isConstant() ? cs : "(" + cs + ")") << " ";
        os << "v(" << k.first << ") (x) " << k.second.toString(kind);
        first = false;
    }
    return os.str();
}

// ---- tensor module ---------------------------------------------------------

TensorModule::TensorModule(HighestWeight hw, IntermediateSeries s, Window w, FactorMode mode, int maxP)
    : verma_(std::make_unique<VermaModule>(std::move(hw))), series_(std::move(s)), window_(w), mode_(mode)
{
    if (verma_->kind() == AlgebraKind::W22 && !series_.F.isZero())
        throw KindMismatch("F must vanish for W(2,2)");
    if (mode == FactorMode::Irreducible) {
        report_ = classify(*verma_, maxP);
        quotient_ = std::make_unique<Quotient>(Quotient::fromReport(*verma_, report_));
    } else {
        report_.kind = verma_->kind();
        quotient_ = std::make_unique<Quotient>(*verma_);
    }
}

void TensorModule::checkIndex(int m) const
{
    if (!window_.contains(m))
        throw WindowOverflow("index " + std::to_string(m) + " outside the window [" + std::to_string(window_.lo) +
                             ", " + std::to_string(window_.hi) + "]");
}

TensorVector TensorModule::act(const Generator& g, const TensorVector& x) const
{
    TensorVector out(x.index() + g.mode);
    for (const auto& [k, c] : x.terms()) {
        const auto& [m, mono] = k;
        if (!g.isCentral()) {
            SeriesTerm t = seriesAction(g, m, series_);
            if (!t.coeff.isZero()) {
                checkIndex(t.target);
                out.add(t.target, mono, c * t.coeff);
            }
        }
        ModuleVector y = quotient_->reduce(verma_->act(g, mono));
        for (const auto& [n, d] : y.terms())
            out.add(m, n, c * d);
    }
    return out;
}

TensorVector TensorModule::applyWord(const PBWMonomial& word, const TensorVector& x) const
{
    TensorVector r = x;
    auto gens = wordGenerators(word, verma_->kind());
    for (auto it = gens.rbegin(); it != gens.rend(); ++it)
        r = act(*it, r);
    return r;
}

TensorVector TensorModule::wordImage(int k, const PBWMonomial& word) const
{
    if (word.empty()) {
        checkIndex(k);
        return TensorVector::basis(k);
    }
    TensorVector::Key key{k, word};
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    Generator g;
    PBWMonomial rest = withoutFirst(word, g, verma_->kind());
    TensorVector r = act(g, wordImage(k, rest));
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), r);
    return r;
}

std::vector<int> TensorModule::reachable(int n, int maxIndex) const
{
    std::set<int> seen{n};
    std::deque<int> todo{n};
    Family cur = currentFamily(verma_->kind());
    while (!todo.empty()) {
        int m = todo.front();
        todo.pop_front();
        for (int j = 1; m + j <= maxIndex; ++j)
            for (Generator g : {Generator::L(j), Generator{cur, j}}) {
                SeriesTerm t = seriesAction(g, m, series_);
                if (!t.coeff.isZero() && seen.insert(t.target).second)
                    todo.push_back(t.target);
            }
    }
    return {seen.begin(), seen.end()};
}

int TensorModule::nearestBelow(int n) const
{
    int m = n - 1;
    while (series_.excluded(m))
        --m;
    return m;
}

bool cyclicityCheck(const TensorModule& T, int n, int depth)
{
    if (T.series().excluded(n))
        return false;
    int lower = T.nearestBelow(n);
    if (!T.window().contains(lower) || !T.window().contains(n + depth))
        throw WindowOverflow("window too small for the requested depth");
    Columns cols;
    std::vector<linalg::Row> rows;
    for (int k : T.reachable(n, n + depth))
        for (const auto& y : weightSpaceBasis(k - lower))
            rows.push_back(cols.row(T.wordImage(k, y)));
    linalg::Row target = cols.row(TensorVector::basis(lower));
    int cn = static_cast<int>(cols.index.size());
    int before = rankOf(rows, cn);
    rows.push_back(std::move(target));
    return rankOf(rows, cn) == before;
}

bool cyclicityCheck(const HighestWeight& hw, const IntermediateSeries& s, int n, int depth, int window)
{
    TensorModule T(hw, s, Window{-window, window});
    return cyclicityCheck(T, n, depth);
}

int subquotientDimension(const TensorModule& T, int n, int k, int depth)
{
    int w = n - k;
    if (!T.window().contains(w) || !T.window().contains(n + 1 + depth))
        throw WindowOverflow("window too small for the requested depth");
    Columns cols;
    std::vector<linalg::Row> base;
    if (!T.series().excluded(n + 1))
        for (int j : T.reachable(n + 1, n + 1 + depth))
            for (const auto& y : weightSpaceBasis(j - w))
                base.push_back(cols.row(T.wordImage(j, y)));
    std::vector<linalg::Row> top;
    for (const auto& y : weightSpaceBasis(k))
        top.push_back(cols.row(T.wordImage(n, y)));
    int cn = static_cast<int>(cols.index.size());
    int r0 = rankOf(base, cn);
    base.insert(base.end(), top.begin(), top.end());
    return rankOf(base, cn) - r0;
}

// ---- decisions -------------------------------------------------------------

std::string verdictName(TensorVerdict v)
{
    switch (v) {
    case TensorVerdict::Irreducible:
        return "Irreducible";
    case TensorVerdict::Reducible:
        return "Reducible";
    case TensorVerdict::Unknown:
        return "Unknown";
    }
    return "?";
}

std::string reasonName(TensorReason r)
{
    switch (r) {
    case TensorReason::NoSubsingular:
        return "NoSubsingular";
    case TensorReason::IntegralShift:
        return "IntegralShift";
    case TensorReason::ProductNonzero:
        return "ProductNonzero";
    case TensorReason::CertificateNonzero:
        return "CertificateNonzero";
    case TensorReason::Undecided:
        return "Undecided";
    }
    return "?";
}

Scalar lambdaProduct(const IntermediateSeries& s, const Scalar& n, int p, int r)
{
    if (p < 1 || r < 1)
        throw PreconditionError("p and r must be positive");
    Scalar t = s.alpha + Scalar(1 - p) * s.beta;
    Scalar prod(1);
    for (int j = 0; j < r; ++j)
        prod *= n + Scalar((r - j) * p - 1) + t;
    return prod;
}

HighestWeight subquotientWeight(const HighestWeight& hw, const IntermediateSeries& s, const Scalar& n)
{
    Scalar h = hw.h - n - s.alpha - s.beta;
    if (hw.kind == AlgebraKind::HV)
        return HighestWeight::hv(hw.c, hw.cLI, h, hw.hI() + s.F);
    return HighestWeight::w22(hw.c, h, hw.hW);
}

namespace {

Scalar indexParam()
{
    return Scalar::param(makeParams({"n"}), "n");
}

void requireConstantSeries(const IntermediateSeries& s)
{
    constantOrThrow(s.alpha, "alpha");
    constantOrThrow(s.beta, "beta");
}

// Break of a reducible series with excluded index e. For beta = 0 a break at
// e moves up to e+1. The beta = 1 series is isomorphic to the beta = 0 series
// at alpha+1 (v_m -> (m+alpha) v_m), whose break sits p lower.
int breakIndex(int k, int p, const IntermediateSeries& s)
{
    auto e = s.excludedIndex();
    if (!e)
        return k;
    if (!s.beta.isZero())
        k -= p;
    return k == *e ? k + 1 : k;
}

int indexBelow(int n, const IntermediateSeries& s)
{
    --n;
    while (s.excluded(n))
        --n;
    return n;
}

} // namespace

TensorDecision decideTensor(const HighestWeight& hw, const IntermediateSeries& s, int maxP)
{
    if (hw.kind != AlgebraKind::W22)
        throw KindMismatch("decideTensor expects a W(2,2) highest weight");
    if (!s.F.isZero())
        throw PreconditionError("F must vanish for W(2,2)");
    requireConstantSeries(s);
    VermaModule V(hw);
    StructureReport rep = classify(V, maxP);
    TensorDecision d;
    d.p = rep.p;
    d.r = rep.r;
    if (rep.verdict != Verdict::UprimeAndSubsingular) {
        bool unchecked = std::any_of(rep.notes.begin(), rep.notes.end(),
                                     [](const std::string& n) { return n.find("not checked") != std::string::npos; });
        if (unchecked) {
            d.verdict = TensorVerdict::Unknown;
            d.reason = TensorReason::Undecided;
            d.notes = rep.notes;
            return d;
        }
        d.verdict = TensorVerdict::Reducible;
        d.reason = TensorReason::NoSubsingular;
        d.notes.push_back(rep.verdict == Verdict::VermaIrreducible ? "L(c,h,h_W) is the Verma module"
                                                                   : "maximal submodule generated by u'");
        return d;
    }
    int p = *rep.p, r = *rep.r;
    Rational t = constantOrThrow(s.alpha + Scalar(1 - p) * s.beta, "alpha + (1-p) beta");
    if (isInteger(t)) {
        d.verdict = TensorVerdict::Reducible;
        d.reason = TensorReason::IntegralShift;
        long ti = t.get_num().get_si();
        d.witnessIndex = breakIndex(static_cast<int>(1 - p - ti), p, s);
        if (s.reducible())
            d.notes.push_back("reducible series: breaks shifted across the excluded index");
        for (int j = 1; j <= r; ++j) {
            int b = breakIndex(static_cast<int>(1 - j * p - ti), p, s);
            d.notes.push_back("U_" + std::to_string(b) + " != U_" + std::to_string(indexBelow(b, s)));
        }
        // subquotient U_{k-1}/U_k of the first break
        d.quotientWeight = subquotientWeight(hw, s, Scalar(indexBelow(*d.witnessIndex, s)));
        if (s.reducible() && hw.hW.isZero())
            d.notes.push_back("subquotient list for h_W = 0 and a reducible series has an exceptional term; not identified");
        return d;
    }
    d.verdict = TensorVerdict::Irreducible;
    d.reason = TensorReason::ProductNonzero;
    d.witnessProduct = lambdaProduct(s, indexParam(), p, r);
    return d;
}

int degreeIn(const Scalar& x, std::string_view name)
{
    if (x.isZero())
        return -1;
    auto ps = x.params();
    if (!ps)
        return 0;
    auto i = ps->index(name);
    if (!i)
        return 0;
    if (x.denom().coefficientsIn(*i).size() > 1)
        throw std::domain_error("denominator depends on " + std::string(name));
    return static_cast<int>(x.numer().coefficientsIn(*i).size()) - 1;
}

namespace {

// Coefficient of name^k in x (denominator free of name).
Scalar coefficientIn(const Scalar& x, std::string_view name, int k)
{
    auto ps = x.params();
    if (!ps || !ps->index(name))
        return k == 0 ? x : Scalar(0);
    auto i = *ps->index(name);
    auto cs = x.numer().coefficientsIn(i);
    if (k >= static_cast<int>(cs.size()))
        return Scalar(0);
    return Scalar::fraction(cs[static_cast<std::size_t>(k)], x.denom());
}

Params joinParams(const std::vector<Params>& spaces, const std::vector<std::string>& extra)
{
    std::vector<std::string> names;
    auto push = [&](const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end())
            names.push_back(n);
    };
    for (const auto& s : spaces)
        if (s)
            for (const auto& n : s->names())
                push(n);
    for (const auto& n : extra)
        push(n);
    if (names.size() > ParamSpace::kMaxParams)
        throw ParamMismatch("too many symbolic parameters");
    return makeParams(names);
}

} // namespace

HVPolynomials hvDecisionPolynomials(const HighestWeight& hw, const IntermediateSeries& s, int p)
{
    if (hw.kind != AlgebraKind::HV)
        throw KindMismatch("HV highest weight expected");
    for (const char* reserved : {"F", "n"})
        if (hw.params() && hw.params()->index(reserved))
            throw PreconditionError(std::string("parameter name ") + reserved + " is reserved");
    HVCase which;
    auto q = hvFindP(hw, which);
    if (!q || *q != p)
        throw PreconditionError("p must equal |h_I / c_LI - 1| for a reducible HV Verma module");
    HVPolynomials out;
    out.which = which;
    out.p = p;
    out.params = joinParams({hw.params(), s.alpha.params(), s.beta.params()}, {"F", "n"});
    Scalar F = Scalar::param(out.params, "F"), n = Scalar::param(out.params, "n");
    // Shift indices by n: v_j here stands for v_{j+n}; target v_{-1}, source v_{p-1}.
    IntermediateSeries shifted{s.alpha.embed(out.params) + n, s.beta.embed(out.params), F};
    TensorModule T(hw.embed(out.params), shifted, Window{-1, p - 1}, FactorMode::Verma);
    ModuleVector u = hvSingular(T.verma(), p, which);

    Columns cols;
    std::vector<linalg::Row> unknowns;
    for (int k = 0; k <= p - 1; ++k)
        for (const auto& y : weightSpaceBasis(k + 1))
            unknowns.push_back(cols.row(T.wordImage(k, y)));
    unknowns.push_back(cols.row(TensorVector::basis(-1)));
    TensorVector z(p - 1 - p);
    for (const auto& [m, c] : u.terms())
        z.add(p - 1, m, c);
    linalg::Row zr = cols.row(z);
    const int nc = static_cast<int>(cols.index.size());
    // Columns of the system are the span vectors; rows are tensor coordinates.
    linalg::Matrix A(static_cast<int>(unknowns.size()));
    std::vector<linalg::Row> byCoord(static_cast<std::size_t>(nc));
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        for (const auto& [c, v] : unknowns[j])
            byCoord[static_cast<std::size_t>(c)].emplace_back(static_cast<int>(j), v);
    std::vector<Scalar> b(static_cast<std::size_t>(nc));
    for (const auto& [c, v] : zr)
        b[static_cast<std::size_t>(c)] = v;
    for (auto& r : byCoord)
        A.rows.push_back(linalg::normalizedRow(std::move(r)));
    auto x = linalg::solve(A, b);
    if (!x)
        throw std::logic_error("elimination of higher tensor components is inconsistent");
    if (static_cast<int>(unknowns.size()) != nc)
        throw std::logic_error("elimination system is not square");
    out.certificate = x->back();
    if (which == HVCase::ICase) {
        if (degreeIn(out.certificate, "n") > 0 || !coefficientIn(out.certificate, "F", 0).isZero())
            throw std::logic_error("I-case certificate must be a multiple of F without n");
        out.s = out.certificate / F;
    } else {
        if (degreeIn(out.certificate, "n") > 1)
            throw std::logic_error("L-case certificate must be linear in n");
        out.q = coefficientIn(out.certificate, "n", 1);
        out.r = coefficientIn(out.certificate, "n", 0);
    }
    return out;
}

TensorDecision decideTensorHV(const HighestWeight& hw, const IntermediateSeries& s, int maxP)
{
    if (hw.kind != AlgebraKind::HV)
        throw KindMismatch("decideTensorHV expects an HV highest weight");
    requireConstantSeries(s);
    TensorDecision d;
    Rational alpha = *s.alpha.constantValue();
    Rational beta = *s.beta.constantValue();

    if (hw.h.isZero() && hw.hI().isZero()) {
        d.p = 1;
        d.hvCase = HVCase::LCase;
        if (!isInteger(alpha)) {
            d.verdict = TensorVerdict::Irreducible;
            d.reason = TensorReason::ProductNonzero;
            d.witnessProduct = indexParam() + s.alpha;
            return d;
        }
        d.verdict = TensorVerdict::Reducible;
        d.reason = TensorReason::IntegralShift;
        int k = static_cast<int>(-alpha.get_num().get_si());
        d.witnessIndex = breakIndex(k, 1, s);
        d.quotientWeight = subquotientWeight(hw, s, Scalar(indexBelow(*d.witnessIndex, s)));
        d.notes.push_back(std::string("quotient by U_") + std::to_string(k) + " is a Verma module");
        return d;
    }

    HVCase which;
    auto p = hvFindP(hw, which);
    if (!p) {
        d.verdict = TensorVerdict::Reducible;
        d.reason = TensorReason::NoSubsingular;
        d.notes.push_back("L(c_L, c_LI, h, h_I) is the Verma module");
        return d;
    }
    if (*p > maxP) {
        d.notes.push_back("singular level exceeds maxP");
        return d;
    }
    d.p = p;
    d.hvCase = which;
    if (s.F.isZero()) {
        if (which == HVCase::ICase) {
            d.verdict = TensorVerdict::Reducible;
            d.reason = TensorReason::NoSubsingular;
            d.notes.push_back("singular vector lies in the I-span");
            return d;
        }
        Rational t = alpha + Rational(1 - *p) * beta;
        if (isInteger(t)) {
            d.verdict = TensorVerdict::Reducible;
            d.reason = TensorReason::IntegralShift;
            long ti = t.get_num().get_si();
            d.witnessIndex = breakIndex(static_cast<int>(1 - *p - ti), *p, s);
            d.quotientWeight = subquotientWeight(hw, s, Scalar(indexBelow(*d.witnessIndex, s)));
            return d;
        }
        d.verdict = TensorVerdict::Irreducible;
        d.reason = TensorReason::ProductNonzero;
        d.witnessProduct = lambdaProduct(s, indexParam(), *p, 1);
        return d;
    }

    HVPolynomials polys = hvDecisionPolynomials(hw, s, *p);
    Scalar cert = polys.certificate;
    if (s.F.isConstant())
        cert = cert.substitute({{"F", s.F.embed(polys.params)}});
    else if (!(s.F.embed(polys.params) == Scalar::param(polys.params, "F")))
        throw PreconditionError("symbolic F must be the parameter F itself");
    d.witnessProduct = cert;
    if (!s.F.isConstant()) {
        d.notes.push_back("F is symbolic; certificate returned unevaluated");
        return d;
    }
    if (which == HVCase::ICase) {
        if (!cert.isZero()) {
            d.verdict = TensorVerdict::Irreducible;
            d.reason = TensorReason::CertificateNonzero;
        } else {
            d.notes.push_back("F s(F) vanishes at this F");
        }
        return d;
    }
    Scalar qv = coefficientIn(cert, "n", 1), rv = coefficientIn(cert, "n", 0);
    auto qc = qv.constantValue(), rc = rv.constantValue();
    if (!qc || !rc) {
        d.notes.push_back("certificate coefficients are not constant");
        return d;
    }
    bool vanishesSomewhere = (*qc == 0 && *rc == 0) || (*qc != 0 && isInteger(Rational(-*rc / *qc)));
    if (!vanishesSomewhere) {
        d.verdict = TensorVerdict::Irreducible;
        d.reason = TensorReason::CertificateNonzero;
    } else {
        d.notes.push_back("q(F) n + r(F) has an integral root at this F");
    }
    return d;
}

} // namespace vwb
