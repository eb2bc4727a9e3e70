#include "vermawb/pbw.hpp"

#include <algorithm>
#include <sstream>

namespace vwb {

HighestWeight HighestWeight::w22(Scalar c, Scalar h, Scalar hW)
{
    HighestWeight w;
    w.kind = AlgebraKind::W22;
    w.c = std::move(c);
    w.h = std::move(h);
    w.hW = std::move(hW);
    w.params();
    return w;
}

HighestWeight HighestWeight::hv(Scalar cL, Scalar cLI, Scalar h, Scalar hI)
{
    HighestWeight w;
    w.kind = AlgebraKind::HV;
    w.c = std::move(cL);
    w.cLI = std::move(cLI);
    w.h = std::move(h);
    w.hW = std::move(hI);
    w.params();
    return w;
}

Params HighestWeight::params() const
{
    Params p;
    for (const Scalar* s : {&c, &h, &hW, &cLI, &cI})
        p = unifyParams(p, s->params());
    return p;
}

Scalar HighestWeight::eigenvalue(const Generator& g) const
{
    g.check(kind);
    switch (g.family) {
    case Family::C:
    case Family::CL:
        return c;
    case Family::CLI:
        return cLI;
    case Family::CI:
        return cI;
    default:
        break;
    }
    if (g.mode != 0)
        throw std::invalid_argument("eigenvalue of a non-Cartan generator");
    return g.family == Family::L ? h : hW;
}

HighestWeight HighestWeight::substitute(const std::map<std::string, Scalar>& b) const
{
    HighestWeight w = *this;
    for (Scalar* s : {&w.c, &w.h, &w.hW, &w.cLI, &w.cI})
        *s = s->substitute(b);
    return w;
}

HighestWeight HighestWeight::embed(const Params& ps) const
{
    HighestWeight w = *this;
    for (Scalar* s : {&w.c, &w.h, &w.hW, &w.cLI, &w.cI})
        *s = s->embed(ps);
    return w;
}

PBWMonomial::PBWMonomial(std::vector<int> wPart, std::vector<int> lPart) : w(std::move(wPart)), l(std::move(lPart))
{
    auto ok = [](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < 1 || (i > 0 && v[i] > v[i - 1]))
                return false;
        return true;
    };
    if (!ok(w) || !ok(l))
        throw std::invalid_argument("PBW parts must be positive and weakly decreasing");
}

int PBWMonomial::level() const
{
    int s = 0;
    for (int x : w)
        s += x;
    for (int x : l)
        s += x;
    return s;
}

namespace {

template <class Emit>
void runs(const std::vector<int>& v, Emit emit)
{
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        emit(v[i], static_cast<int>(j - i));
        i = j;
    }
}

char currentLetter(AlgebraKind k)
{
    return k == AlgebraKind::W22 ? 'W' : 'I';
}

} // namespace

std::string PBWMonomial::toString(AlgebraKind kind) const
{
    std::ostringstream os;
    auto part = [&](char letter, const std::vector<int>& v) {
        runs(v, [&](int n, int e) {
            os << letter << "(-" << n << ")";
            if (e > 1)
                os << '^' << e;
        });
    };
    part(currentLetter(kind), w);
    part('L', l);
    os << (empty() ? "v" : ".v");
    return os.str();
}

std::string PBWMonomial::toLatex(AlgebraKind kind) const
{
    std::ostringstream os;
    auto part = [&](char letter, const std::vector<int>& v) {
        runs(v, [&](int n, int e) {
            os << letter << "_{-" << n << '}';
            if (e > 1)
                os << "^{" << e << '}';
        });
    };
    part(currentLetter(kind), w);
    part('L', l);
    return os.str();
}

bool MonomialOrder::operator()(const PBWMonomial& a, const PBWMonomial& b) const
{
    if (a.l != b.l)
        return a.l > b.l;
    return a.w > b.w;
}

std::size_t MonomialHash::operator()(const PBWMonomial& m) const
{
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](int x) { h = (h ^ static_cast<std::size_t>(x + 0x9e37)) * 1099511628211ull; };
    for (int x : m.w)
        mix(x);
    mix(-1);
    for (int x : m.l)
        mix(x);
    return h;
}

int wDegree(const PBWMonomial& m)
{
    return static_cast<int>(m.w.size());
}

int lDegree(const PBWMonomial& m)
{
    return static_cast<int>(m.l.size());
}

int lpDegree(const PBWMonomial& m, int p)
{
    return static_cast<int>(std::count(m.l.begin(), m.l.end(), p));
}

// ---- ModuleVector ----------------------------------------------------------

ModuleVector ModuleVector::monomial(const PBWMonomial& m, Scalar coeff)
{
    ModuleVector v(m.level());
    v.add(m, coeff);
    return v;
}

Scalar ModuleVector::coefficient(const PBWMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void ModuleVector::add(const PBWMonomial& m, const Scalar& c)
{
    if (c.isZero())
        return;
    if (terms_.empty())
        level_ = m.level();
    else if (m.level() != level_)
        throw std::invalid_argument("level mismatch in module vector");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o)
{
    for (const auto& [m, c] : o.terms_)
        add(m, c);
    if (terms_.empty() && o.terms_.empty())
        level_ = std::max(level_, o.level_);
    return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o)
{
    for (const auto& [m, c] : o.terms_)
        add(m, -c);
    return *this;
}

ModuleVector ModuleVector::scaled(const Scalar& s) const
{
    ModuleVector r(level_);
    if (s.isZero())
        return r;
    for (const auto& [m, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), m, c * s);
    return r;
}

ModuleVector ModuleVector::substitute(const std::map<std::string, Scalar>& b) const
{
    ModuleVector r(level_);
    for (const auto& [m, c] : terms_)
        r.add(m, c.substitute(b));
    return r;
}

bool ModuleVector::operator==(const ModuleVector& o) const
{
    if (terms_.empty() && o.terms_.empty())
        return true;
    return level_ == o.level_ && terms_ == o.terms_;
}

namespace {

bool negativeLead(const Scalar& s)
{
    return sgn(s.numer().leading().coeff) < 0 && s.numer().terms().size() == 1;
}

} // namespace

std::string ModuleVector::toString(AlgebraKind kind) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c0] : terms_) {
        Scalar c = c0;
        bool neg = negativeLead(c);
        if (neg)
            c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono = m.toString(kind);
        mono = m.empty() ? "" : mono.substr(0, mono.size() - 2);
        std::string cs = c.toString();
        if (c.denom().isOne() && c.numer().terms().size() > 1)
            cs = "(" + cs + ")";
        if (c == Scalar(1) && !mono.empty())
            os << mono;
        else if (mono.empty())
            os << cs;
        else
            os << cs << ' ' << mono;
    }
    if (terms_.size() == 1 && terms_.begin()->second == Scalar(1))
        return terms_.begin()->first.toString(kind);
    return "(" + os.str() + ").v";
}

std::string ModuleVector::toLatex(AlgebraKind kind) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c0] : terms_) {
        Scalar c = c0;
        bool neg = negativeLead(c);
        if (neg)
            c = -c;
        if (neg)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        std::string mono = m.toLatex(kind);
        if (c == Scalar(1) && !mono.empty()) {
            os << mono;
            continue;
        }
        std::string cs = c.toLatex();
        if (c.denom().isOne() && c.numer().terms().size() > 1)
            cs = "\\left(" + cs + "\\right)";
        os << cs << mono;
    }
    if (terms_.size() == 1 && terms_.begin()->second == Scalar(1))
        return os.str() + "v";
    return "\\left(" + os.str() + "\\right)v";
}

// ---- action ----------------------------------------------------------------

std::size_t VermaModule::KeyHash::operator()(const Key& k) const
{
    return MonomialHash{}(k.m) * 31 + static_cast<std::size_t>(k.g.family) * 1000003 +
           static_cast<std::size_t>(k.g.mode + 4096);
}

VermaModule::VermaModule(HighestWeight hw) : hw_(std::move(hw))
{
    if (hw_.kind == AlgebraKind::HV && !hw_.cI.isZero())
        throw std::invalid_argument("HV highest weight requires c_I = 0");
}

std::size_t VermaModule::memoSize() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

ModuleVector VermaModule::act(const Generator& g, const ModuleVector& x) const
{
    ModuleVector out(x.level() + grade(g));
    for (const auto& [m, c] : x.terms())
        out += act(g, m).scaled(c);
    return out;
}

ModuleVector VermaModule::act(const Generator& g, const PBWMonomial& m) const
{
    g.check(hw_.kind);
    if (g.isCentral())
        return ModuleVector::monomial(m, hw_.eigenvalue(g));
    if (g.family == Family::L && g.mode == 0)
        return ModuleVector::monomial(m, hw_.h + Scalar(m.level()));
    if (g.mode > m.level())
        return ModuleVector(m.level() - g.mode);
    Key key{g, m};
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    ModuleVector r = actUncached(g, m);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), r);
    return r;
}

ModuleVector VermaModule::actUncached(const Generator& g, const PBWMonomial& m) const
{
    int target = m.level() - g.mode;
    if (m.empty()) {
        if (g.mode > 0)
            return ModuleVector(target);
        if (g.mode == 0)
            return ModuleVector::monomial(m, hw_.eigenvalue(g));
    }
    bool isCurrent = g.family != Family::L;
    if (g.mode < 0) {
        int n = -g.mode;
        if (isCurrent && (m.w.empty() || n >= m.w.front())) {
            PBWMonomial r = m;
            r.w.insert(r.w.begin(), n);
            return ModuleVector::monomial(r);
        }
        if (!isCurrent && m.w.empty() && (m.l.empty() || n >= m.l.front())) {
            PBWMonomial r = m;
            r.l.insert(r.l.begin(), n);
            return ModuleVector::monomial(r);
        }
    }
    // g X rest = X (g rest) + [g, X] rest
    PBWMonomial rest = m;
    Generator x;
    if (!m.w.empty()) {
        x = {currentFamily(hw_.kind), -m.w.front()};
        rest.w.erase(rest.w.begin());
    } else {
        x = Generator::L(-m.l.front());
        rest.l.erase(rest.l.begin());
    }
    ModuleVector out(target);
    out += act(x, act(g, rest));
    for (const auto& [y, c] : bracket(g, x, hw_.kind))
        out += act(y, rest).scaled(c);
    return out;
}

ModuleVector VermaModule::multiply(const std::vector<Generator>& y, const ModuleVector& x) const
{
    ModuleVector r = x;
    for (auto it = y.rbegin(); it != y.rend(); ++it)
        r = act(*it, r);
    return r;
}

std::vector<Generator> wordGenerators(const PBWMonomial& m, AlgebraKind kind)
{
    std::vector<Generator> out;
    for (int n : m.w)
        out.push_back({currentFamily(kind), -n});
    for (int n : m.l)
        out.push_back(Generator::L(-n));
    return out;
}

ModuleVector VermaModule::applyWord(const PBWMonomial& word, const ModuleVector& x) const
{
    return multiply(wordGenerators(word, hw_.kind), x);
}

ModuleVector lowestWComponent(const ModuleVector& x)
{
    if (x.isZero())
        throw std::invalid_argument("lowest W component of zero vector");
    int k = -1;
    for (const auto& [m, c] : x.terms())
        if (k < 0 || wDegree(m) < k)
            k = wDegree(m);
    ModuleVector r(x.level());
    for (const auto& [m, c] : x.terms())
        if (wDegree(m) == k)
            r.add(m, c);
    return r;
}

ModuleVector partialDerivative(const ModuleVector& x, bool currentFactor, int n)
{
    ModuleVector r(x.level() - n);
    for (const auto& [m, c] : x.terms()) {
        const auto& part = currentFactor ? m.w : m.l;
        auto mult = std::count(part.begin(), part.end(), n);
        if (!mult)
            continue;
        PBWMonomial d = m;
        auto& dp = currentFactor ? d.w : d.l;
        dp.erase(std::find(dp.begin(), dp.end(), n));
        r.add(d, c * Scalar(static_cast<long>(mult)));
    }
    return r;
}

std::vector<std::vector<int>> partitions(int n, int maxPart)
{
    if (maxPart < 0 || maxPart > n)
        maxPart = n;
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (int first = maxPart; first >= 1; --first)
        for (auto& rest : partitions(n - first, first)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

std::vector<PBWMonomial> weightSpaceBasis(int level)
{
    if (level < 0)
        throw std::invalid_argument("negative level");
    std::vector<PBWMonomial> out;
    for (int i = 0; i <= level; ++i)
        for (const auto& w : partitions(i))
            for (const auto& l : partitions(level - i))
                out.emplace_back(w, l);
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

} // namespace vwb
