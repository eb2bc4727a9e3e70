#include "vermawb/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

namespace vwb {

ParamSpace::ParamSpace(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.size() > kMaxParams)
        throw std::invalid_argument("too many parameters (max " + std::to_string(kMaxParams) + ")");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty())
            throw std::invalid_argument("empty parameter name");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate parameter name: " + names_[i]);
    }
}

std::optional<std::size_t> ParamSpace::index(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

Params makeParams(std::vector<std::string> names)
{
    if (names.empty())
        return nullptr;
    return std::make_shared<const ParamSpace>(std::move(names));
}

Params unifyParams(const Params& a, const Params& b)
{
    if (!a)
        return b;
    if (!b || a == b)
        return a;
    if (*a == *b)
        return a;
    throw ParamMismatch("parameter contexts differ");
}

namespace {

bool divides(ExpKey a, ExpKey b)
{
    for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v)
        if (expOf(a, v) > expOf(b, v))
            return false;
    return true;
}

ExpKey monomialMin(ExpKey a, ExpKey b)
{
    ExpKey r = 0;
    for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v)
        r |= expKey(v, std::min(expOf(a, v), expOf(b, v)));
    return r;
}

} // namespace

void Poly::canonicalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exps > b.exps; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        Term t = std::move(terms_[i]);
        std::size_t j = i + 1;
        for (; j < terms_.size() && terms_[j].exps == t.exps; ++j)
            t.coeff += terms_[j].coeff;
        i = j;
        if (sgn(t.coeff) != 0)
            terms_[out++] = std::move(t);
    }
    terms_.resize(out);
    if (isConstant())
        params_.reset();
}

Poly Poly::constant(const Rational& c)
{
    Poly p;
    if (sgn(c) != 0) {
        p.terms_.push_back({0, c});
        p.terms_[0].coeff.canonicalize();
    }
    return p;
}

Poly Poly::variable(const Params& params, std::size_t var)
{
    if (!params || var >= params->size())
        throw std::out_of_range("variable index out of range");
    Poly p;
    p.params_ = params;
    p.terms_.push_back({expKey(var, 1), Rational(1)});
    return p;
}

Poly Poly::fromTerms(const Params& params, std::vector<Term> terms)
{
    Poly p;
    p.params_ = params;
    p.terms_ = std::move(terms);
    for (auto& t : p.terms_)
        t.coeff.canonicalize();
    std::size_t n = params ? params->size() : 0;
    for (const auto& t : p.terms_)
        for (std::size_t v = n; v < ParamSpace::kMaxParams; ++v)
            if (expOf(t.exps, v) != 0)
                throw std::invalid_argument("exponent for undeclared parameter");
    p.canonicalize();
    return p;
}

Rational Poly::constantValue() const
{
    if (!isConstant())
        throw std::domain_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

unsigned Poly::degree(std::size_t var) const
{
    unsigned d = 0;
    for (const auto& t : terms_)
        d = std::max(d, expOf(t.exps, var));
    return d;
}

unsigned Poly::totalDegree() const
{
    unsigned d = 0;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v)
            s += expOf(t.exps, v);
        d = std::max(d, s);
    }
    return d;
}

unsigned Poly::variableMask() const
{
    unsigned m = 0;
    for (const auto& t : terms_)
        for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v)
            if (expOf(t.exps, v))
                m |= 1u << v;
    return m;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.isZero())
        return *this;
    params_ = unifyParams(params_, o.params_);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exps > o.terms_[j].exps)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].exps > terms_[i].exps) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (sgn(c) != 0)
                out.push_back({terms_[i].exps, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    if (isConstant())
        params_.reset();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    return *this += -o;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r;
    if (a.isZero() || b.isZero())
        return r;
    r.params_ = unifyParams(a.params_, b.params_);
    if (b.terms_.size() == 1) {
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_)
            r.terms_.push_back({t.exps + b.terms_[0].exps, t.coeff * b.terms_[0].coeff});
        if (r.isConstant())
            r.params_.reset();
        return r;
    }
    if (a.terms_.size() == 1)
        return b * a;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            r.terms_.push_back({x.exps + y.exps, x.coeff * y.coeff});
    r.canonicalize();
    return r;
}

Poly Poly::scaled(const Rational& c) const
{
    if (sgn(c) == 0)
        return Poly();
    Poly r = *this;
    for (auto& t : r.terms_)
        t.coeff *= c;
    return r;
}

Poly Poly::shifted(ExpKey monomial) const
{
    Poly r = *this;
    for (auto& t : r.terms_)
        t.exps += monomial;
    return r;
}

Poly Poly::divExact(const Poly& a, const Poly& b)
{
    if (b.isZero())
        throw DivisionByZero("polynomial division by zero");
    if (b.isConstant())
        return a.scaled(1 / b.terms_[0].coeff);
    Poly q;
    q.params_ = unifyParams(a.params_, b.params_);
    Poly r = a;
    const Term& lb = b.terms_[0];
    Rational inv = 1 / lb.coeff;
    while (!r.isZero()) {
        const Term& lr = r.terms_[0];
        if (!divides(lb.exps, lr.exps))
            throw std::domain_error("inexact polynomial division");
        Term t{lr.exps - lb.exps, lr.coeff * inv};
        q.terms_.push_back(t);
        Poly m;
        m.params_ = q.params_;
        m.terms_.push_back(std::move(t));
        r -= m * b;
    }
    if (q.isConstant())
        q.params_.reset();
    return q;
}

std::vector<Poly> Poly::coefficientsIn(std::size_t var) const
{
    std::vector<Poly> out(degree(var) + 1);
    for (const auto& t : terms_) {
        unsigned e = expOf(t.exps, var);
        out[e].terms_.push_back({t.exps - expKey(var, e), t.coeff});
    }
    for (auto& p : out) {
        p.params_ = params_;
        p.canonicalize();
    }
    return out;
}

Poly Poly::fromCoefficients(const Params& params, std::size_t var, const std::vector<Poly>& coeffs)
{
    Poly r;
    r.params_ = params;
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        for (const auto& t : coeffs[e].terms_)
            r.terms_.push_back({t.exps + expKey(var, static_cast<unsigned>(e)), t.coeff});
    r.canonicalize();
    return r;
}

Poly Poly::withParams(const Params& p) const
{
    Poly r = *this;
    r.params_ = p;
    if (r.isConstant())
        r.params_.reset();
    return r;
}

namespace {

Poly makeMonic(Poly p)
{
    if (p.isZero())
        return p;
    return p.scaled(1 / p.leading().coeff);
}

int mainVariable(unsigned mask)
{
    for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v)
        if (mask & (1u << v))
            return static_cast<int>(v);
    return -1;
}

// Univariate gcd over Q by the small-prime method: images modulo 61-bit
// primes are combined by CRT until the lifted candidate divides both inputs.
using ZPoly = std::vector<Integer>;
using u64 = std::uint64_t;

u64 mulMod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 invMod(u64 a, u64 p)
{
    u64 r = 1;
    for (u64 e = p - 2; e; e >>= 1, a = mulMod(a, a, p))
        if (e & 1)
            r = mulMod(r, a, p);
    return r;
}

ZPoly primitivePart(const std::vector<Rational>& v)
{
    Integer den = 1;
    for (const auto& c : v)
        den = lcm(den, Integer(c.get_den()));
    ZPoly out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_num() * (den / v[i].get_den());
        g = gcd(g, out[i]);
    }
    for (auto& c : out)
        c /= g;
    return out;
}

std::vector<u64> reduceMod(const ZPoly& a, u64 p)
{
    std::vector<u64> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
    return out;
}

// Monic gcd of polynomials with nonzero leading coefficients mod p.
std::vector<u64> gcdMod(std::vector<u64> a, std::vector<u64> b, u64 p)
{
    if (a.size() < b.size())
        std::swap(a, b);
    while (!b.empty()) {
        u64 li = invMod(b.back(), p);
        for (auto& c : b)
            c = mulMod(c, li, p);
        while (a.size() >= b.size()) {
            u64 f = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p - mulMod(f, b[i], p)) % p;
            a.pop_back();
            while (!a.empty() && a.back() == 0)
                a.pop_back();
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return a;
}

bool dividesZ(const ZPoly& g, ZPoly a)
{
    while (a.size() >= g.size()) {
        if (a.back() % g.back() != 0)
            return false;
        Integer f = a.back() / g.back();
        std::size_t shift = a.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            a[shift + i] -= f * g[i];
        a.pop_back();
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    return a.empty();
}

std::vector<Rational> gcdOverQ(const std::vector<Rational>& x, const std::vector<Rational>& y)
{
    ZPoly A = primitivePart(x), B = primitivePart(y);
    Integer gamma = gcd(A.back(), B.back());
    Integer M = 0;
    ZPoly H;
    Integer prime = Integer(1) << 61;
    for (;;) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        u64 p = mpz_get_ui(prime.get_mpz_t());
        if (mpz_fdiv_ui(A.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(B.back().get_mpz_t(), p) == 0)
            continue;
        auto g = gcdMod(reduceMod(A, p), reduceMod(B, p), p);
        if (g.size() == 1)
            return {Rational(1)};
        if (M != 0 && g.size() > H.size())
            continue;
        u64 gm = mpz_fdiv_ui(gamma.get_mpz_t(), p);
        for (auto& c : g)
            c = mulMod(c, gm, p);
        if (M == 0 || g.size() < H.size()) {
            H.assign(g.begin(), g.end());
            M = prime;
        } else {
            u64 mi = invMod(mpz_fdiv_ui(M.get_mpz_t(), p), p);
            for (std::size_t i = 0; i < H.size(); ++i) {
                u64 hi = mpz_fdiv_ui(H[i].get_mpz_t(), p);
                u64 t = mulMod((g[i] + p - hi) % p, mi, p);
                H[i] += M * Integer(t);
            }
            M *= prime;
        }
        std::vector<Rational> lifted(H.size());
        Integer half = M / 2;
        for (std::size_t i = 0; i < H.size(); ++i)
            lifted[i] = Rational(H[i] > half ? Integer(H[i] - M) : H[i]);
        ZPoly G = primitivePart(lifted);
        if (dividesZ(G, A) && dividesZ(G, B)) {
            std::vector<Rational> out(G.size());
            for (std::size_t i = 0; i < G.size(); ++i)
                out[i] = Rational(G[i], G.back());
            for (auto& c : out)
                c.canonicalize();
            return out;
        }
    }
}

Poly univariateGcd(Poly a, Poly b, std::size_t var)
{
    auto toDense = [var](const Poly& p) {
        std::vector<Rational> d(p.degree(var) + 1);
        for (const auto& t : p.terms())
            d[expOf(t.exps, var)] = t.coeff;
        return d;
    };
    std::vector<Rational> x = gcdOverQ(toDense(a), toDense(b));
    std::vector<Poly::Term> terms;
    for (std::size_t e = 0; e < x.size(); ++e)
        if (sgn(x[e]) != 0)
            terms.push_back({expKey(var, static_cast<unsigned>(e)), x[e]});
    Params ps = unifyParams(a.params(), b.params());
    return makeMonic(Poly::fromTerms(ps, std::move(terms)));
}

Poly gcdImpl(const Poly& a, const Poly& b);

Poly contentIn(const Poly& p, std::size_t var)
{
    auto cs = p.coefficientsIn(var);
    Poly g;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it->isZero())
            continue;
        g = g.isZero() ? makeMonic(*it) : gcdImpl(g, *it);
        if (g.isConstant())
            return Poly::constant(1);
    }
    return g;
}

Poly pseudoRemainder(Poly a, const Poly& b, std::size_t var)
{
    unsigned db = b.degree(var);
    auto bc = b.coefficientsIn(var);
    const Poly& lb = bc.back();
    while (!a.isZero() && a.degree(var) >= db) {
        unsigned da = a.degree(var);
        Poly la = a.coefficientsIn(var).back();
        a = a * lb - (la * b).shifted(expKey(var, da - db));
    }
    return a;
}

Poly gcdImpl(const Poly& a, const Poly& b)
{
    if (a.isZero())
        return makeMonic(b);
    if (b.isZero())
        return makeMonic(a);
    if (a.isConstant() || b.isConstant())
        return Poly::constant(1);
    if (a.terms().size() == 1 || b.terms().size() == 1) {
        const Poly& m = a.terms().size() == 1 ? a : b;
        const Poly& o = a.terms().size() == 1 ? b : a;
        ExpKey g = m.terms()[0].exps;
        for (const auto& t : o.terms())
            g = monomialMin(g, t.exps);
        return Poly::constant(1).shifted(g).withParams(unifyParams(a.params(), b.params()));
    }
    unsigned ma = a.variableMask(), mb = b.variableMask();
    unsigned mask = ma | mb;
    int var = mainVariable(mask);
    if ((mask & (mask - 1)) == 0)
        return univariateGcd(a, b, static_cast<std::size_t>(var));
    // Pick a variable present in both if possible; otherwise the gcd divides
    // the content with respect to the variable only one of them involves.
    std::size_t v = static_cast<std::size_t>(var);
    if (!(ma & (1u << v)) || !(mb & (1u << v))) {
        const Poly& with = (ma & (1u << v)) ? a : b;
        const Poly& without = (ma & (1u << v)) ? b : a;
        return gcdImpl(contentIn(with, v), without);
    }
    Poly ca = contentIn(a, v), cb = contentIn(b, v);
    Poly cont = gcdImpl(ca, cb);
    Poly x = Poly::divExact(a, ca), y = Poly::divExact(b, cb);
    if (x.degree(v) < y.degree(v))
        std::swap(x, y);
    while (!y.isZero() && y.degree(v) > 0) {
        Poly r = pseudoRemainder(x, y, v);
        x = std::move(y);
        if (r.isZero()) {
            y = Poly();
            break;
        }
        y = Poly::divExact(r, contentIn(r, v));
        y = makeMonic(y);
    }
    Poly g;
    if (y.isZero())
        g = Poly::divExact(x, contentIn(x, v));
    else
        g = Poly::constant(1);
    return makeMonic(g * cont);
}

void appendRational(std::ostringstream& os, const Rational& q)
{
    os << q.get_num();
    if (q.get_den() != 1)
        os << '/' << q.get_den();
}

} // namespace

Poly Poly::gcd(const Poly& a, const Poly& b)
{
    unifyParams(a.params_, b.params_);
    return gcdImpl(a, b);
}

std::string Poly::toString() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (sgn(c) < 0) {
                os << '-';
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        bool mono = t.exps != 0;
        if (!mono || c != 1) {
            appendRational(os, c);
            if (mono)
                os << '*';
        }
        bool firstVar = true;
        for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v) {
            unsigned e = expOf(t.exps, v);
            if (!e)
                continue;
            if (!firstVar)
                os << '*';
            firstVar = false;
            os << params_->names()[v];
            if (e > 1)
                os << '^' << e;
        }
    }
    return os.str();
}

std::string latexParamName(std::string_view name)
{
    std::string n(name);
    if (n.size() > 1 && n.size() <= 3 && (n[0] == 'h' || n[0] == 'c')) {
        bool upper = true;
        for (std::size_t i = 1; i < n.size(); ++i)
            upper = upper && std::isupper(static_cast<unsigned char>(n[i]));
        if (upper)
            return n.substr(0, 1) + "_{" + n.substr(1) + "}";
    }
    if (n == "alpha" || n == "beta")
        return "\\" + n;
    return n;
}

std::string Poly::toLatex() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (sgn(c) < 0) {
            os << '-';
            c = -c;
        } else if (!first) {
            os << '+';
        }
        first = false;
        bool mono = t.exps != 0;
        if (!mono || c != 1) {
            if (c.get_den() != 1)
                os << "\\frac{" << c.get_num() << "}{" << c.get_den() << "}";
            else
                os << c.get_num();
        }
        for (std::size_t v = 0; v < ParamSpace::kMaxParams; ++v) {
            unsigned e = expOf(t.exps, v);
            if (!e)
                continue;
            os << latexParamName(params_->names()[v]);
            if (e > 1)
                os << "^{" << e << '}';
        }
    }
    return os.str();
}

} // namespace vwb
