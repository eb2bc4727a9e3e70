#include "vermawb/scalar.hpp"

#include <bit>
#include <cctype>

namespace vwb {

namespace {

Poly integerPrimitiveScale(const Poly& den, Rational& scale)
{
    // scale * den has coprime integer coefficients and positive leading term.
    Integer g = 0, l = 1;
    for (const auto& t : den.terms()) {
        g = gcd(g, Integer(t.coeff.get_num()));
        l = lcm(l, Integer(t.coeff.get_den()));
    }
    scale = Rational(l, g);
    scale.canonicalize();
    if (sgn(den.leading().coeff) < 0)
        scale = -scale;
    return den.scaled(scale);
}

} // namespace

Scalar::Scalar(const Rational& v) : num_(Poly::constant(v)), den_(Poly::constant(1)) {}

Scalar Scalar::param(const Params& params, std::string_view name)
{
    if (!params)
        throw std::invalid_argument("unknown parameter: " + std::string(name));
    auto idx = params->index(name);
    if (!idx)
        throw std::invalid_argument("unknown parameter: " + std::string(name));
    Scalar s;
    s.num_ = Poly::variable(params, *idx);
    return s;
}

Scalar Scalar::fraction(const Poly& numer, const Poly& denom)
{
    if (denom.isZero())
        throw DivisionByZero("zero denominator");
    unifyParams(numer.params(), denom.params());
    Scalar s;
    s.num_ = numer;
    s.den_ = denom;
    s.normalize();
    return s;
}

void Scalar::normalize()
{
    if (num_.isZero()) {
        den_ = Poly::constant(1);
        return;
    }
    if (den_.isConstant()) {
        if (!den_.isOne()) {
            num_ = num_.scaled(1 / den_.constantValue());
            den_ = Poly::constant(1);
        }
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.isConstant()) {
        num_ = Poly::divExact(num_, g);
        den_ = Poly::divExact(den_, g);
    }
    if (den_.isConstant()) {
        num_ = num_.scaled(1 / den_.constantValue());
        den_ = Poly::constant(1);
        return;
    }
    Rational scale;
    den_ = integerPrimitiveScale(den_, scale);
    num_ = num_.scaled(scale);
}

std::optional<Rational> Scalar::constantValue() const
{
    if (!isConstant())
        return std::nullopt;
    return num_.constantValue() / den_.constantValue();
}

bool Scalar::isInteger() const
{
    auto v = constantValue();
    return v && v->get_den() == 1;
}

bool Scalar::involves(std::string_view name) const
{
    Params ps = params();
    if (!ps)
        return false;
    auto idx = ps->index(name);
    if (!idx)
        return false;
    unsigned bit = 1u << *idx;
    return (num_.variableMask() & bit) || (den_.variableMask() & bit);
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    s.num_ = -s.num_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (o.isZero())
        return *this;
    if (isZero())
        return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (den_.isOne())
            return *this;
        normalize();
        return *this;
    }
    if (den_.isOne() && o.den_.isOne()) {
        num_ += o.num_;
        return *this;
    }
    Poly g = Poly::gcd(den_, o.den_);
    Poly d1 = Poly::divExact(den_, g), d2 = Poly::divExact(o.den_, g);
    num_ = num_ * d2 + o.num_ * d1;
    den_ = den_ * d2;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (isZero())
        return *this;
    if (o.isZero())
        return *this = Scalar();
    if (den_.isOne() && o.den_.isOne()) {
        num_ = num_ * o.num_;
        return *this;
    }
    Poly g1 = Poly::gcd(num_, o.den_), g2 = Poly::gcd(o.num_, den_);
    Poly a = g1.isOne() ? num_ : Poly::divExact(num_, g1);
    Poly d = g1.isOne() ? o.den_ : Poly::divExact(o.den_, g1);
    Poly c = g2.isOne() ? o.num_ : Poly::divExact(o.num_, g2);
    Poly b = g2.isOne() ? den_ : Poly::divExact(den_, g2);
    num_ = a * c;
    den_ = b * d;
    if (den_.isConstant()) {
        num_ = num_.scaled(1 / den_.constantValue());
        den_ = Poly::constant(1);
    } else {
        Rational scale;
        den_ = integerPrimitiveScale(den_, scale);
        num_ = num_.scaled(scale);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const
{
    if (isZero())
        throw DivisionByZero("division by zero scalar");
    Scalar s;
    s.num_ = den_;
    s.den_ = num_;
    if (s.den_.isConstant()) {
        s.num_ = s.num_.scaled(1 / s.den_.constantValue());
        s.den_ = Poly::constant(1);
    } else {
        Rational scale;
        s.den_ = integerPrimitiveScale(s.den_, scale);
        s.num_ = s.num_.scaled(scale);
    }
    return s;
}

Scalar Scalar::pow(unsigned e) const
{
    Scalar r(1), b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

namespace {

Scalar evalPoly(const Poly& p, const std::vector<Scalar>& values)
{
    Scalar acc;
    std::vector<std::vector<Scalar>> powers(values.size());
    for (const auto& t : p.terms()) {
        Scalar term(t.coeff);
        for (std::size_t v = 0; v < values.size(); ++v) {
            unsigned e = expOf(t.exps, v);
            if (!e)
                continue;
            auto& pw = powers[v];
            if (pw.empty())
                pw.push_back(Scalar(1));
            while (pw.size() <= e)
                pw.push_back(pw.back() * values[v]);
            term *= pw[e];
        }
        acc += term;
    }
    return acc;
}

} // namespace

Scalar Scalar::substitute(const std::map<std::string, Scalar>& bindings) const
{
    Params ps = params();
    if (!ps || bindings.empty())
        return *this;
    for (const auto& [name, value] : bindings)
        if (value.involves(name))
            throw std::invalid_argument("cyclic substitution for " + name);
    // Target space: variables of the bound values, falling back to ours.
    Params target;
    for (const auto& [name, value] : bindings)
        target = unifyParams(target, value.params());
    std::vector<Scalar> values;
    for (const auto& name : ps->names()) {
        auto it = bindings.find(name);
        if (it != bindings.end()) {
            values.push_back(it->second);
        } else {
            if (!target)
                target = ps;
            values.push_back(param(ps, name).embed(target));
        }
    }
    Scalar n = evalPoly(num_, values);
    Scalar d = evalPoly(den_, values);
    if (d.isZero())
        throw DivisionByZero("substitution makes the denominator vanish");
    return n / d;
}

Scalar Scalar::embed(const Params& target) const
{
    Params ps = params();
    if (!ps || ps == target || (target && *ps == *target))
        return *this;
    std::vector<int> map(ps->size(), -1);
    for (std::size_t v = 0; v < ps->size(); ++v) {
        auto idx = target ? target->index(ps->names()[v]) : std::nullopt;
        map[v] = idx ? static_cast<int>(*idx) : -1;
    }
    auto remap = [&](const Poly& p) {
        std::vector<Poly::Term> terms;
        for (const auto& t : p.terms()) {
            ExpKey k = 0;
            for (std::size_t v = 0; v < ps->size(); ++v) {
                unsigned e = expOf(t.exps, v);
                if (!e)
                    continue;
                if (map[v] < 0)
                    throw ParamMismatch("parameter " + ps->names()[v] + " missing from target context");
                k += expKey(static_cast<std::size_t>(map[v]), e);
            }
            terms.push_back({k, t.coeff});
        }
        return Poly::fromTerms(target, std::move(terms));
    };
    // Lex order may change under reordering, so renormalize.
    return fraction(remap(num_), remap(den_));
}

namespace {

// Display form: numerator content moved so both sides have integer coefficients,
// e.g. (3/4*hW + 39/16)/hW^2 is shown as (12*hW + 39)/(16*hW^2).
std::pair<Poly, Poly> displayParts(const Poly& num, const Poly& den)
{
    Integer g = 0, l = 1;
    for (const auto& t : num.terms()) {
        g = gcd(g, Integer(t.coeff.get_num()));
        l = lcm(l, Integer(t.coeff.get_den()));
    }
    Rational content(g, l);
    content.canonicalize();
    Poly n = num.scaled(1 / content).scaled(Rational(content.get_num()));
    Poly d = den.scaled(Rational(content.get_den()));
    return {n, d};
}

} // namespace

std::string Scalar::toString() const
{
    if (den_.isOne())
        return num_.toString();
    auto [nu, de] = displayParts(num_, den_);
    std::string n = nu.toString();
    if (nu.terms().size() > 1)
        n = "(" + n + ")";
    std::string d = de.toString();
    bool simple = de.terms().size() == 1 && de.leading().coeff == 1 && std::popcount(de.variableMask()) == 1;
    if (!simple)
        d = "(" + d + ")";
    return n + "/" + d;
}

std::string Scalar::toLatex() const
{
    if (den_.isOne())
        return num_.toLatex();
    if (num_.terms().size() == 1 && sgn(num_.leading().coeff) < 0)
        return "-" + (-*this).toLatex();
    auto [nu, de] = displayParts(num_, den_);
    return "\\frac{" + nu.toLatex() + "}{" + de.toLatex() + "}";
}

// ---- parsing -------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const Params& ps, std::string_view s) : ps_(ps), s_(s) {}

    Scalar parse()
    {
        Scalar v = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return v;
    }

private:
    const Params& ps_;
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what)
    {
        throw std::invalid_argument("cannot parse '" + std::string(s_) + "': " + what + " at position " +
                                    std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr()
    {
        Scalar v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    Scalar term()
    {
        Scalar v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                Scalar d = unary();
                if (d.isZero())
                    fail("division by zero");
                v /= d;
            } else {
                skip();
                // Implicit multiplication: "3hW", "2(c+1)".
                if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
                    v *= power();
                else
                    return v;
            }
        }
    }

    Scalar unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    Scalar power()
    {
        Scalar b = atom();
        if (eat('^')) {
            bool neg = eat('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected integer exponent");
            unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
            if (e > 1000)
                fail("exponent too large");
            Scalar r = b.pow(static_cast<unsigned>(e));
            if (neg) {
                if (r.isZero())
                    fail("division by zero");
                r = r.inverse();
            }
            return r;
        }
        return b;
    }

    Scalar atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!eat(')'))
                fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Scalar(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (!ps_ || !ps_->index(name))
                fail("unknown parameter '" + name + "'");
            return Scalar::param(ps_, name);
        }
        fail("unexpected character");
    }
};

} // namespace

Scalar Scalar::parse(const Params& params, std::string_view text)
{
    return Parser(params, text).parse();
}

} // namespace vwb
