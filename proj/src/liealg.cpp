#include "vermawb/liealg.hpp"

#include <algorithm>
#include <charconv>

namespace vwb {

std::string toString(AlgebraKind k)
{
    return k == AlgebraKind::W22 ? "w22" : "hv";
}

AlgebraKind parseAlgebraKind(std::string_view s)
{
    if (s == "w22" || s == "W22" || s == "W(2,2)")
        return AlgebraKind::W22;
    if (s == "hv" || s == "HV")
        return AlgebraKind::HV;
    throw std::invalid_argument("unknown algebra: " + std::string(s));
}

bool Generator::validFor(AlgebraKind k) const
{
    if (isCentral() && mode != 0)
        return false;
    switch (family) {
    case Family::L:
        return true;
    case Family::W:
    case Family::C:
        return k == AlgebraKind::W22;
    case Family::I:
    case Family::CL:
    case Family::CI:
    case Family::CLI:
        return k == AlgebraKind::HV;
    }
    return false;
}

void Generator::check(AlgebraKind k) const
{
    if (!validFor(k))
        throw KindMismatch("generator " + toString() + " is not valid for " + vwb::toString(k));
}

std::string Generator::toString() const
{
    switch (family) {
    case Family::C:
        return "C";
    case Family::CL:
        return "C_L";
    case Family::CI:
        return "C_I";
    case Family::CLI:
        return "C_LI";
    default:
        break;
    }
    char f = family == Family::L ? 'L' : family == Family::W ? 'W' : 'I';
    return std::string(1, f) + "(" + std::to_string(mode) + ")";
}

Generator Generator::parse(std::string_view s)
{
    if (s == "C")
        return central(Family::C);
    if (s == "C_L")
        return central(Family::CL);
    if (s == "C_I")
        return central(Family::CI);
    if (s == "C_LI")
        return central(Family::CLI);
    if (s.size() >= 4 && s[1] == '(' && s.back() == ')') {
        Family f;
        switch (s[0]) {
        case 'L':
            f = Family::L;
            break;
        case 'W':
            f = Family::W;
            break;
        case 'I':
            f = Family::I;
            break;
        default:
            throw std::invalid_argument("bad generator: " + std::string(s));
        }
        int n = 0;
        auto body = s.substr(2, s.size() - 3);
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
        if (ec != std::errc() || ptr != body.data() + body.size())
            throw std::invalid_argument("bad generator: " + std::string(s));
        return {f, n};
    }
    throw std::invalid_argument("bad generator: " + std::string(s));
}

int grade(const Generator& g)
{
    return g.isCentral() ? 0 : -g.mode;
}

namespace {

Rational virasoroCocycle(int n)
{
    Rational r(Integer(n) * n * n - n, 12);
    r.canonicalize();
    return r;
}

void push(LieCombo& out, Generator g, const Rational& c)
{
    if (sgn(c) != 0)
        out.emplace_back(g, Scalar(c));
}

} // namespace

LieCombo bracket(const Generator& a, const Generator& b, AlgebraKind kind)
{
    a.check(kind);
    b.check(kind);
    LieCombo out;
    if (a.isCentral() || b.isCentral())
        return out;
    int n = a.mode, m = b.mode;
    bool delta = n + m == 0;
    if (kind == AlgebraKind::W22) {
        if (a.family == Family::W && b.family == Family::W)
            return out;
        // [L,L], [L,W] and [W,L] share the same shape.
        Family f = (a.family == Family::W || b.family == Family::W) ? Family::W : Family::L;
        push(out, {f, n + m}, Rational(n - m));
        if (delta)
            push(out, Generator::central(Family::C), virasoroCocycle(n));
        return out;
    }
    if (a.family == Family::L && b.family == Family::L) {
        push(out, Generator::L(n + m), Rational(n - m));
        if (delta)
            push(out, Generator::central(Family::CL), virasoroCocycle(n));
    } else if (a.family == Family::L && b.family == Family::I) {
        push(out, Generator::I(n + m), Rational(-m));
        if (delta)
            push(out, Generator::central(Family::CLI), Rational(-(n * n + n)));
    } else if (a.family == Family::I && b.family == Family::L) {
        push(out, Generator::I(n + m), Rational(n));
        if (delta)
            push(out, Generator::central(Family::CLI), Rational(n * n - n));
    } else {
        if (delta)
            push(out, Generator::central(Family::CI), Rational(n));
    }
    return out;
}

} // namespace vwb
