#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vwb {

using Integer = mpz_class;
using Rational = mpq_class;

class ParamMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Ordered list of formal parameter names. Variable 0 is the most
/// significant one in the lexicographic monomial order.
class ParamSpace {
public:
    static constexpr std::size_t kMaxParams = 4;

    explicit ParamSpace(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    std::optional<std::size_t> index(std::string_view name) const;

    bool operator==(const ParamSpace&) const = default;

private:
    std::vector<std::string> names_;
};

using Params = std::shared_ptr<const ParamSpace>;

Params makeParams(std::vector<std::string> names);

/// Both spaces must agree unless one of them is absent (a constant).
Params unifyParams(const Params& a, const Params& b);

// Exponent vectors are packed 16 bits per variable with variable 0 in the
// top bits, so integer order on the key is lex order on the exponents.
using ExpKey = std::uint64_t;

inline constexpr int kExpBits = 16;

inline unsigned expOf(ExpKey key, std::size_t var)
{
    return static_cast<unsigned>((key >> (kExpBits * (ParamSpace::kMaxParams - 1 - var))) & 0xFFFFu);
}

inline ExpKey expKey(std::size_t var, unsigned e)
{
    return static_cast<ExpKey>(e) << (kExpBits * (ParamSpace::kMaxParams - 1 - var));
}

/// Sparse multivariate polynomial over Q, terms kept in strictly
/// decreasing lex order.
class Poly {
public:
    struct Term {
        ExpKey exps;
        Rational coeff;
        bool operator==(const Term&) const = default;
    };

    Poly() = default;
    static Poly constant(const Rational& c);
    static Poly variable(const Params& params, std::size_t var);
    static Poly fromTerms(const Params& params, std::vector<Term> terms);

    bool isZero() const { return terms_.empty(); }
    bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == 0); }
    Rational constantValue() const;
    bool isOne() const { return isConstant() && !isZero() && terms_[0].coeff == 1; }

    const std::vector<Term>& terms() const { return terms_; }
    const Params& params() const { return params_; }
    const Term& leading() const { return terms_.front(); }

    unsigned degree(std::size_t var) const;
    unsigned totalDegree() const;
    /// Bitmask of variables with a positive exponent somewhere.
    unsigned variableMask() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly shifted(ExpKey monomial) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    /// Exact quotient; throws std::domain_error if b does not divide a.
    static Poly divExact(const Poly& a, const Poly& b);
    /// Monic (leading coefficient 1) greatest common divisor; gcd(0,0)=0.
    static Poly gcd(const Poly& a, const Poly& b);

    /// Coefficients with respect to one variable, index = power.
    std::vector<Poly> coefficientsIn(std::size_t var) const;
    static Poly fromCoefficients(const Params& params, std::size_t var, const std::vector<Poly>& coeffs);

    Poly withParams(const Params& p) const;

    std::string toString() const;
    std::string toLatex() const;

private:
    std::vector<Term> terms_;
    Params params_;

    void canonicalize();
};

/// Element of Q(p_1, ..., p_k): canonical reduced fraction of polynomials.
/// The denominator is primitive with integer coefficients and a positive
/// leading coefficient.
class Scalar {
public:
    Scalar() : den_(Poly::constant(1)) {}
    Scalar(int v) : Scalar(Rational(v)) {}
    Scalar(long v) : Scalar(Rational(v)) {}
    Scalar(const Rational& v);
    static Scalar param(const Params& params, std::string_view name);
    static Scalar fraction(const Poly& numer, const Poly& denom);
    static Scalar parse(const Params& params, std::string_view text);

    const Poly& numer() const { return num_; }
    const Poly& denom() const { return den_; }
    Params params() const { return unifyParams(num_.params(), den_.params()); }

    bool isZero() const { return num_.isZero(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    std::optional<Rational> constantValue() const;
    /// True iff the value is a constant integer.
    bool isInteger() const;
    bool involves(std::string_view name) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar pow(unsigned e) const;
    Scalar inverse() const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Simultaneous substitution of named parameters. Values must not mention
    /// the parameter they replace.
    Scalar substitute(const std::map<std::string, Scalar>& bindings) const;
    /// Re-express in another parameter space, matching variables by name.
    Scalar embed(const Params& target) const;

    std::string toString() const;
    std::string toLatex() const;

private:
    Poly num_;
    Poly den_;

    void normalize();
};

std::string latexParamName(std::string_view name);

} // namespace vwb
