#pragma once

#include "vermawb/liealg.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace vwb {

/// Highest weight. For HV, c is c_L and hW holds h_I.
struct HighestWeight {
    AlgebraKind kind = AlgebraKind::W22;
    Scalar c;
    Scalar h;
    Scalar hW;
    Scalar cLI;
    Scalar cI;

    static HighestWeight w22(Scalar c, Scalar h, Scalar hW);
    static HighestWeight hv(Scalar cL, Scalar cLI, Scalar h, Scalar hI);

    const Scalar& hI() const { return hW; }
    Params params() const;
    /// Value of a central generator, or of L0/W0/I0 on the highest weight vector.
    Scalar eigenvalue(const Generator& g) const;
    HighestWeight substitute(const std::map<std::string, Scalar>& bindings) const;
    HighestWeight embed(const Params& ps) const;
    bool operator==(const HighestWeight&) const = default;
};

/// W_{-m_s}...W_{-m_1} L_{-n_t}...L_{-n_1} v, stored as positive modes in
/// weakly decreasing order. For HV the w part holds I factors.
struct PBWMonomial {
    std::vector<int> w;
    std::vector<int> l;

    PBWMonomial() = default;
    PBWMonomial(std::vector<int> wPart, std::vector<int> lPart);

    int level() const;
    bool empty() const { return w.empty() && l.empty(); }
    bool operator==(const PBWMonomial&) const = default;

    /// "W(-3)W(-1)L(-2).v" (current letter depends on the algebra).
    std::string toString(AlgebraKind kind = AlgebraKind::W22) const;
    std::string toLatex(AlgebraKind kind = AlgebraKind::W22) const;
};

/// Display order: L part descending lexicographically, then W part.
struct MonomialOrder {
    bool operator()(const PBWMonomial& a, const PBWMonomial& b) const;
};

struct MonomialHash {
    std::size_t operator()(const PBWMonomial& m) const;
};

int wDegree(const PBWMonomial& m);
int lDegree(const PBWMonomial& m);
int lpDegree(const PBWMonomial& m, int p);

class ModuleVector {
public:
    using Terms = std::map<PBWMonomial, Scalar, MonomialOrder>;

    ModuleVector() = default;
    explicit ModuleVector(int level) : level_(level) {}
    static ModuleVector monomial(const PBWMonomial& m, Scalar coeff = Scalar(1));

    int level() const { return level_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coefficient(const PBWMonomial& m) const;

    void add(const PBWMonomial& m, const Scalar& c);
    ModuleVector& operator+=(const ModuleVector& o);
    ModuleVector& operator-=(const ModuleVector& o);
    friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
    friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
    ModuleVector scaled(const Scalar& s) const;
    ModuleVector substitute(const std::map<std::string, Scalar>& bindings) const;

    bool operator==(const ModuleVector& o) const;

    std::string toString(AlgebraKind kind = AlgebraKind::W22) const;
    std::string toLatex(AlgebraKind kind = AlgebraKind::W22) const;

private:
    int level_ = 0;
    Terms terms_;
};

/// Verma module over a fixed highest weight, with a memo of generator
/// actions on PBW monomials.
class VermaModule {
public:
    explicit VermaModule(HighestWeight hw);

    const HighestWeight& hw() const { return hw_; }
    AlgebraKind kind() const { return hw_.kind; }

    ModuleVector act(const Generator& g, const ModuleVector& x) const;
    ModuleVector act(const Generator& g, const PBWMonomial& m) const;
    /// y = [y_1, ..., y_k] applied as y_1(y_2(...(y_k x))).
    ModuleVector multiply(const std::vector<Generator>& y, const ModuleVector& x) const;
    /// Apply the PBW word of a monomial (as an element of U(L_-)) to x.
    ModuleVector applyWord(const PBWMonomial& word, const ModuleVector& x) const;

    std::size_t memoSize() const;

private:
    HighestWeight hw_;
    mutable std::mutex mutex_;
    struct Key {
        Generator g;
        PBWMonomial m;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    mutable std::unordered_map<Key, ModuleVector, KeyHash> memo_;

    ModuleVector actUncached(const Generator& g, const PBWMonomial& m) const;
};

/// Generators of a PBW word, left to right.
std::vector<Generator> wordGenerators(const PBWMonomial& m, AlgebraKind kind);

ModuleVector lowestWComponent(const ModuleVector& x);

/// Formal partial derivative: remove one factor with the given family and
/// mode n > 0 (as X_{-n}), multiplying by its multiplicity.
ModuleVector partialDerivative(const ModuleVector& x, bool currentFactor, int n);

/// All PBW monomials at a level, in display order. Count is P2(level).
std::vector<PBWMonomial> weightSpaceBasis(int level);

/// Partitions of n into parts, weakly decreasing, parts at most maxPart.
std::vector<std::vector<int>> partitions(int n, int maxPart = -1);

} // namespace vwb
