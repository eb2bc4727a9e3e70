#pragma once

#include "vermawb/linalg.hpp"
#include "vermawb/pbw.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace vwb {

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// 2 h_W + (m^2 - 1) c / 12.
Scalar reducibilityValue(const Scalar& c, const Scalar& hW, int m);

/// Smallest m <= maxP with vanishing reducibility value (exact zero test).
std::optional<int> zdFindP(const Scalar& c, const Scalar& hW, int maxP);

/// Raising generators whose joint kernel defines singular vectors.
std::vector<Generator> raisingGenerators(AlgebraKind kind);

std::vector<ModuleVector> singularSpace(const VermaModule& V, int level);

/// Singular vector with leading term W_{-p} v (I_{-p} v for HV), supported on
/// current-only monomials.
ModuleVector uPrime(const VermaModule& V, int p);

/// {y x : y PBW word of degree level - x.level()}, unreduced.
std::vector<ModuleVector> wordSpan(const VermaModule& V, const ModuleVector& x, int level);

/// Basis of the level component of U(L) u'.
std::vector<ModuleVector> jPrimeSpan(const VermaModule& V, int p, int level);

Scalar necessaryH(int p, int r, const Scalar& hW);

/// The unique r with h = necessaryH(p, r, hW); may be non-integral or symbolic.
Scalar candidateR(int p, const Scalar& h, const Scalar& hW);

/// Vector x at level rp with coefficient 1 on L_{-p}^r v, no W_{-p} factor,
/// and g x in J' for every raising g. Nothing if the system is inconsistent.
std::optional<ModuleVector> subsingular(const VermaModule& V, int p, int r);

/// r = 1 construction from the w_n recursion; w_0 is solved afterwards.
ModuleVector subsingularR1Recursive(const VermaModule& V, int p);

/// The current-only coefficients w_{p-1}, ..., w_1 of the recursion, indexed by n.
std::vector<ModuleVector> r1RecursionCoefficients(const Scalar& hW, int p);

// ---- characters ------------------------------------------------------------

struct CharacterSeries {
    Scalar offset;
    std::vector<Integer> coeffs;

    /// "1 + 2q + 5q^2", without the q^offset factor.
    std::string toString() const;
    bool operator==(const CharacterSeries&) const = default;
};

struct Characters {
    CharacterSeries charV;
    std::optional<CharacterSeries> charJprime, charLprime, charJ, charL;
};

/// All series use the common offset h; coefficient k multiplies q^(h+k).
Characters characters(const Scalar& h, std::optional<int> p, std::optional<int> r, int N);

/// P2(n) for n = 0..N.
std::vector<Integer> bipartitionCounts(int N);

std::vector<PBWMonomial> basisLprime(int p, int level);
std::vector<PBWMonomial> basisL(int p, int r, int level);

// ---- classification --------------------------------------------------------

enum class Verdict { VermaIrreducible, UprimeOnly, UprimeAndSubsingular };
enum class HVCase { None, ICase, LCase };

std::string verdictName(Verdict v);
std::string caseName(HVCase c);

struct StructureReport {
    AlgebraKind kind = AlgebraKind::W22;
    Verdict verdict = Verdict::VermaIrreducible;
    std::optional<int> p;
    std::optional<int> r;
    HVCase hvCase = HVCase::None;
    std::optional<ModuleVector> uPrime;
    std::optional<ModuleVector> u;
    std::vector<std::string> notes;
};

StructureReport classify(const VermaModule& V, int maxP);

/// HV: h_I / c_LI, which must be a constant.
std::optional<int> hvFindP(const HighestWeight& hw, HVCase& which);

/// HV singular vector at level p: leading I_{-p} (I case, I-only support) or
/// L_{-p} (L case).
ModuleVector hvSingular(const VermaModule& V, int p, HVCase which);

// ---- quotients -------------------------------------------------------------

/// V / M where M is spanned by U(L_-) applied to the given generators. The
/// complement basis consists of monomials not flagged by `eliminate`.
class Quotient {
public:
    using Predicate = std::function<bool(const PBWMonomial&)>;

    /// No quotient: the full Verma module.
    explicit Quotient(const VermaModule& V);
    Quotient(const VermaModule& V, std::vector<ModuleVector> generators, Predicate eliminate);

    /// The irreducible quotient implied by a classification.
    static Quotient fromReport(const VermaModule& V, const StructureReport& rep);

    const VermaModule& module() const { return *V_; }
    std::vector<PBWMonomial> basis(int level) const;
    /// Representative supported on basis monomials.
    ModuleVector reduce(const ModuleVector& x) const;
    bool trivial() const { return generators_.empty(); }

private:
    const VermaModule* V_;
    std::vector<ModuleVector> generators_;
    Predicate eliminate_;
    struct Level {
        std::vector<PBWMonomial> basis;
        std::vector<PBWMonomial> pivots;
        std::vector<ModuleVector> rows;
    };
    mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
    mutable std::map<int, std::shared_ptr<const Level>> levels_;

    std::shared_ptr<const Level> level(int k) const;
};

// ---- conjecture scan -------------------------------------------------------

struct ScanRow {
    int p = 0;
    int r = 0;
    Scalar h;
    std::string check;
    bool expected = false;
    bool observed = false;
    bool pass = false;
    std::string detail;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    std::vector<std::string> notes;
    bool allPass() const;
};

/// Grid p <= pMax, r <= rMax with p r <= maxLevel.
ScanReport conjectureScan(int pMax, int rMax, const std::vector<Rational>& offsets, int maxLevel = 8);

/// Standard weight for a scan point: p = 1 uses symbolic c with h_W = 0,
/// p >= 2 uses symbolic h_W with c = -24 h_W / (p^2 - 1).
HighestWeight scanWeight(int p, int r, const Scalar& offset = Scalar(0));

} // namespace vwb
