#pragma once

#include "vermawb/verma.hpp"

#include <memory>

namespace vwb {

/// V_{alpha,beta,F}: L_n v_m = -(m + alpha + beta + n beta) v_{m+n},
/// W_n v_m = 0, I_n v_m = F v_{m+n}.
struct IntermediateSeries {
    Scalar alpha;
    Scalar beta;
    Scalar F;

    static IntermediateSeries w22(Scalar alpha, Scalar beta);
    static IntermediateSeries hv(Scalar alpha, Scalar beta, Scalar F);

    /// alpha integral, beta in {0, 1}, F = 0 (all constant).
    bool reducible() const;
    /// Index dropped by the primed convention: -alpha (beta = 0, quotient) or
    /// -alpha - 1 (beta = 1, submodule).
    std::optional<int> excludedIndex() const;
    bool excluded(int m) const;
    Params params() const;
};

struct SeriesTerm {
    Scalar coeff;
    int target = 0;
};

SeriesTerm seriesAction(const Generator& g, int m, const IntermediateSeries& s);

class WindowOverflow : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct Window {
    int lo = -8;
    int hi = 8;
    bool contains(int m) const { return lo <= m && m <= hi; }
};

/// Element of V' (x) L: sums of v_m (x) monomial. All terms share the index
/// m - level.
class TensorVector {
public:
    using Key = std::pair<int, PBWMonomial>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using Terms = std::map<Key, Scalar, KeyLess>;

    TensorVector() = default;
    explicit TensorVector(int index) : index_(index) {}
    static TensorVector basis(int m, const PBWMonomial& mono = {}, const Scalar& c = Scalar(1));

    int index() const { return index_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool isZero() const { return terms_.empty(); }
    Scalar coefficient(int m, const PBWMonomial& mono) const;

    void add(int m, const PBWMonomial& mono, const Scalar& c);
    TensorVector& operator+=(const TensorVector& o);
    TensorVector& operator-=(const TensorVector& o);
    TensorVector scaled(const Scalar& s) const;
    bool operator==(const TensorVector& o) const;

    /// "v(0) (x) W(-1).v - 2 v(-1) (x) v"
    std::string toString(AlgebraKind kind = AlgebraKind::W22) const;

private:
    int index_ = 0;
    Terms terms_;
};

enum class FactorMode { Irreducible, Verma };

/// Truncated V'_{alpha,beta,F} (x) L(hw), or (x) V(hw) in Verma mode.
class TensorModule {
public:
    TensorModule(HighestWeight hw, IntermediateSeries s, Window w, FactorMode mode = FactorMode::Irreducible,
                 int maxP = 12);

    const HighestWeight& hw() const { return verma_->hw(); }
    const IntermediateSeries& series() const { return series_; }
    const Window& window() const { return window_; }
    const StructureReport& report() const { return report_; }
    const VermaModule& verma() const { return *verma_; }
    const Quotient& quotient() const { return *quotient_; }
    FactorMode mode() const { return mode_; }

    TensorVector act(const Generator& g, const TensorVector& x) const;
    TensorVector applyWord(const PBWMonomial& word, const TensorVector& x) const;
    /// y (v_k (x) v), memoized.
    TensorVector wordImage(int k, const PBWMonomial& word) const;

    /// Indices k <= maxIndex with v_k (x) v in U(L_+)(v_n (x) v).
    std::vector<int> reachable(int n, int maxIndex) const;
    /// Largest non-excluded index below n.
    int nearestBelow(int n) const;

private:
    std::unique_ptr<VermaModule> verma_;
    IntermediateSeries series_;
    Window window_;
    FactorMode mode_;
    StructureReport report_;
    std::unique_ptr<Quotient> quotient_;
    mutable std::mutex mutex_;
    mutable std::map<TensorVector::Key, TensorVector, TensorVector::KeyLess> memo_;

    void checkIndex(int m) const;
};

/// Whether v_{n'} (x) v lies in U_n = U(L)(v_n (x) v), n' the nearest
/// non-excluded index below n, at truncation: the span uses v_k (x) v for
/// reachable k in [n, n + depth]. False when n itself is excluded.
bool cyclicityCheck(const TensorModule& T, int n, int depth);
bool cyclicityCheck(const HighestWeight& hw, const IntermediateSeries& s, int n, int depth, int window = 8);

/// dim of span{y (v_n (x) v) : deg y = k} modulo U_{n+1}, at truncation.
int subquotientDimension(const TensorModule& T, int n, int k, int depth);

// ---- decisions -------------------------------------------------------------

enum class TensorVerdict { Irreducible, Reducible, Unknown };
enum class TensorReason { NoSubsingular, IntegralShift, ProductNonzero, CertificateNonzero, Undecided };

std::string verdictName(TensorVerdict v);
std::string reasonName(TensorReason r);

struct TensorDecision {
    TensorVerdict verdict = TensorVerdict::Unknown;
    TensorReason reason = TensorReason::Undecided;
    /// Nonvanishing product or certificate, as a function of the index n.
    std::optional<Scalar> witnessProduct;
    /// k with U_k irreducible.
    std::optional<int> witnessIndex;
    std::optional<HighestWeight> quotientWeight;
    std::optional<int> p;
    std::optional<int> r;
    HVCase hvCase = HVCase::None;
    std::vector<std::string> notes;
};

/// prod_{j=0}^{r-1} (n + (r-j)p - 1 + alpha + (1-p) beta).
Scalar lambdaProduct(const IntermediateSeries& s, const Scalar& n, int p, int r);

/// Highest weight of U_{n}/U_{n+1}: (c, h - n - alpha - beta, h_W), or
/// (c_L, c_LI, h - n - alpha - beta, h_I + F) for HV.
HighestWeight subquotientWeight(const HighestWeight& hw, const IntermediateSeries& s, const Scalar& n);

TensorDecision decideTensor(const HighestWeight& hw, const IntermediateSeries& s, int maxP = 12);

struct HVPolynomials {
    HVCase which = HVCase::None;
    int p = 0;
    /// Coefficient of v_{n-1} (x) v obtained from u (v_{n+p-1} (x) v) after
    /// eliminating everything in U_n; a polynomial in F (and n in the L case).
    Scalar certificate;
    /// I case: certificate = F s(F).
    std::optional<Scalar> s;
    /// L case: certificate = q(F) n + r(F).
    std::optional<Scalar> q, r;
    Params params;
};

HVPolynomials hvDecisionPolynomials(const HighestWeight& hw, const IntermediateSeries& s, int p);

/// Degree of a scalar in one parameter; the denominator must not involve it.
int degreeIn(const Scalar& x, std::string_view name);

TensorDecision decideTensorHV(const HighestWeight& hw, const IntermediateSeries& s, int maxP = 12);

} // namespace vwb
