#pragma once

// Shared helpers for the Verma-module tests and the acceptance runner.

#include "vermawb/linalg.hpp"
#include "vermawb/verma.hpp"

#include "oracle.hpp"

#include <initializer_list>
#include <map>

namespace vwb::testing {

struct Term {
    std::vector<int> w, l;
    const char* coeff;
};

inline ModuleVector vec(const Params& ps, std::initializer_list<Term> ts)
{
    ModuleVector v(PBWMonomial(ts.begin()->w, ts.begin()->l).level());
    for (const auto& t : ts)
        v.add(PBWMonomial(t.w, t.l), Scalar::parse(ps, t.coeff));
    return v;
}

inline int rankOf(const std::vector<ModuleVector>& vs, int level)
{
    auto cols = weightSpaceBasis(level);
    std::map<PBWMonomial, int, MonomialOrder> idx;
    for (std::size_t j = 0; j < cols.size(); ++j)
        idx.emplace(cols[j], static_cast<int>(j));
    linalg::Matrix A(static_cast<int>(cols.size()));
    for (const auto& v : vs) {
        linalg::Row r;
        for (const auto& [m, c] : v.terms())
            r.emplace_back(idx.at(m), c);
        A.addRow(std::move(r));
    }
    return linalg::rref(A).rank();
}

inline bool inSpan(std::vector<ModuleVector> vs, const ModuleVector& x)
{
    int level = x.level();
    int before = rankOf(vs, level);
    vs.push_back(x);
    return rankOf(vs, level) == before;
}

inline Params hwParams() { return makeParams({"hW"}); }
inline Scalar hWsym() { return Scalar::param(hwParams(), "hW"); }

/// c = -24 h_W / (p^2 - 1), h_W symbolic.
inline VermaModule pModule(int p, const Scalar& h)
{
    Scalar hW = hWsym();
    return VermaModule(HighestWeight::w22(Scalar(-24) * hW / Scalar(p * p - 1), h, hW));
}

inline VermaModule pModuleR(int p, int r) { return pModule(p, necessaryH(p, r, hWsym())); }

/// c symbolic, h_W = 0.
inline VermaModule cModule(const Scalar& h)
{
    auto ps = makeParams({"c"});
    return VermaModule(HighestWeight::w22(Scalar::param(ps, "c"), h, Scalar(0)));
}

// Raising conditions modulo J' checked with adjacent-swap normal ordering only.
inline bool satisfiesRaising(const VermaModule& V, int p, const ModuleVector& x)
{
    oracle::WordReorder o(V.hw());
    auto act = [&](const std::vector<Generator>& w, const ModuleVector& y, int level) {
        ModuleVector out(level);
        for (const auto& [m, c] : y.terms())
            out += o.apply(w, m, level).scaled(c);
        return out;
    };
    ModuleVector u = uPrime(V, p);
    for (const auto& g : raisingGenerators(AlgebraKind::W22)) {
        int t = x.level() - g.mode;
        if (t < 0)
            continue;
        std::vector<ModuleVector> span;
        if (t >= p && x.level() > p)
            for (const auto& y : weightSpaceBasis(t - p))
                span.push_back(act(wordGenerators(y, AlgebraKind::W22), u, t));
        if (!inSpan(span, act({g}, x, t)))
            return false;
    }
    return true;
}

} // namespace vwb::testing
