#pragma once

#include "vermawb/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vwb {

enum class AlgebraKind { W22, HV };

enum class Family : unsigned char { L, W, I, C, CL, CI, CLI };

std::string toString(AlgebraKind k);
AlgebraKind parseAlgebraKind(std::string_view s);

class KindMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Generator {
    Family family = Family::L;
    int mode = 0;

    static Generator L(int n) { return {Family::L, n}; }
    static Generator W(int n) { return {Family::W, n}; }
    static Generator I(int n) { return {Family::I, n}; }
    static Generator central(Family f) { return {f, 0}; }

    bool isCentral() const { return family >= Family::C; }
    bool validFor(AlgebraKind k) const;
    void check(AlgebraKind k) const;

    auto operator<=>(const Generator&) const = default;

    /// "L(-3)", "W(2)", "C_LI".
    std::string toString() const;
    static Generator parse(std::string_view s);
};

/// The L0-grading: -mode for mode generators, 0 for central ones.
int grade(const Generator& g);

/// The second current of the algebra: W for W(2,2), I for HV.
inline Family currentFamily(AlgebraKind k)
{
    return k == AlgebraKind::W22 ? Family::W : Family::I;
}

using LieCombo = std::vector<std::pair<Generator, Scalar>>;

/// Structure constants; central charges stay symbolic as generators.
LieCombo bracket(const Generator& a, const Generator& b, AlgebraKind kind);

} // namespace vwb
