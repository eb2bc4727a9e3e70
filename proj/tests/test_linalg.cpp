#include "doctest.h"
#include "gen.hpp"
#include "vermawb/linalg.hpp"

using namespace vwb;
using namespace vwb::linalg;

namespace {

Matrix randomMatrix(testing::ScalarGen& gen, int rows, int cols, int density, bool symbolic)
{
    std::uniform_int_distribution<int> d(0, 9);
    Matrix m(cols);
    for (int i = 0; i < rows; ++i) {
        Row r;
        for (int j = 0; j < cols; ++j)
            if (d(gen.rng()) < density)
                r.emplace_back(j, symbolic ? gen.scalar() : Scalar(gen.rational()));
        m.addRow(std::move(r));
    }
    return m;
}

std::vector<Scalar> times(const Matrix& m, const std::vector<Scalar>& x)
{
    std::vector<Scalar> out;
    for (const auto& r : m.rows) {
        Scalar s;
        for (const auto& [c, v] : r)
            s += v * x[static_cast<std::size_t>(c)];
        out.push_back(s);
    }
    return out;
}

bool same(const std::vector<Scalar>& a, const std::vector<Scalar>& b)
{
    return a == b;
}

} // namespace

TEST_CASE("small exact system")
{
    Matrix m(3);
    m.addDense({Scalar(1), Scalar(2), Scalar(3)});
    m.addDense({Scalar(2), Scalar(4), Scalar(6)});
    m.addDense({Scalar(0), Scalar(1), Scalar(1)});
    auto e = rref(m);
    CHECK(e.rank() == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(same(ns[0], {Scalar(-1), Scalar(-1), Scalar(1)}));
    auto x = solve(m, {Scalar(1), Scalar(2), Scalar(0)});
    REQUIRE(x);
    CHECK(same(times(m, *x), {Scalar(1), Scalar(2), Scalar(0)}));
    CHECK_FALSE(solve(m, {Scalar(1), Scalar(3), Scalar(0)}));
}

TEST_CASE("priority decides which columns pivot")
{
    Matrix m(2);
    m.addDense({Scalar(1), Scalar(1)});
    auto a = nullspace(m, {0});
    auto b = nullspace(m, {1});
    CHECK(same(a[0], {Scalar(-1), Scalar(1)}));
    CHECK(same(b[0], {Scalar(1), Scalar(-1)}));
}

TEST_CASE("property: parallel and serial echelon forms agree")
{
    for (int symbolic = 0; symbolic < 2; ++symbolic) {
        testing::ScalarGen gen(makeParams({"x"}), 11 + static_cast<unsigned>(symbolic));
        for (int trial = 0; trial < (symbolic ? 8 : 30); ++trial) {
            int rows = 2 + trial % 7, cols = 2 + (trial * 3) % 8;
            Matrix m = randomMatrix(gen, rows, cols, symbolic ? 4 : 5, symbolic);
            std::vector<int> prio;
            for (int c = cols - 1; c >= 0; c -= 2)
                prio.push_back(c);
            auto p = rref(m, prio, Backend::Parallel);
            auto s = rref(m, prio, Backend::Serial);
            CHECK(p.pivotCols == s.pivotCols);
            CHECK(static_cast<bool>(p.rows == s.rows));
            auto ns = nullspace(m, prio);
            CHECK(static_cast<int>(ns.size()) + p.rank() == cols);
            for (const auto& v : ns)
                for (const auto& y : times(m, v))
                    CHECK(y.isZero());
        }
    }
}

TEST_CASE("property: solve reproduces a consistent right-hand side")
{
    testing::ScalarGen gen(makeParams({"x", "y"}), 5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = randomMatrix(gen, 4, 5, 5, true);
        std::vector<Scalar> x0;
        for (int j = 0; j < 5; ++j)
            x0.push_back(Scalar(gen.rational()));
        auto b = times(m, x0);
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(same(times(m, *x), b));
    }
}
