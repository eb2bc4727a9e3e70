// Parallel and serial row reduction on raising-condition systems.

#include "vermawb/linalg.hpp"
#include "vermawb/verma.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace vwb;

namespace {

// Columns: monomials at `level`; rows: components of the raising operators
// applied to them.
linalg::Matrix raisingMatrix(const VermaModule& V, int level)
{
    auto cols = weightSpaceBasis(level);
    auto gens = raisingGenerators(AlgebraKind::W22);
    std::vector<std::map<PBWMonomial, linalg::Row, MonomialOrder>> rows(gens.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (const auto& [m, c] : V.act(gens[g], cols[j]).terms())
                rows[g][m].emplace_back(static_cast<int>(j), c);
    linalg::Matrix A(static_cast<int>(cols.size()));
    for (auto& byMonomial : rows)
        for (auto& [m, r] : byMonomial)
            A.addRow(std::move(r));
    return A;
}

VermaModule module(int p, int r, bool symbolic)
{
    Scalar hW = symbolic ? Scalar::param(makeParams({"hW"}), "hW") : Scalar(Rational(7, 3));
    return VermaModule(HighestWeight::w22(Scalar(-24) * hW / Scalar(p * p - 1), necessaryH(p, r, hW), hW));
}

template <linalg::Backend B>
void BM_Rref(benchmark::State& state)
{
    int p = static_cast<int>(state.range(0)), level = static_cast<int>(state.range(1));
    bool symbolic = state.range(2) != 0;
    linalg::Matrix A = raisingMatrix(module(p, level / p, symbolic), level);
    for (auto _ : state)
        benchmark::DoNotOptimize(linalg::rref(A, {}, B).rank());
    state.counters["rows"] = static_cast<double>(A.rows.size());
    state.counters["cols"] = A.cols;
}

} // namespace

#define VWB_ARGS ArgNames({"p", "level", "symbolic"})->Args({2, 4, 1})->Args({2, 5, 1})->Args({2, 8, 0})->Args({4, 8, 0})->Unit(benchmark::kMillisecond)

BENCHMARK_TEMPLATE(BM_Rref, linalg::Backend::Serial)->VWB_ARGS;
BENCHMARK_TEMPLATE(BM_Rref, linalg::Backend::Parallel)->VWB_ARGS;

BENCHMARK_MAIN();
