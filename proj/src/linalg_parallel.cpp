#include "vermawb/linalg.hpp"

#include <algorithm>

namespace vwb::linalg {

Echelon rrefSerial(const Matrix& m, const std::vector<int>& order);

void Matrix::addRow(Row r)
{
    r = normalizedRow(std::move(r));
    for (const auto& [c, v] : r)
        if (c < 0 || c >= cols)
            throw std::out_of_range("column index out of range");
    rows.push_back(std::move(r));
}

void Matrix::addDense(const std::vector<Scalar>& v)
{
    Row r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].isZero())
            r.emplace_back(static_cast<int>(i), v[i]);
    addRow(std::move(r));
}

Row normalizedRow(Row r)
{
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Row out;
    for (auto& e : r) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
        if (out.back().second.isZero())
            out.pop_back();
    }
    return out;
}

std::vector<int> columnOrder(int cols, const std::vector<int>& priority)
{
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(cols), 0);
    for (int c : priority) {
        if (c < 0 || c >= cols)
            throw std::out_of_range("priority column out of range");
        if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = 1;
            order.push_back(c);
        }
    }
    for (int c = 0; c < cols; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            order.push_back(c);
    return order;
}

namespace {

const Scalar* entry(const Row& r, int col)
{
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

// Smaller is a better pivot: constants first, then short expressions and rows.
std::pair<std::size_t, std::size_t> pivotCost(const Row& r, const Scalar& v)
{
    std::size_t expr = v.isConstant() ? 0 : v.numer().terms().size() + v.denom().terms().size();
    return {expr, r.size()};
}

// row -= f * pivot, both sorted.
Row axpy(const Row& row, const Scalar& f, const Row& pivot)
{
    Row out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -(f * pivot[j].second));
            ++j;
        } else {
            Scalar v = row[i].second - f * pivot[j].second;
            if (!v.isZero())
                out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

Echelon rrefParallel(const Matrix& m, const std::vector<int>& order)
{
    std::vector<Row> rows;
    for (const auto& r : m.rows)
        if (!r.empty())
            rows.push_back(r);
    const long n = static_cast<long>(rows.size());
    std::vector<char> used(rows.size(), 0);
    std::vector<std::size_t> pivotRows;
    Echelon e;
    for (int col : order) {
        long best = -1;
        std::pair<std::size_t, std::size_t> bestCost;
        for (long i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)])
                continue;
            const Scalar* v = entry(rows[static_cast<std::size_t>(i)], col);
            if (!v)
                continue;
            auto cost = pivotCost(rows[static_cast<std::size_t>(i)], *v);
            if (best < 0 || cost < bestCost) {
                best = i;
                bestCost = cost;
            }
        }
        if (best < 0)
            continue;
        auto pi = static_cast<std::size_t>(best);
        Row& prow = rows[pi];
        Scalar inv = entry(prow, col)->inverse();
        if (!(inv == Scalar(1)))
            for (auto& [c, v] : prow)
                v *= inv;
        used[pi] = 1;
        pivotRows.push_back(pi);
        e.pivotCols.push_back(col);
        const Row& pivot = rows[pi];
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (ui == pi)
                continue;
            const Scalar* f = entry(rows[ui], col);
            if (!f)
                continue;
            Scalar factor = *f;
            rows[ui] = axpy(rows[ui], factor, pivot);
        }
    }
    for (std::size_t pi : pivotRows)
        e.rows.push_back(std::move(rows[pi]));
    return e;
}

} // namespace

Echelon rref(const Matrix& m, const std::vector<int>& priority, Backend backend)
{
    auto order = columnOrder(m.cols, priority);
    return backend == Backend::Parallel ? rrefParallel(m, order) : rrefSerial(m, order);
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m, const std::vector<int>& priority, Backend backend)
{
    Echelon e = rref(m, priority, backend);
    std::vector<char> isPivot(static_cast<std::size_t>(m.cols), 0);
    for (int c : e.pivotCols)
        isPivot[static_cast<std::size_t>(c)] = 1;
    std::vector<std::vector<Scalar>> basis;
    for (int f : columnOrder(m.cols, priority)) {
        if (isPivot[static_cast<std::size_t>(f)])
            continue;
        std::vector<Scalar> x(static_cast<std::size_t>(m.cols));
        x[static_cast<std::size_t>(f)] = Scalar(1);
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (const Scalar* v = entry(e.rows[k], f))
                x[static_cast<std::size_t>(e.pivotCols[k])] = -*v;
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b,
                                         const std::vector<int>& priority, Backend backend)
{
    if (b.size() != m.rows.size())
        throw std::invalid_argument("right-hand side size mismatch");
    Matrix aug(m.cols + 1);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        Row r = m.rows[i];
        if (!b[i].isZero())
            r.emplace_back(m.cols, b[i]);
        aug.rows.push_back(std::move(r));
    }
    auto order = columnOrder(m.cols, priority);
    order.push_back(m.cols);
    Echelon e = rref(aug, order, backend);
    std::vector<Scalar> x(static_cast<std::size_t>(m.cols));
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
        if (e.pivotCols[k] == m.cols)
            return std::nullopt;
        if (const Scalar* v = entry(e.rows[k], m.cols))
            x[static_cast<std::size_t>(e.pivotCols[k])] = *v;
    }
    return x;
}

} // namespace vwb::linalg
