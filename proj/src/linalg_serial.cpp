#include "vermawb/linalg.hpp"

namespace vwb::linalg {

// Dense reference implementation: textbook Gauss-Jordan, first nonzero pivot.
Echelon rrefSerial(const Matrix& m, const std::vector<int>& order)
{
    const std::size_t cols = static_cast<std::size_t>(m.cols);
    std::vector<std::vector<Scalar>> a;
    for (const auto& r : m.rows) {
        std::vector<Scalar> d(cols);
        for (const auto& [c, v] : r)
            d[static_cast<std::size_t>(c)] = v;
        a.push_back(std::move(d));
    }
    Echelon e;
    std::size_t top = 0;
    for (int col : order) {
        auto c = static_cast<std::size_t>(col);
        std::size_t piv = top;
        while (piv < a.size() && a[piv][c].isZero())
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[top], a[piv]);
        Scalar inv = a[top][c].inverse();
        for (auto& v : a[top])
            v *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == top || a[i][c].isZero())
                continue;
            Scalar f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (!a[top][j].isZero())
                    a[i][j] -= f * a[top][j];
        }
        e.pivotCols.push_back(col);
        ++top;
    }
    for (std::size_t i = 0; i < top; ++i) {
        Row r;
        for (std::size_t j = 0; j < cols; ++j)
            if (!a[i][j].isZero())
                r.emplace_back(static_cast<int>(j), a[i][j]);
        e.rows.push_back(std::move(r));
    }
    return e;
}

} // namespace vwb::linalg
