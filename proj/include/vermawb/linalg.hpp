#pragma once

#include "vermawb/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vwb::linalg {

/// Sparse row: (column, value) pairs sorted by column, no zero values.
using Row = std::vector<std::pair<int, Scalar>>;

struct Matrix {
    int cols = 0;
    std::vector<Row> rows;

    explicit Matrix(int c = 0) : cols(c) {}
    void addRow(Row r);
    /// Builds a row from a dense vector.
    void addDense(const std::vector<Scalar>& v);
};

Row normalizedRow(Row r);

/// Reduced row echelon form. Pivot columns are chosen in the order given by
/// a column priority list; the result is unique for a given priority.
struct Echelon {
    std::vector<Row> rows;
    std::vector<int> pivotCols;

    int rank() const { return static_cast<int>(rows.size()); }
};

enum class Backend { Parallel, Serial };

/// Columns are tried as pivots in `priority` order; unlisted columns follow in
/// natural order.
Echelon rref(const Matrix& m, const std::vector<int>& priority = {}, Backend backend = Backend::Parallel);

/// Basis of {x : m x = 0}, one vector per non-pivot column (that entry is 1).
std::vector<std::vector<Scalar>> nullspace(const Matrix& m, const std::vector<int>& priority = {},
                                           Backend backend = Backend::Parallel);

/// One solution of m x = b with free variables set to 0, or nothing when the
/// system is inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b,
                                         const std::vector<int>& priority = {},
                                         Backend backend = Backend::Parallel);

/// Full column order implied by a priority list.
std::vector<int> columnOrder(int cols, const std::vector<int>& priority);

} // namespace vwb::linalg
