#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chaincalc/integers.hpp"

namespace chaincalc {

// Dense integer matrix, row-major.  Zero rows or columns are legal; all
// operations must behave on degenerate shapes (the trivial group has rank 0).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> column(std::size_t j) const;

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;

    std::vector<Int> apply(const std::vector<Int>& x) const;

    // Exact determinant by fraction-free (Bareiss) elimination; square only.
    Int determinant() const;

    // Horizontal concatenation [*this | o]; row counts must agree.
    IntMatrix hconcat(const IntMatrix& o) const;

    // Columns [first, first + count) as a new matrix.
    IntMatrix column_slice(std::size_t first, std::size_t count) const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> entries_;
};

} // namespace chaincalc
