#pragma once

#include <optional>
#include <vector>

#include "chaincalc/matrix.hpp"

namespace chaincalc {

// U * M * V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... | d_r, d_i > 0, followed by zeros.
// Uinv and Vinv are the tracked inverses (UUinv = I, VVinv = I).
struct SmithDecomposition {
    IntMatrix U, D, V, Uinv, Vinv;
    std::size_t rank = 0;
    std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Basis of the integer solution lattice {x : M x = 0}, as matrix columns.
// Columns are linearly independent; count = cols(M) - rank(M).
IntMatrix integer_kernel(const IntMatrix& m);

// One integer solution of M x = b, or nullopt when none exists.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b);

// Basis for the lattice spanned by the columns of M, as matrix columns
// (linearly independent, count = rank(M)).
IntMatrix column_lattice_basis(const IntMatrix& m);

} // namespace chaincalc
