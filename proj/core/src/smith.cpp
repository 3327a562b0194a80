#include "chaincalc/smith.hpp"

#include <cstdlib>

#include "chaincalc/errors.hpp"

namespace chaincalc {

std::vector<Int> SmithDecomposition::diagonal() const {
    std::size_t n = std::min(D.rows(), D.cols());
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = D.at(i, i);
    return d;
}

namespace {

// Working state: A is reduced in place while U, Uinv, V, Vinv track the
// row and column operations so that U*M*V = A and U*Uinv = V*Vinv = I.
struct Reducer {
    IntMatrix A, U, Uinv, V, Vinv;

    explicit Reducer(const IntMatrix& m)
        : A(m),
          U(IntMatrix::identity(m.rows())),
          Uinv(IntMatrix::identity(m.rows())),
          V(IntMatrix::identity(m.cols())),
          Vinv(IntMatrix::identity(m.cols())) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A.at(i, k), A.at(j, k));
        for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U.at(i, k), U.at(j, k));
        for (std::size_t k = 0; k < Uinv.rows(); ++k) std::swap(Uinv.at(k, i), Uinv.at(k, j));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.rows(); ++k) std::swap(A.at(k, i), A.at(k, j));
        for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V.at(k, i), V.at(k, j));
        for (std::size_t k = 0; k < Vinv.cols(); ++k) std::swap(Vinv.at(i, k), Vinv.at(j, k));
    }

    // row i += c * row j
    void add_row(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < A.cols(); ++k) A.at(i, k) += c * A.at(j, k);
        for (std::size_t k = 0; k < U.cols(); ++k) U.at(i, k) += c * U.at(j, k);
        for (std::size_t k = 0; k < Uinv.rows(); ++k) Uinv.at(k, j) -= c * Uinv.at(k, i);
    }

    // col i += c * col j
    void add_col(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < A.rows(); ++k) A.at(k, i) += c * A.at(k, j);
        for (std::size_t k = 0; k < V.rows(); ++k) V.at(k, i) += c * V.at(k, j);
        for (std::size_t k = 0; k < Vinv.cols(); ++k) Vinv.at(j, k) -= c * Vinv.at(i, k);
    }

    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < A.cols(); ++k) A.at(i, k) = -A.at(i, k);
        for (std::size_t k = 0; k < U.cols(); ++k) U.at(i, k) = -U.at(i, k);
        for (std::size_t k = 0; k < Uinv.rows(); ++k) Uinv.at(k, i) = -Uinv.at(k, i);
    }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    Reducer r(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t steps = std::min(rows, cols);
    std::size_t t = 0;
    bool exhausted = false;
    while (t < steps && !exhausted) {
        for (;;) {
            // Pivot: smallest nonzero magnitude in the trailing submatrix,
            // re-scanned every pass. Eliminations below run only when the
            // pivot divides its row and column exactly, so quotients stay
            // as small as the data allows and entries cannot cascade.
            std::size_t pi = t, pj = t;
            bool found = false;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const Int& e = r.A.at(i, j);
                    if (e == 0) continue;
                    if (!found || abs(e) < abs(r.A.at(pi, pj))) { pi = i; pj = j; found = true; }
                }
            if (!found) {
                // Trailing submatrix is zero: the rank is t.
                exhausted = true;
                break;
            }
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);

            // Reduce column t and row t modulo the pivot. Any nonzero
            // remainder is strictly smaller than the pivot, so re-scanning
            // makes progress; with no remainders both are fully cleared.
            const Int pivot = r.A.at(t, t);
            bool remainder = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (r.A.at(i, t) == 0) continue;
                Int q = r.A.at(i, t) / pivot;
                r.add_row(i, t, -q);
                if (r.A.at(i, t) != 0) remainder = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (r.A.at(t, j) == 0) continue;
                Int q = r.A.at(t, j) / pivot;
                r.add_col(j, t, -q);
                if (r.A.at(t, j) != 0) remainder = true;
            }
            if (remainder) continue;

            // Pivot must divide the trailing submatrix, or the divisibility
            // chain would fail later; pull an offending row in and repeat.
            // The merged row then leaves a remainder, shrinking the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (r.A.at(i, j) % pivot != 0) {
                        r.add_row(t, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (exhausted) break;
        if (r.A.at(t, t) < 0) r.negate_row(t);
        ++t;
    }
    SmithDecomposition out;
    out.U = std::move(r.U);
    out.D = std::move(r.A);
    out.V = std::move(r.V);
    out.Uinv = std::move(r.Uinv);
    out.Vinv = std::move(r.Vinv);
    out.rank = t;
    return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    return s.V.column_slice(s.rank, m.cols() - s.rank);
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw domain_error("right-hand side length does not match matrix rows");
    SmithDecomposition s = smith_normal_form(m);
    std::vector<Int> c = s.U.apply(b);
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t j = 0; j < m.rows(); ++j) {
        if (j < s.rank) {
            const Int& d = s.D.at(j, j);
            if (c[j] % d != 0) return std::nullopt;
            y[j] = c[j] / d;
        } else if (c[j] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

IntMatrix column_lattice_basis(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    IntMatrix basis(m.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            basis.at(i, j) = s.D.at(j, j) * s.Uinv.at(i, j);
    return basis;
}

} // namespace chaincalc
