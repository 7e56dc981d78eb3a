#ifndef FFLAB_LINALG_HPP
#define FFLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "fflab/ratfunc.hpp"

namespace fflab {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

template <typename T>
struct RrefResult {
    int rank = 0;
    Matrix<T> rows;          // the nonzero rows of the reduced echelon form
    std::vector<int> pivots; // pivot column of each row, strictly increasing
};

/// Solution of A s = b over a field: exactly one of the three shapes.
template <typename T>
struct LinSolve {
    bool consistent = false;
    std::vector<T> particular;   // one solution when consistent
    Matrix<T> kernel;            // basis of the solution space of A s = 0
};

/// Reduced row echelon form over K. Pivots are normalized to 1 and the output
/// is the canonical representative of the row space.
RrefResult<Scalar> rref_K(const Matrix<Scalar>& rows);

/// Reduced row echelon form over K(x). Rows are cleared to polynomials and
/// content-stripped between eliminations to bound degree growth; the final
/// rows are re-normalized with pivot entries 1, so the output is canonical.
RrefResult<RatFunc> rref_Kx(const Matrix<RatFunc>& rows);

/// Basis of { c : c A = 0 } (coefficients on the rows of A).
Matrix<Scalar> left_kernel_K(const Matrix<Scalar>& rows, int ncols);
Matrix<RatFunc> left_kernel_Kx(const Matrix<RatFunc>& rows, int ncols);

/// Basis of { v : A v = 0 }.
Matrix<Scalar> right_kernel_K(const Matrix<Scalar>& rows, int ncols);
Matrix<RatFunc> right_kernel_Kx(const Matrix<RatFunc>& rows, int ncols);

/// Solve A s = b exactly; inconsistency is reported, not thrown.
LinSolve<RatFunc> solve_Kx(const Matrix<RatFunc>& A, const std::vector<RatFunc>& b);
LinSolve<Scalar> solve_K(const Matrix<Scalar>& A, const std::vector<Scalar>& b);

}  // namespace fflab

#endif
