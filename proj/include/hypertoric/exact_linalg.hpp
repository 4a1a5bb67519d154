// Exact integer and rational linear algebra: Smith normal form, saturated
// integer kernels, rational solving, and unimodularity of vector
// configurations. Everything here is total-precision; no floating point.

#ifndef HYPERTORIC_EXACT_LINALG_HPP
#define HYPERTORIC_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "hypertoric/types.hpp"

namespace hypertoric {

/// Decomposition L * M * R = S with L, R unimodular and S diagonal,
/// d_1 | d_2 | ..., all diagonal entries nonnegative. S has the shape of M.
struct SmithNormalForm {
    IntMatrix S;
    IntMatrix L;
    IntMatrix R;

    Eigen::Index rank() const;
    /// True iff every diagonal entry of S is 1 (the row lattice is saturated).
    bool diagonal_all_ones() const;
};

SmithNormalForm smith_normal_form(const IntMatrix& M);

/// Rows form a Hermite-reduced primitive basis of {x in Z^cols : M x = 0}.
/// Leading entry of each row is positive; a full-rank M yields 0 rows.
IntMatrix integer_kernel_basis(const IntMatrix& M);

/// Row-style Hermite normal form of the lattice spanned by the rows of K:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// [0, pivot). Canonical for a given row lattice.
IntMatrix hermite_row_basis(IntMatrix K);

/// Some exact solution of M x = v, or nullopt when the system is
/// inconsistent. The representative is canonical: pivot columns are chosen
/// scanning right to left, remaining free coordinates are set to zero.
std::optional<RatVector> rational_solve(const IntMatrix& M, const RatVector& v);

/// Exact rank over Q.
Eigen::Index rank(const IntMatrix& M);
Eigen::Index rank(const RatMatrix& M);

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
Int determinant(IntMatrix M);

/// True iff every n linearly independent columns of the n x d matrix U have
/// determinant +-1. Throws RankDeficientError when rank(U) < n.
bool is_unimodular_configuration(const IntMatrix& U);

/// Column subsets witnessing failures of unimodularity: all n-column subsets
/// whose determinant d satisfies |d| > 1. Empty iff the configuration is
/// unimodular.
std::vector<std::vector<int>> unimodularity_offenders(const IntMatrix& U);

}  // namespace hypertoric

#endif  // HYPERTORIC_EXACT_LINALG_HPP
