// Input data of a toric hyperkaehler quotient Y(alpha, beta): a primitive
// subtorus M of T^d given by an integer m x d matrix A (columns are the
// covectors iota* e_i* in a basis of m*), the derived quotient-torus normals
// U (rows span ker A over Z, saturated), and the moment levels alpha in m*,
// beta in m*_C. The exact sequence 0 -> m -> t^d -> n -> 0 is encoded by
// A (dual of iota) and U (the projection pi written in a lattice basis of n).

#ifndef HYPERTORIC_HYPERTORIC_DATA_HPP
#define HYPERTORIC_HYPERTORIC_DATA_HPP

#include <vector>

#include "hypertoric/types.hpp"

namespace hypertoric {

struct HypertoricData {
    IntMatrix A;          // m x d
    IntMatrix U;          // n x d, rows a primitive basis of ker A
    RatVector alpha;      // length m
    GaussRatVector beta;  // length m
    Eigen::Index m = 0;
    Eigen::Index n = 0;
    Eigen::Index d = 0;

    /// Column i of U, the normal u_i = pi(e_i).
    IntVector normal(Eigen::Index i) const { return U.col(i); }

    RatVector beta_real() const;
    RatVector beta_imag() const;
    bool beta_is_zero() const;
};

/// Validates A and derives the quotient data. Throws RankDeficientError when
/// rank(A) < m and NonPrimitiveSubtorusError when the row lattice of A is not
/// saturated (the exponential of its span would not be a closed subtorus).
HypertoricData build(const IntMatrix& A, const RatVector& alpha, const GaussRatVector& beta);

struct SmoothnessReport {
    bool unimodular = false;
    bool parameter_regular = false;
    // Failure witnesses: non-unimodular column subsets of U, then the
    // inclusion-minimal coordinate subsets Z for which both restricted
    // moment-level systems stay feasible. Empty iff both flags hold.
    std::vector<std::vector<int>> offending_subsets;

    bool smooth() const { return unimodular && parameter_regular; }
    bool orbifold() const { return parameter_regular && !unimodular; }
};

/// Level-set regularity of (alpha, beta) plus unimodularity of the normals.
///
/// A critical point of the flat moment map on the level set forces a
/// coordinate subset Z with (z_i, w_i) = (0, 0) for i in Z whose complementary
/// covectors {a_i : i not in Z} fail to span; such a point exists iff both
/// systems {A x = alpha, x_Z = 0} and {A y = beta, y_Z = 0} are feasible.
/// Enumerates all Z (exponential in d; throws DimensionTooLargeError for
/// d > 16).
SmoothnessReport check_parameter_regularity(const HypertoricData& data);

}  // namespace hypertoric

#endif  // HYPERTORIC_HYPERTORIC_DATA_HPP
