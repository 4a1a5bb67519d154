// Affine solution spaces of A v = alpha (real) and A v = beta (complex),
// identified with the duals n* and n*_C of the residual torus Lie algebra.
// Each ambient coordinate cuts out a hyperplane H_i (real side) or a wall
// W_i (complex side); this module computes the induced arrangement: kinds,
// regular values, strata of wall intersections, chambers, and the vertices
// where n independent hyperplanes meet (the fixed points of the residual
// torus action).
//
// All computations are exact. Points on the complex side are presented in
// ambient y-coordinates (length d, satisfying A y = beta); conversion to the
// n-dimensional parameter t with v = base + U^T t is provided.

#ifndef HYPERTORIC_ARRANGEMENT_HPP
#define HYPERTORIC_ARRANGEMENT_HPP

#include <vector>

#include "hypertoric/hypertoric_data.hpp"
#include "hypertoric/types.hpp"

namespace hypertoric {

template <typename Scalar>
struct SolutionSpace {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> base;  // length d, A base = level
    IntMatrix directions;                           // n x d, the rows of U

    /// v(t) = base + directions^T t.
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> at(
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& t) const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = base;
        for (Eigen::Index i = 0; i < directions.cols(); ++i)
            for (Eigen::Index j = 0; j < directions.rows(); ++j)
                v(i) += Scalar(Rat(directions(j, i))) * t(j);
        return v;
    }
};

using RealSolutionSpace = SolutionSpace<Rat>;
using ComplexSolutionSpace = SolutionSpace<GaussRat>;

RealSolutionSpace real_solution_space(const HypertoricData& data);
ComplexSolutionSpace complex_solution_space(const HypertoricData& data);

enum class HyperplaneKind { proper, empty, full };

/// In parameter coordinates the locus {t : <normal, t> + offset = 0}. A zero
/// normal degenerates to the empty set or the whole space depending on the
/// offset.
template <typename Scalar>
struct Hyperplane {
    int index = 0;    // ambient coordinate i, 0-based
    IntVector normal; // u_i, length n
    Scalar offset;    // base_i
    HyperplaneKind kind = HyperplaneKind::proper;
};

std::vector<Hyperplane<Rat>> hyperplanes(const HypertoricData& data);
std::vector<Hyperplane<GaussRat>> walls(const HypertoricData& data);

/// True iff b avoids every wall, i.e. all b_i != 0. b is validated to lie on
/// the complex solution space (throws NotOnBaseError).
bool is_regular_value(const HypertoricData& data, const GaussRatVector& b);

/// {i : b_i = 0}, exact. Throws NotOnBaseError when A b != beta.
std::vector<int> active_walls(const HypertoricData& data, const GaussRatVector& b);

template <typename Scalar>
struct Stratum {
    std::vector<int> active;     // coordinate subset S
    bool feasible = false;
    Eigen::Index flat_dim = 0;   // n - rank{u_i : i in S} when feasible
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flat_base;  // witness t
    IntMatrix flat_directions;   // rows span {t : <u_i, t> = 0 for i in S}
};

/// Intersection of the coordinate vanishing locus {v_i = 0 : i in S} with the
/// solution space, in parameter coordinates. Infeasible strata are returned
/// with feasible = false, never thrown.
Stratum<Rat> real_stratum(const HypertoricData& data, const std::vector<int>& S);
Stratum<GaussRat> complex_stratum(const HypertoricData& data, const std::vector<int>& S);

struct Chamber {
    std::vector<int> signs;  // +1 / -1 per ambient coordinate
    bool bounded = false;
};

/// All chambers of the real hyperplane arrangement: feasible strict sign
/// vectors of (x_i) on the solution space off the union of hyperplanes,
/// each with exact boundedness (trivial recession cone). Feasibility and
/// boundedness are decided by exact rational Fourier-Motzkin elimination.
/// For n = 1 chambers come back in line order. Throws DimensionTooLargeError
/// when n > 3.
std::vector<Chamber> chambers(const HypertoricData& data);

struct FixedPoint {
    RatVector t;              // parameter coordinates on the real space
    std::vector<int> active;  // all i with x_i(t) = 0
};

/// Vertices of the real arrangement where some n hyperplanes with
/// independent normals meet; these are the residual-torus fixed points.
/// Sorted lexicographically by parameter coordinates.
std::vector<FixedPoint> fixed_points(const HypertoricData& data);

/// Parameter coordinates of an ambient point: solves base + U^T t = v.
/// Throws NotOnBaseError when v does not lie on the solution space.
RatVector to_parameter(const HypertoricData& data, const RatVector& v);
GaussRatVector to_parameter(const HypertoricData& data, const GaussRatVector& v);

namespace detail {

/// One strict or non-strict half-space {t : <coeffs, t> >= rhs} (or > rhs).
struct LinearConstraint {
    RatVector coeffs;
    Rat rhs;
    bool strict = false;
};

/// Exact feasibility of a conjunction of linear constraints by
/// Fourier-Motzkin elimination.
bool fm_feasible(std::vector<LinearConstraint> constraints, Eigen::Index nvars);

}  // namespace detail

}  // namespace hypertoric

#endif  // HYPERTORIC_ARRANGEMENT_HPP
