// Combinatorial classification of the fibers of the residual complex moment
// map. A fiber over b with all b_i != 0 is a smooth complex torus (C*)^n;
// over a point of the wall union the fiber degenerates by shrinking, over
// each feasible intersection flat of real hyperplanes indexed by active
// walls, a real torus whose rank is the span of the corresponding normals.
// For beta = 0 the central fiber is the extended core, one toric piece per
// chamber of the real arrangement.

#ifndef HYPERTORIC_FIBER_CLASSIFIER_HPP
#define HYPERTORIC_FIBER_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/hypertoric_data.hpp"

namespace hypertoric {

/// Model of a smooth fiber: (C*)^rank, a product of rank circles and rank
/// lines.
struct GenericModel {
    Eigen::Index torus_rank = 0;
    Eigen::Index affine_rank = 0;
};

/// One shrinking stratum: over the real flat cut out by the hyperplanes in
/// `active`, a torus of rank `shrunk_torus_rank` collapses.
struct ShrinkStratum {
    std::vector<int> active;
    Stratum<Rat> flat;
    Eigen::Index shrunk_torus_rank = 0;
};

struct FiberDescription {
    GaussRatVector base_point;
    bool regular = false;
    std::optional<GenericModel> generic_model;  // present iff regular
    std::vector<ShrinkStratum> shrink_strata;   // feasible subsets only
    std::vector<ShrinkStratum> fixed_loci;      // strata of full rank n
};

/// Classifies the fiber over b (ambient y-coordinates, A b = beta exact).
/// Throws NotOnBaseError. Strata are listed by (size, lexicographic) order
/// of their active sets; infeasible subsets are omitted.
FiberDescription classify_fiber(const HypertoricData& data, const GaussRatVector& b);

/// Rank of the integer span of {u_i : i in Z}, via Smith normal form.
Eigen::Index isotropy_rank(const HypertoricData& data, const std::vector<int>& Z);

struct CoreComponent {
    std::vector<int> signs;      // chamber sign vector
    bool bounded = false;
    std::string label;           // n = 1: "C" or "CP1"; otherwise sign data
    std::vector<int> neighbors;  // indices of adjacent components
};

/// Components of the central fiber for beta = 0, one per chamber, with
/// adjacency through shared zero-dimensional closure intersections at fixed
/// points. Throws BetaNotZeroError, and DimensionTooLargeError for n > 3.
std::vector<CoreComponent> extended_core(const HypertoricData& data);

}  // namespace hypertoric

#endif  // HYPERTORIC_FIBER_CLASSIFIER_HPP
