// Floating-point certification of the fibration structure on sampled fiber
// points. Fibers are sampled in closed form: inverting
// x_i = (s_i - |y_i|^2 / s_i) / 2 with s_i = |z_i|^2 gives
// s_i = x_i + sqrt(x_i^2 + |y_i|^2), so every exact rational target (x, y)
// lifts to a point of the level set without iteration. The free residual
// phases enter through a fixed integer section of the quotient torus chosen
// via Smith normal form; the remaining gauge is set to zero.
//
// Checks are run per sample and aggregated with max/and reductions, so
// identical inputs and seeds produce identical reports at any thread count
// (HYPERTORIC_THREADS caps parallelism).

#ifndef HYPERTORIC_NUMERIC_VERIFIER_HPP
#define HYPERTORIC_NUMERIC_VERIFIER_HPP

#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/fiber_classifier.hpp"
#include "hypertoric/moment_maps.hpp"

namespace hypertoric {

struct FiberSample {
    FlatPoint point;
    Eigen::VectorXd x;        // targeted residual real moment value
    Eigen::VectorXcd phases;  // the d unit factors applied to the point
    Eigen::VectorXcd y_target;
};

/// Lifts the fiber point over b with real moment target x(t) = x0 + U^T t and
/// the given n free phase angles. Inputs are exact; the result satisfies
/// |z_i w_i - y_i| <= 1e-10 (1 + |y_i|) and |A x - alpha| <= 1e-10, otherwise
/// InfeasibleTargetError is thrown.
FiberSample sample_fiber(const HypertoricData& data, const GaussRatVector& b,
                         const RatVector& t, const Eigen::VectorXd& phase_angles);

/// Orthonormal basis of ker(constraint jacobian) orthogonal to the subtorus
/// orbit directions: the horizontal lift of the fiber tangent space,
/// dimension 2n at a smooth sample. Throws RankDropError when the dimension
/// comes out different (a singular sample).
std::vector<TangentVector> horizontal_fiber_frame(const HypertoricData& data,
                                                  const FiberSample& sample);

/// Integer section of the residual torus: a d x n matrix B with U B = I_n.
IntMatrix phase_section(const HypertoricData& data);

/// Residual-torus isotropy at a point, numerically: the number of quotient
/// Lie-algebra directions whose induced vector field (the flat field minus
/// its component along the subtorus orbit) has norm below 1e-9. Also returns
/// the smallest surviving singular value (infinity when none survives).
struct NumericIsotropy {
    Eigen::Index rank = 0;
    double gap = 0;
};
NumericIsotropy numeric_isotropy(const HypertoricData& data, const FlatPoint& p);

struct VerificationReport {
    int n_samples = 0;
    double max_omega_c = 0.0;          // frame-frame pairings
    double max_omega_vx = 0.0;         // orbit-frame pairings
    double min_isotropy_gap = 0.0;
    double max_sampler_residual = 0.0;
    bool jacobian_rank_ok = true;
    bool freeness_ok = true;
    bool isotropy_ok = true;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<double> per_sample;  // headline metric per sample, for CSV
};

/// Vanishing of the holomorphic symplectic form on horizontal fiber frames
/// over a regular value b, sampled at seeded random targets and phases.
/// Passes iff every recorded pairing stays within tol (frames are
/// orthonormal, so the scale is 1).
VerificationReport verify_lagrangian(const HypertoricData& data, const GaussRatVector& b,
                                     int n_samples, double tol, unsigned seed = 0);

/// Smooth-fiber proof obligations over a regular b on the product grid
/// axis^n: free residual action (numeric isotropy rank 0), existence of the
/// 2n-dimensional horizontal frame, and the closed-form sampler hitting every
/// grid target exactly (the surjectivity witness).
VerificationReport verify_generic_fiber(const HypertoricData& data, const GaussRatVector& b,
                                        const std::vector<Rat>& axis = {Rat(-2), Rat(-1),
                                                                        Rat(0), Rat(1),
                                                                        Rat(2)});

/// Shrinking data over a singular b: for every feasible stratum of the
/// classification, a sample on a generic point of its flat has numeric
/// isotropy rank equal to the shrunk torus rank, and a sample just off the
/// flat has strictly smaller isotropy.
VerificationReport verify_shrinking(const HypertoricData& data, const GaussRatVector& b);

}  // namespace hypertoric

#endif  // HYPERTORIC_NUMERIC_VERIFIER_HPP
