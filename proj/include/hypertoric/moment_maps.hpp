// Flat quaternionic model H^d = T*C^d with coordinates (z, w), the torus
// action (z, w) . zeta = (z zeta, w zeta^-1), the hyperkaehler moment maps of
// the subtorus M and of the residual torus N = T^d / M, and the derivatives
// used to build fiber tangent frames.
//
// Conventions for the flat structure (complex structure I_1 = multiplication
// by i on both factors):
//   omega_C  = sum_i dz_i ^ dw_i            (holomorphic symplectic for I_1)
//   omega_1  = (i/2) sum_i (dz_i ^ dzbar_i + dw_i ^ dwbar_i)
//   omega_2  = Re omega_C,  omega_3 = Im omega_C
//   g(X, Y)  = Re sum_i (dz_i(X) conj(dz_i(Y)) + dw_i(X) conj(dw_i(Y)))
//   I_2 (dz, dw) = (-conj(dw), conj(dz)),  I_3 = I_1 I_2
// Real 4d coordinates are laid out in blocks (Re z, Im z, Re w, Im w).

#ifndef HYPERTORIC_MOMENT_MAPS_HPP
#define HYPERTORIC_MOMENT_MAPS_HPP

#include <complex>

#include "hypertoric/hypertoric_data.hpp"
#include "hypertoric/types.hpp"

namespace hypertoric {

struct FlatPoint {
    Eigen::VectorXcd z;
    Eigen::VectorXcd w;

    Eigen::Index dim() const { return z.size(); }
    bool finite() const { return z.allFinite() && w.allFinite(); }
};

struct MomentValues {
    Eigen::VectorXd mu_r;   // subtorus real moment value, length m
    Eigen::VectorXcd mu_c;  // subtorus complex moment value, length m
    Eigen::VectorXd x;      // residual real values x_i = (|z_i|^2 - |w_i|^2) / 2
    Eigen::VectorXcd y;     // residual complex values y_i = z_i w_i
};

struct TangentVector {
    Eigen::VectorXcd dz;
    Eigen::VectorXcd dw;

    double norm() const { return std::sqrt(dz.squaredNorm() + dw.squaredNorm()); }
};

/// Componentwise torus action (z_i zeta_i, w_i / zeta_i). Each zeta_i must be
/// unit modulus within 1e-12; throws NonUnitParameterError otherwise.
FlatPoint act(const FlatPoint& p, const Eigen::VectorXcd& zeta);

/// Both moment maps at p: flat values mu_r = A x, mu_c = A y together with
/// the residual coordinates x, y themselves.
MomentValues evaluate(const HypertoricData& data, const FlatPoint& p);

/// Holomorphic symplectic pairing sum_i (dz1_i dw2_i - dz2_i dw1_i).
std::complex<double> omega_c(const TangentVector& X1, const TangentVector& X2);

/// Kaehler form of I_1 and the real/imaginary parts of omega_C.
double omega_1(const TangentVector& X1, const TangentVector& X2);
double omega_2(const TangentVector& X1, const TangentVector& X2);
double omega_3(const TangentVector& X1, const TangentVector& X2);

/// Flat metric pairing.
double flat_metric(const TangentVector& X1, const TangentVector& X2);

TangentVector i1_apply(const TangentVector& X);
TangentVector i2_apply(const TangentVector& X);
TangentVector i3_apply(const TangentVector& X);

/// Tangent vector of the torus action direction a (in t^d): at p the
/// one-parameter motion s -> (z e^{i s a}, w e^{-i s a}) has derivative
/// (i a . z, -i a . w) componentwise.
TangentVector torus_field(const FlatPoint& p, const Eigen::VectorXd& a);

/// Jacobian of the m + 2d real constraints {A x(z, w) = alpha, z_i w_i = y_i}
/// with respect to the 4d real coordinates (blocked Re z, Im z, Re w, Im w).
/// The value of y_target does not enter the derivative; the argument fixes
/// the constraint count and documents the level set being cut out.
Eigen::MatrixXd constraint_jacobian(const HypertoricData& data, const FlatPoint& p,
                                    const Eigen::VectorXcd& y_target);

/// Conversions between TangentVector and the blocked real layout.
Eigen::VectorXd to_real_coords(const TangentVector& X);
TangentVector from_real_coords(const Eigen::VectorXd& v);

}  // namespace hypertoric

#endif  // HYPERTORIC_MOMENT_MAPS_HPP
