#include "hypertoric/moment_maps.hpp"

#include <cmath>

namespace hypertoric {

namespace {
using Index = Eigen::Index;
constexpr std::complex<double> kI{0.0, 1.0};
}  // namespace

FlatPoint act(const FlatPoint& p, const Eigen::VectorXcd& zeta) {
    if (zeta.size() != p.dim())
        throw std::invalid_argument("act: zeta length mismatch");
    for (Index i = 0; i < zeta.size(); ++i) {
        if (std::abs(std::abs(zeta(i)) - 1.0) > 1e-12)
            throw NonUnitParameterError("act: zeta entries must be unit modulus");
    }
    FlatPoint q;
    q.z = p.z.cwiseProduct(zeta);
    q.w = p.w.cwiseQuotient(zeta);
    return q;
}

MomentValues evaluate(const HypertoricData& data, const FlatPoint& p) {
    if (p.dim() != data.d)
        throw std::invalid_argument("evaluate: point dimension mismatch");
    MomentValues mv;
    mv.x = 0.5 * (p.z.cwiseAbs2() - p.w.cwiseAbs2());
    mv.y = p.z.cwiseProduct(p.w);
    Eigen::MatrixXd A = data.A.cast<double>();
    mv.mu_r = A * mv.x;
    mv.mu_c = A * mv.y;
    return mv;
}

std::complex<double> omega_c(const TangentVector& X1, const TangentVector& X2) {
    return (X1.dz.cwiseProduct(X2.dw) - X2.dz.cwiseProduct(X1.dw)).sum();
}

double omega_2(const TangentVector& X1, const TangentVector& X2) {
    return omega_c(X1, X2).real();
}

double omega_3(const TangentVector& X1, const TangentVector& X2) {
    return omega_c(X1, X2).imag();
}

double omega_1(const TangentVector& X1, const TangentVector& X2) {
    // (i/2) sum (dz ^ dzbar + dw ^ dwbar) evaluated on (X1, X2).
    std::complex<double> s = (X1.dz.cwiseProduct(X2.dz.conjugate()) +
                              X1.dw.cwiseProduct(X2.dw.conjugate()))
                                 .sum();
    return -s.imag();
}

double flat_metric(const TangentVector& X1, const TangentVector& X2) {
    std::complex<double> s = (X1.dz.cwiseProduct(X2.dz.conjugate()) +
                              X1.dw.cwiseProduct(X2.dw.conjugate()))
                                 .sum();
    return s.real();
}

TangentVector i1_apply(const TangentVector& X) { return {kI * X.dz, kI * X.dw}; }

TangentVector i2_apply(const TangentVector& X) {
    return {-X.dw.conjugate(), X.dz.conjugate()};
}

TangentVector i3_apply(const TangentVector& X) { return i1_apply(i2_apply(X)); }

TangentVector torus_field(const FlatPoint& p, const Eigen::VectorXd& a) {
    TangentVector f;
    f.dz = kI * a.cast<std::complex<double>>().cwiseProduct(p.z);
    f.dw = -kI * a.cast<std::complex<double>>().cwiseProduct(p.w);
    return f;
}

Eigen::MatrixXd constraint_jacobian(const HypertoricData& data, const FlatPoint& p,
                                    const Eigen::VectorXcd& y_target) {
    const Index d = data.d, m = data.m;
    if (p.dim() != d || y_target.size() != d)
        throw std::invalid_argument("constraint_jacobian: dimension mismatch");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + 2 * d, 4 * d);
    Eigen::MatrixXd A = data.A.cast<double>();

    // Rows 0..m-1: gradient of sum_i A_ki x_i with x_i = (|z_i|^2 - |w_i|^2)/2.
    for (Index k = 0; k < m; ++k) {
        for (Index i = 0; i < d; ++i) {
            double a = A(k, i);
            if (a == 0.0) continue;
            J(k, i) = a * p.z(i).real();
            J(k, d + i) = a * p.z(i).imag();
            J(k, 2 * d + i) = -a * p.w(i).real();
            J(k, 3 * d + i) = -a * p.w(i).imag();
        }
    }
    // Rows m + 2i, m + 2i + 1: Re and Im of z_i w_i - y_i.
    for (Index i = 0; i < d; ++i) {
        double zr = p.z(i).real(), zi = p.z(i).imag();
        double wr = p.w(i).real(), wi = p.w(i).imag();
        Index re = m + 2 * i, im = re + 1;
        J(re, i) = wr;
        J(re, d + i) = -wi;
        J(re, 2 * d + i) = zr;
        J(re, 3 * d + i) = -zi;
        J(im, i) = wi;
        J(im, d + i) = wr;
        J(im, 2 * d + i) = zi;
        J(im, 3 * d + i) = zr;
    }
    return J;
}

Eigen::VectorXd to_real_coords(const TangentVector& X) {
    const Index d = X.dz.size();
    Eigen::VectorXd v(4 * d);
    v.segment(0, d) = X.dz.real();
    v.segment(d, d) = X.dz.imag();
    v.segment(2 * d, d) = X.dw.real();
    v.segment(3 * d, d) = X.dw.imag();
    return v;
}

TangentVector from_real_coords(const Eigen::VectorXd& v) {
    const Index d = v.size() / 4;
    TangentVector X;
    X.dz = v.segment(0, d).cast<std::complex<double>>() +
           kI * v.segment(d, d).cast<std::complex<double>>();
    X.dw = v.segment(2 * d, d).cast<std::complex<double>>() +
           kI * v.segment(3 * d, d).cast<std::complex<double>>();
    return X;
}

}  // namespace hypertoric
