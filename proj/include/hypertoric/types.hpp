// Scalar types and dense containers shared by every module.
//
// All combinatorial computations run over exact GMP-backed integers and
// rationals (Eigen matrices templated on the scalar); floating point is
// confined to the numeric verification layer.

#ifndef HYPERTORIC_TYPES_HPP
#define HYPERTORIC_TYPES_HPP

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace hypertoric {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Gaussian rational: exact element of Q[i], stored as reduced (re, im).
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(int v) : re(v), im(0) {}             // NOLINT: Eigen needs Scalar(0)
    GaussRat(const Rat& r) : re(r), im(0) {}      // NOLINT
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussRat& g) {
        os << g.re;
        if (g.im != 0) os << (g.im > 0 ? "+" : "") << g.im << "*i";
        return os;
    }
};

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using GaussRatVector = Eigen::Matrix<GaussRat, Eigen::Dynamic, 1>;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline std::complex<double> to_complex(const GaussRat& g) {
    return {to_double(g.re), to_double(g.im)};
}

/// Parses "p", "p/q", or decimal-free signed integers; always reduced.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

// Error taxonomy. Every throwing precondition in the public API uses one of
// these so callers (and the CLI exit-code mapping) can discriminate.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPrimitiveSubtorusError : Error { using Error::Error; };
struct RankDeficientError : Error { using Error::Error; };
struct NotOnBaseError : Error { using Error::Error; };
struct BetaNotZeroError : Error { using Error::Error; };
struct DimensionTooLargeError : Error { using Error::Error; };
struct NonUnitParameterError : Error { using Error::Error; };
struct RankDropError : Error { using Error::Error; };
struct InfeasibleTargetError : Error { using Error::Error; };

}  // namespace hypertoric

namespace Eigen {
template <>
struct NumTraits<hypertoric::GaussRat> : GenericNumTraits<hypertoric::GaussRat> {
    using Real = hypertoric::GaussRat;
    using NonInteger = hypertoric::GaussRat;
    using Literal = hypertoric::GaussRat;
    using Nested = hypertoric::GaussRat;
    enum {
        IsComplex = 0,  // no conjugation in products; Q[i] handled explicitly
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 80,
    };
    static Real epsilon() { return {}; }
    static Real dummy_precision() { return {}; }
    static int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // HYPERTORIC_TYPES_HPP
