#include "hypertoric/hypertoric_data.hpp"

#include <algorithm>

#include "hypertoric/exact_linalg.hpp"

namespace hypertoric {

namespace {

using Index = Eigen::Index;

IntMatrix drop_columns(const IntMatrix& A, unsigned mask) {
    std::vector<Index> keep;
    for (Index j = 0; j < A.cols(); ++j)
        if (!(mask & (1u << j))) keep.push_back(j);
    IntMatrix B(A.rows(), static_cast<Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) B.col(static_cast<Index>(j)) = A.col(keep[j]);
    return B;
}

std::vector<int> mask_to_set(unsigned mask, Index d) {
    std::vector<int> out;
    for (Index j = 0; j < d; ++j)
        if (mask & (1u << j)) out.push_back(static_cast<int>(j));
    return out;
}

}  // namespace

RatVector HypertoricData::beta_real() const {
    RatVector v(m);
    for (Index k = 0; k < m; ++k) v(k) = beta(k).re;
    return v;
}

RatVector HypertoricData::beta_imag() const {
    RatVector v(m);
    for (Index k = 0; k < m; ++k) v(k) = beta(k).im;
    return v;
}

bool HypertoricData::beta_is_zero() const {
    for (Index k = 0; k < m; ++k)
        if (!beta(k).is_zero()) return false;
    return true;
}

HypertoricData build(const IntMatrix& A, const RatVector& alpha, const GaussRatVector& beta) {
    HypertoricData data;
    data.m = A.rows();
    data.d = A.cols();
    if (alpha.size() != data.m || beta.size() != data.m)
        throw std::invalid_argument("build: alpha/beta length must equal the row count of A");
    if (data.m > data.d)
        throw RankDeficientError("build: more subtorus generators than ambient circles");

    if (data.m > 0) {
        if (rank(A) < data.m)
            throw RankDeficientError("build: rank(A) < m, generators are dependent");
        if (!smith_normal_form(A).diagonal_all_ones())
            throw NonPrimitiveSubtorusError(
                "build: row lattice of A is not saturated, the subtorus is not primitive");
    }

    data.A = A;
    data.alpha = alpha;
    data.beta = beta;
    data.U = integer_kernel_basis(A);
    data.n = data.d - data.m;
    return data;
}

SmoothnessReport check_parameter_regularity(const HypertoricData& data) {
    const Index d = data.d, m = data.m;
    if (d > 16)
        throw DimensionTooLargeError(
            "check_parameter_regularity: subset enumeration capped at d <= 16");

    SmoothnessReport report;
    report.unimodular = data.n == 0 || is_unimodular_configuration(data.U);
    for (auto& bad : unimodularity_offenders(data.U)) report.offending_subsets.push_back(bad);

    RatVector beta_re = data.beta_real();
    RatVector beta_im = data.beta_imag();

    std::vector<unsigned> failing;
    const unsigned full = d < 32 ? (1u << d) : 0;
    for (unsigned mask = 1; mask < full; ++mask) {
        IntMatrix rest = drop_columns(data.A, mask);
        if (rank(rest) == m) continue;  // complement still spans m*
        bool real_feasible = rational_solve(rest, data.alpha).has_value();
        bool complex_feasible = real_feasible &&
                                rational_solve(rest, beta_re).has_value() &&
                                rational_solve(rest, beta_im).has_value();
        if (real_feasible && complex_feasible) failing.push_back(mask);
    }
    report.parameter_regular = failing.empty();

    // Keep only inclusion-minimal failures as witnesses.
    for (unsigned f : failing) {
        bool minimal = true;
        for (unsigned g : failing) {
            if (g != f && (g & f) == g) { minimal = false; break; }
        }
        if (minimal) report.offending_subsets.push_back(mask_to_set(f, d));
    }
    return report;
}

}  // namespace hypertoric
