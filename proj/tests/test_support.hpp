// Shared helpers for the test suites: tiny deterministic generators and
// independent oracles (kept separate from the library code paths they check).

#ifndef HYPERTORIC_TEST_SUPPORT_HPP
#define HYPERTORIC_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "hypertoric/types.hpp"

namespace hypertoric::testing {

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Eigen::Index d = m > 0 ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
    IntMatrix A(m, d);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (long v : row) A(i, j++) = v;
        ++i;
    }
    return A;
}

inline RatVector rat_vector(std::initializer_list<const char*> entries) {
    RatVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const char* s : entries) v(i++) = rat_from_string(s);
    return v;
}

inline GaussRatVector gauss_vector(std::initializer_list<const char*> re,
                                   std::initializer_list<const char*> im) {
    GaussRatVector v(static_cast<Eigen::Index>(re.size()));
    Eigen::Index i = 0;
    auto it = im.begin();
    for (const char* s : re) {
        v(i) = GaussRat(rat_from_string(s), rat_from_string(*it++));
        ++i;
    }
    return v;
}

inline GaussRatVector gauss_zero(Eigen::Index n) {
    GaussRatVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = GaussRat();
    return v;
}

inline IntMatrix random_int_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols,
                                   int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = dist(rng);
    return M;
}

inline Rat random_rat(std::mt19937& rng, int num_range = 8, int max_den = 6) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rat(num(rng), den(rng));
}

inline RatVector random_rat_vector(std::mt19937& rng, Eigen::Index n) {
    RatVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = random_rat(rng);
    return v;
}

// Independent determinant oracle: recursive Laplace expansion along the
// first row. Deliberately naive; used to cross-check Bareiss elimination.
inline Int laplace_determinant(const IntMatrix& A) {
    Eigen::Index n = A.rows();
    if (n == 0) return 1;
    if (n == 1) return A(0, 0);
    Int det = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (A(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i) {
            Eigen::Index c = 0;
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, c++) = A(i, k);
            }
        }
        Int term = A(0, j) * laplace_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

}  // namespace hypertoric::testing

#endif  // HYPERTORIC_TEST_SUPPORT_HPP
