#include "hypertoric/exact_linalg.hpp"

#include <algorithm>
#include <limits>

namespace hypertoric {

namespace {

using Index = Eigen::Index;

void swap_rows(IntMatrix& M, Index a, Index b) { M.row(a).swap(M.row(b)); }
void swap_cols(IntMatrix& M, Index a, Index b) { M.col(a).swap(M.col(b)); }

// Position of a nonzero entry of minimal absolute value in M(t:, t:).
bool find_pivot(const IntMatrix& M, Index t, Index& pi, Index& pj) {
    bool found = false;
    Int best;
    for (Index i = t; i < M.rows(); ++i) {
        for (Index j = t; j < M.cols(); ++j) {
            if (M(i, j) == 0) continue;
            Int a = abs(M(i, j));
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    }
    return found;
}

}  // namespace

Eigen::Index SmithNormalForm::rank() const {
    Index r = 0;
    Index k = std::min(S.rows(), S.cols());
    for (Index i = 0; i < k; ++i)
        if (S(i, i) != 0) ++r;
    return r;
}

bool SmithNormalForm::diagonal_all_ones() const {
    Index k = std::min(S.rows(), S.cols());
    for (Index i = 0; i < k; ++i)
        if (S(i, i) != 1) return false;
    return true;
}

SmithNormalForm smith_normal_form(const IntMatrix& M) {
    const Index rows = M.rows(), cols = M.cols();
    SmithNormalForm out;
    out.S = M;
    out.L = IntMatrix::Identity(rows, rows);
    out.R = IntMatrix::Identity(cols, cols);
    IntMatrix& S = out.S;
    IntMatrix& L = out.L;
    IntMatrix& R = out.R;

    const Index k = std::min(rows, cols);
    for (Index t = 0; t < k; ++t) {
        Index pi, pj;
        if (!find_pivot(S, t, pi, pj)) break;
        if (pi != t) { swap_rows(S, t, pi); swap_rows(L, t, pi); }
        if (pj != t) { swap_cols(S, t, pj); swap_cols(R, t, pj); }

        for (;;) {
            // Reduce column t below the pivot.
            bool dirty = false;
            for (Index i = t + 1; i < rows; ++i) {
                if (S(i, t) == 0) continue;
                Int q = S(i, t) / S(t, t);
                if (q != 0) {
                    S.row(i) -= q * S.row(t);
                    L.row(i) -= q * L.row(t);
                }
                if (S(i, t) != 0) {
                    // Remainder strictly smaller in absolute value: re-pivot.
                    swap_rows(S, t, i);
                    swap_rows(L, t, i);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Reduce row t right of the pivot.
            for (Index j = t + 1; j < cols; ++j) {
                if (S(t, j) == 0) continue;
                Int q = S(t, j) / S(t, t);
                if (q != 0) {
                    S.col(j) -= q * S.col(t);
                    R.col(j) -= q * R.col(t);
                }
                if (S(t, j) != 0) {
                    swap_cols(S, t, j);
                    swap_cols(R, t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Divisibility sweep: S(t,t) must divide every remaining entry.
            bool fixed = true;
            for (Index i = t + 1; i < rows && fixed; ++i) {
                for (Index j = t + 1; j < cols && fixed; ++j) {
                    if (S(i, j) % S(t, t) != 0) {
                        S.row(t) += S.row(i);
                        L.row(t) += L.row(i);
                        fixed = false;
                    }
                }
            }
            if (fixed) break;
        }

        if (S(t, t) < 0) {
            S.row(t) = -S.row(t);
            L.row(t) = -L.row(t);
        }
    }
    return out;
}

IntMatrix hermite_row_basis(IntMatrix K) {
    const Index rows = K.rows(), cols = K.cols();
    Index r = 0;
    for (Index j = 0; j < cols && r < rows; ++j) {
        // Euclidean passes on column j among rows r..end.
        for (;;) {
            Index best = -1;
            for (Index i = r; i < rows; ++i) {
                if (K(i, j) == 0) continue;
                if (best < 0 || abs(K(i, j)) < abs(K(best, j))) best = i;
            }
            if (best < 0) break;
            if (best != r) swap_rows(K, r, best);
            bool clean = true;
            for (Index i = r + 1; i < rows; ++i) {
                if (K(i, j) == 0) continue;
                Int q = K(i, j) / K(r, j);
                K.row(i) -= q * K.row(r);
                if (K(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (K(r, j) == 0) continue;
        if (K(r, j) < 0) K.row(r) = -K.row(r);
        // Reduce entries above the pivot into [0, pivot).
        for (Index i = 0; i < r; ++i) {
            Int q = K(i, j) / K(r, j);
            if (K(i, j) % K(r, j) < 0) q -= 1;  // floor division
            if (q != 0) K.row(i) -= q * K.row(r);
        }
        ++r;
    }
    return K.topRows(r);
}

IntMatrix integer_kernel_basis(const IntMatrix& M) {
    const Index cols = M.cols();
    if (M.rows() == 0) return IntMatrix::Identity(cols, cols);
    SmithNormalForm snf = smith_normal_form(M);
    const Index r = snf.rank();
    // M = L^-1 S R^-1, so ker M is spanned by the last cols - r columns of R.
    IntMatrix K(cols - r, cols);
    for (Index j = r; j < cols; ++j) K.row(j - r) = snf.R.col(j).transpose();
    return hermite_row_basis(std::move(K));
}

std::optional<RatVector> rational_solve(const IntMatrix& M, const RatVector& v) {
    const Index rows = M.rows(), cols = M.cols();
    RatMatrix aug(rows, cols + 1);
    aug.leftCols(cols) = M.cast<Rat>();
    aug.col(cols) = v;

    std::vector<std::pair<Index, Index>> pivots;
    Index r = 0;
    // Pivot columns scanned right to left: the representative solution is
    // supported on late coordinates, early free coordinates stay zero.
    for (Index j = cols - 1; j >= 0 && r < rows; --j) {
        Index p = -1;
        for (Index i = r; i < rows; ++i) {
            if (aug(i, j) != 0) { p = i; break; }
        }
        if (p < 0) continue;
        aug.row(p).swap(aug.row(r));
        Rat piv = aug(r, j);
        aug.row(r) /= piv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r || aug(i, j) == 0) continue;
            Rat f = aug(i, j);
            aug.row(i) -= f * aug.row(r);
        }
        pivots.emplace_back(r, j);
        ++r;
    }
    for (Index i = r; i < rows; ++i)
        if (aug(i, cols) != 0) return std::nullopt;

    RatVector x = RatVector::Zero(cols);
    for (auto [pr, pc] : pivots) x(pc) = aug(pr, cols);
    return x;
}

Eigen::Index rank(const RatMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    return Eigen::FullPivLU<RatMatrix>(M).rank();
}

Eigen::Index rank(const IntMatrix& M) { return rank(RatMatrix(M.cast<Rat>())); }

Int determinant(IntMatrix A) {
    const Index n = A.rows();
    if (n != A.cols()) throw Error("determinant: matrix not square");
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (Index k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            Index p = -1;
            for (Index i = k + 1; i < n; ++i)
                if (A(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            swap_rows(A, k, p);
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j)
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

namespace {

// Visits all n-column subsets of U; stops early when `visit` returns false.
template <typename Visit>
void for_each_column_subset(Index d, Index n, Visit visit) {
    std::vector<int> idx(n);
    for (Index i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    if (n > d) return;
    for (;;) {
        if (!visit(idx)) return;
        Index i = n - 1;
        while (i >= 0 && idx[i] == d - n + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (Index j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

IntMatrix select_columns(const IntMatrix& U, const std::vector<int>& idx) {
    IntMatrix B(U.rows(), static_cast<Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) B.col(static_cast<Index>(j)) = U.col(idx[j]);
    return B;
}

}  // namespace

bool is_unimodular_configuration(const IntMatrix& U) {
    const Index n = U.rows();
    if (rank(U) < n) throw RankDeficientError("is_unimodular_configuration: rank(U) < n");
    bool ok = true;
    for_each_column_subset(U.cols(), n, [&](const std::vector<int>& idx) {
        Int det = determinant(select_columns(U, idx));
        if (det != 0 && abs(det) != 1) { ok = false; return false; }
        return true;
    });
    return ok;
}

std::vector<std::vector<int>> unimodularity_offenders(const IntMatrix& U) {
    const Index n = U.rows();
    std::vector<std::vector<int>> bad;
    for_each_column_subset(U.cols(), n, [&](const std::vector<int>& idx) {
        Int det = determinant(select_columns(U, idx));
        if (det != 0 && abs(det) != 1) bad.push_back(idx);
        return true;
    });
    return bad;
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s), Int(1));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

std::string rat_to_string(const Rat& q) { return q.str(); }

}  // namespace hypertoric
