#include "hypertoric/fiber_classifier.hpp"

#include <algorithm>

#include "hypertoric/exact_linalg.hpp"

namespace hypertoric {

namespace {

using Index = Eigen::Index;

// Subsets of `base` ordered by size, then lexicographically.
std::vector<std::vector<int>> subsets_by_size(const std::vector<int>& base) {
    std::vector<std::vector<int>> out;
    const size_t k = base.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> s;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) s.push_back(base[i]);
        out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

}  // namespace

Eigen::Index isotropy_rank(const HypertoricData& data, const std::vector<int>& Z) {
    if (Z.empty() || data.n == 0) return 0;
    IntMatrix M(data.n, static_cast<Index>(Z.size()));
    for (size_t j = 0; j < Z.size(); ++j) M.col(static_cast<Index>(j)) = data.U.col(Z[j]);
    return smith_normal_form(M).rank();
}

FiberDescription classify_fiber(const HypertoricData& data, const GaussRatVector& b) {
    FiberDescription fd;
    fd.base_point = b;
    std::vector<int> S = active_walls(data, b);
    fd.regular = S.empty();
    if (fd.regular) {
        fd.generic_model = GenericModel{data.n, data.n};
        return fd;
    }
    for (auto& Q : subsets_by_size(S)) {
        if (Q.empty()) continue;
        auto st = real_stratum(data, Q);
        if (!st.feasible) continue;
        ShrinkStratum sh;
        sh.active = Q;
        sh.flat = std::move(st);
        sh.shrunk_torus_rank = isotropy_rank(data, Q);
        if (sh.shrunk_torus_rank == data.n) fd.fixed_loci.push_back(sh);
        fd.shrink_strata.push_back(std::move(sh));
    }
    return fd;
}

namespace {

// Closure of the chamber contains t iff every proper coordinate evaluates
// with the chamber sign or vanishes.
bool closure_contains(const HypertoricData& data, const std::vector<Hyperplane<Rat>>& hp,
                      const Chamber& ch, const RatVector& t) {
    for (const auto& h : hp) {
        if (h.kind != HyperplaneKind::proper) continue;
        Rat value = h.offset;
        for (Index j = 0; j < data.n; ++j) value += Rat(h.normal(j)) * t(j);
        if (value == 0) continue;
        bool positive = value > 0;
        if (positive != (ch.signs[static_cast<size_t>(h.index)] > 0)) return false;
    }
    return true;
}

// Direction cone of closure(a) meet closure(b) at the shared point t: on the
// coordinates where the signs differ the directions are pinned to the
// hyperplane, on the other active coordinates they obey the common sign.
// The intersection is zero-dimensional at t iff this cone is trivial.
bool intersection_pointlike(const HypertoricData& data,
                            const std::vector<Hyperplane<Rat>>& hp, const Chamber& a,
                            const Chamber& b, const RatVector& t) {
    if (data.n == 0) return true;
    std::vector<detail::LinearConstraint> cone;
    for (const auto& h : hp) {
        if (h.kind != HyperplaneKind::proper) continue;
        Rat value = h.offset;
        for (Index j = 0; j < data.n; ++j) value += Rat(h.normal(j)) * t(j);
        if (value != 0) continue;  // inactive at t: no local constraint
        size_t i = static_cast<size_t>(h.index);
        if (a.signs[i] != b.signs[i]) {
            // Pinned: <u, v> = 0, expressed as two opposite inequalities.
            for (int s : {1, -1}) {
                detail::LinearConstraint c;
                c.coeffs = h.normal.cast<Rat>() * Rat(s);
                c.rhs = 0;
                cone.push_back(std::move(c));
            }
        } else {
            detail::LinearConstraint c;
            c.coeffs = h.normal.cast<Rat>() * Rat(a.signs[i]);
            c.rhs = 0;
            cone.push_back(std::move(c));
        }
    }
    for (Index j = 0; j < data.n; ++j) {
        for (int s : {1, -1}) {
            auto probe = cone;
            detail::LinearConstraint c;
            c.coeffs = RatVector::Zero(data.n);
            c.coeffs(j) = s;
            c.rhs = 0;
            c.strict = true;
            probe.push_back(std::move(c));
            if (detail::fm_feasible(std::move(probe), data.n)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<CoreComponent> extended_core(const HypertoricData& data) {
    if (!data.beta_is_zero())
        throw BetaNotZeroError("extended_core: defined for beta = 0 only");
    auto chs = chambers(data);
    auto hp = hyperplanes(data);
    auto fps = fixed_points(data);

    std::vector<CoreComponent> out;
    out.reserve(chs.size());
    for (const auto& ch : chs) {
        CoreComponent c;
        c.signs = ch.signs;
        c.bounded = ch.bounded;
        if (data.n == 1) {
            c.label = ch.bounded ? "CP1" : "C";
        } else {
            std::string s;
            for (int v : ch.signs) s += v > 0 ? '+' : '-';
            c.label = s + (ch.bounded ? " (bounded)" : " (unbounded)");
        }
        out.push_back(std::move(c));
    }

    for (size_t a = 0; a < chs.size(); ++a) {
        for (size_t b = a + 1; b < chs.size(); ++b) {
            bool adjacent = false;
            for (const auto& fp : fps) {
                if (!closure_contains(data, hp, chs[a], fp.t)) continue;
                if (!closure_contains(data, hp, chs[b], fp.t)) continue;
                if (intersection_pointlike(data, hp, chs[a], chs[b], fp.t)) {
                    adjacent = true;
                    break;
                }
            }
            if (adjacent) {
                out[a].neighbors.push_back(static_cast<int>(b));
                out[b].neighbors.push_back(static_cast<int>(a));
            }
        }
    }
    return out;
}

}  // namespace hypertoric
