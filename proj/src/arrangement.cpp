#include "hypertoric/arrangement.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hypertoric/exact_linalg.hpp"

namespace hypertoric {

namespace {

using Index = Eigen::Index;

RatVector gauss_real(const GaussRatVector& v) {
    RatVector r(v.size());
    for (Index i = 0; i < v.size(); ++i) r(i) = v(i).re;
    return r;
}

RatVector gauss_imag(const GaussRatVector& v) {
    RatVector r(v.size());
    for (Index i = 0; i < v.size(); ++i) r(i) = v(i).im;
    return r;
}

GaussRatVector gauss_join(const RatVector& re, const RatVector& im) {
    GaussRatVector v(re.size());
    for (Index i = 0; i < re.size(); ++i) v(i) = GaussRat(re(i), im(i));
    return v;
}

void require_on_base(const HypertoricData& data, const GaussRatVector& b) {
    if (b.size() != data.d)
        throw std::invalid_argument("query point must have length d");
    RatVector re = data.A.cast<Rat>() * gauss_real(b);
    RatVector im = data.A.cast<Rat>() * gauss_imag(b);
    if (re != data.beta_real() || im != data.beta_imag())
        throw NotOnBaseError("query point does not satisfy A y = beta");
}

IntMatrix active_normal_rows(const HypertoricData& data, const std::vector<int>& S) {
    IntMatrix M(static_cast<Index>(S.size()), data.n);
    for (size_t r = 0; r < S.size(); ++r)
        M.row(static_cast<Index>(r)) = data.U.col(S[r]).transpose();
    return M;
}

int rat_sign(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace

RealSolutionSpace real_solution_space(const HypertoricData& data) {
    RealSolutionSpace space;
    auto base = rational_solve(data.A, data.alpha);
    if (!base) throw Error("real solution space: A x = alpha inconsistent");
    space.base = *base;
    space.directions = data.U;
    return space;
}

ComplexSolutionSpace complex_solution_space(const HypertoricData& data) {
    ComplexSolutionSpace space;
    auto re = rational_solve(data.A, data.beta_real());
    auto im = rational_solve(data.A, data.beta_imag());
    if (!re || !im) throw Error("complex solution space: A y = beta inconsistent");
    space.base = gauss_join(*re, *im);
    space.directions = data.U;
    return space;
}

namespace {

template <typename Scalar>
std::vector<Hyperplane<Scalar>> cut_hyperplanes(const HypertoricData& data,
                                                const SolutionSpace<Scalar>& space) {
    std::vector<Hyperplane<Scalar>> out;
    out.reserve(data.d);
    for (Index i = 0; i < data.d; ++i) {
        Hyperplane<Scalar> h;
        h.index = static_cast<int>(i);
        h.normal = data.U.col(i);
        h.offset = space.base(i);
        bool zero_normal = h.normal.isZero(0);
        if (!zero_normal)
            h.kind = HyperplaneKind::proper;
        else if (h.offset == Scalar(0))
            h.kind = HyperplaneKind::full;
        else
            h.kind = HyperplaneKind::empty;
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace

std::vector<Hyperplane<Rat>> hyperplanes(const HypertoricData& data) {
    return cut_hyperplanes(data, real_solution_space(data));
}

std::vector<Hyperplane<GaussRat>> walls(const HypertoricData& data) {
    return cut_hyperplanes(data, complex_solution_space(data));
}

bool is_regular_value(const HypertoricData& data, const GaussRatVector& b) {
    return active_walls(data, b).empty();
}

std::vector<int> active_walls(const HypertoricData& data, const GaussRatVector& b) {
    require_on_base(data, b);
    std::vector<int> active;
    for (Index i = 0; i < data.d; ++i)
        if (b(i).is_zero()) active.push_back(static_cast<int>(i));
    return active;
}

Stratum<Rat> real_stratum(const HypertoricData& data, const std::vector<int>& S) {
    Stratum<Rat> st;
    st.active = S;
    IntMatrix M = active_normal_rows(data, S);
    RatVector base = real_solution_space(data).base;
    RatVector rhs(static_cast<Index>(S.size()));
    for (size_t r = 0; r < S.size(); ++r) rhs(static_cast<Index>(r)) = -base(S[r]);
    auto t = rational_solve(M, rhs);
    st.feasible = t.has_value();
    st.flat_directions = integer_kernel_basis(M);
    st.flat_dim = data.n - rank(M);
    if (t) st.flat_base = *t;
    return st;
}

Stratum<GaussRat> complex_stratum(const HypertoricData& data, const std::vector<int>& S) {
    Stratum<GaussRat> st;
    st.active = S;
    IntMatrix M = active_normal_rows(data, S);
    GaussRatVector base = complex_solution_space(data).base;
    RatVector rhs_re(static_cast<Index>(S.size())), rhs_im(static_cast<Index>(S.size()));
    for (size_t r = 0; r < S.size(); ++r) {
        rhs_re(static_cast<Index>(r)) = -base(S[r]).re;
        rhs_im(static_cast<Index>(r)) = -base(S[r]).im;
    }
    auto t_re = rational_solve(M, rhs_re);
    auto t_im = rational_solve(M, rhs_im);
    st.feasible = t_re.has_value() && t_im.has_value();
    st.flat_directions = integer_kernel_basis(M);
    st.flat_dim = data.n - rank(M);
    if (st.feasible) st.flat_base = gauss_join(*t_re, *t_im);
    return st;
}

namespace detail {

namespace {

// Scale to integer entries with gcd 1; feasible set unchanged.
void normalize_constraint(LinearConstraint& c) {
    Int lcm_den = 1;
    auto fold = [&](const Rat& q) {
        Int den = denominator(q);
        lcm_den = lcm(lcm_den, den);
    };
    for (Index i = 0; i < c.coeffs.size(); ++i) fold(c.coeffs(i));
    fold(c.rhs);
    Rat scale(lcm_den, 1);
    Int g = 0;
    auto scaled = [&](Rat& q) {
        q *= scale;
        g = gcd(g, numerator(q));
    };
    for (Index i = 0; i < c.coeffs.size(); ++i) scaled(c.coeffs(i));
    scaled(c.rhs);
    g = abs(g);
    if (g > 1) {
        Rat inv(Int(1), g);
        for (Index i = 0; i < c.coeffs.size(); ++i) c.coeffs(i) *= inv;
        c.rhs *= inv;
    }
}

}  // namespace

bool fm_feasible(std::vector<LinearConstraint> cons, Index nvars) {
    for (Index v = nvars - 1; v >= 0; --v) {
        std::vector<LinearConstraint> pos, neg, next;
        for (auto& c : cons) {
            int s = rat_sign(c.coeffs(v));
            if (s > 0)
                pos.push_back(std::move(c));
            else if (s < 0)
                neg.push_back(std::move(c));
            else
                next.push_back(std::move(c));
        }
        std::map<std::vector<Rat>, size_t> seen;
        auto push_unique = [&](LinearConstraint nc) {
            normalize_constraint(nc);
            std::vector<Rat> key(nc.coeffs.data(), nc.coeffs.data() + nc.coeffs.size());
            key.push_back(nc.rhs);
            auto [it, fresh] = seen.emplace(std::move(key), next.size());
            if (fresh)
                next.push_back(std::move(nc));
            else
                next[it->second].strict = next[it->second].strict || nc.strict;
        };
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                LinearConstraint nc;
                Rat lp = -q.coeffs(v), lq = p.coeffs(v);
                nc.coeffs = lp * p.coeffs + lq * q.coeffs;
                nc.rhs = lp * p.rhs + lq * q.rhs;
                nc.strict = p.strict || q.strict;
                push_unique(std::move(nc));
            }
        }
        cons = std::move(next);
    }
    for (const auto& c : cons) {
        if (c.strict ? !(c.rhs < 0) : !(c.rhs <= 0)) return false;
    }
    return true;
}

}  // namespace detail

namespace {

// Strict half-space sign * (<u_i, t> + offset) > 0 in parameter coordinates.
detail::LinearConstraint chamber_constraint(const Hyperplane<Rat>& h, int sign) {
    detail::LinearConstraint c;
    c.coeffs = h.normal.cast<Rat>() * Rat(sign);
    c.rhs = -Rat(sign) * h.offset;
    c.strict = true;
    return c;
}

bool recession_cone_trivial(const std::vector<Hyperplane<Rat>>& hp,
                            const std::vector<int>& signs, Index n) {
    if (n == 0) return true;
    std::vector<detail::LinearConstraint> cone;
    for (const auto& h : hp) {
        if (h.kind != HyperplaneKind::proper) continue;
        detail::LinearConstraint c;
        c.coeffs = h.normal.cast<Rat>() * Rat(signs[static_cast<size_t>(h.index)]);
        c.rhs = 0;
        c.strict = false;
        cone.push_back(std::move(c));
    }
    for (Index j = 0; j < n; ++j) {
        for (int s : {1, -1}) {
            auto probe = cone;
            detail::LinearConstraint c;
            c.coeffs = RatVector::Zero(n);
            c.coeffs(j) = s;
            c.rhs = 0;
            c.strict = true;
            probe.push_back(std::move(c));
            if (detail::fm_feasible(std::move(probe), n)) return false;
        }
    }
    return true;
}

std::vector<Chamber> line_chambers(const std::vector<Hyperplane<Rat>>& hp) {
    std::vector<Rat> points;
    for (const auto& h : hp) {
        if (h.kind != HyperplaneKind::proper) continue;
        points.push_back(-h.offset / Rat(h.normal(0)));
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<Rat> witnesses;
    if (points.empty()) {
        witnesses.push_back(Rat(0));
    } else {
        witnesses.push_back(points.front() - 1);
        for (size_t k = 0; k + 1 < points.size(); ++k)
            witnesses.push_back((points[k] + points[k + 1]) / 2);
        witnesses.push_back(points.back() + 1);
    }

    std::vector<Chamber> out;
    for (size_t k = 0; k < witnesses.size(); ++k) {
        Chamber ch;
        ch.signs.resize(hp.size());
        for (const auto& h : hp) {
            Rat value = h.kind == HyperplaneKind::proper
                            ? Rat(h.normal(0)) * witnesses[k] + h.offset
                            : h.offset;
            int s = rat_sign(value);
            if (s == 0) return {};  // only possible via a full hyperplane
            ch.signs[static_cast<size_t>(h.index)] = s;
        }
        ch.bounded = !points.empty() && k > 0 && k + 1 < witnesses.size();
        out.push_back(std::move(ch));
    }
    return out;
}

}  // namespace

std::vector<Chamber> chambers(const HypertoricData& data) {
    if (data.n > 3)
        throw DimensionTooLargeError("chambers: sign enumeration capped at n <= 3");
    auto hp = hyperplanes(data);
    for (const auto& h : hp)
        if (h.kind == HyperplaneKind::full) return {};  // complement is empty
    if (data.n == 1) return line_chambers(hp);

    struct Partial {
        std::vector<int> signs;
        std::vector<detail::LinearConstraint> cons;
    };
    std::vector<Partial> partials(1);
    partials[0].signs.assign(static_cast<size_t>(data.d), 0);
    for (const auto& h : hp) {
        if (h.kind == HyperplaneKind::empty) {
            int s = rat_sign(h.offset);
            for (auto& p : partials) p.signs[static_cast<size_t>(h.index)] = s;
            continue;
        }
        std::vector<Partial> next;
        for (const auto& p : partials) {
            for (int s : {1, -1}) {
                auto cons = p.cons;
                cons.push_back(chamber_constraint(h, s));
                if (!detail::fm_feasible(cons, data.n)) continue;
                Partial q;
                q.signs = p.signs;
                q.signs[static_cast<size_t>(h.index)] = s;
                q.cons = std::move(cons);
                next.push_back(std::move(q));
            }
        }
        partials = std::move(next);
    }

    std::vector<Chamber> out;
    out.reserve(partials.size());
    for (const auto& p : partials) {
        Chamber ch;
        ch.signs = p.signs;
        ch.bounded = recession_cone_trivial(hp, p.signs, data.n);
        out.push_back(std::move(ch));
    }
    return out;
}

std::vector<FixedPoint> fixed_points(const HypertoricData& data) {
    std::vector<FixedPoint> out;
    if (data.n == 0) return out;
    auto hp = hyperplanes(data);
    std::vector<int> proper;
    for (const auto& h : hp)
        if (h.kind == HyperplaneKind::proper) proper.push_back(h.index);
    const Index n = data.n;
    if (static_cast<Index>(proper.size()) < n) return out;

    RatVector base = real_solution_space(data).base;
    std::vector<RatVector> found;

    std::vector<int> pick(static_cast<size_t>(n));
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
        if (pos == pick.size()) {
            std::vector<int> subset(pick.begin(), pick.end());
            IntMatrix M = active_normal_rows(data, subset);
            if (determinant(M) == 0) return;
            RatVector rhs(n);
            for (Index r = 0; r < n; ++r) rhs(r) = -base(subset[static_cast<size_t>(r)]);
            auto t = rational_solve(M, rhs);
            if (!t) return;
            for (const auto& seen : found)
                if (seen == *t) return;
            found.push_back(*t);
            return;
        }
        for (size_t j = start; j < proper.size(); ++j) {
            pick[pos] = proper[j];
            rec(pos + 1, j + 1);
        }
    };
    rec(0, 0);

    std::sort(found.begin(), found.end(), [](const RatVector& a, const RatVector& b) {
        for (Index i = 0; i < a.size(); ++i) {
            if (a(i) != b(i)) return a(i) < b(i);
        }
        return false;
    });

    for (auto& t : found) {
        FixedPoint fp;
        fp.t = t;
        for (const auto& h : hp) {
            Rat value = h.offset;
            for (Index j = 0; j < n; ++j) value += Rat(h.normal(j)) * t(j);
            if (value == 0) fp.active.push_back(h.index);
        }
        out.push_back(std::move(fp));
    }
    return out;
}

RatVector to_parameter(const HypertoricData& data, const RatVector& v) {
    if (v.size() != data.d) throw std::invalid_argument("point must have length d");
    RatVector base = real_solution_space(data).base;
    IntMatrix Ut = data.U.transpose();
    RatVector rhs = v - base;
    auto t = rational_solve(Ut, rhs);
    if (!t) throw NotOnBaseError("point does not lie on the real solution space");
    return *t;
}

GaussRatVector to_parameter(const HypertoricData& data, const GaussRatVector& v) {
    if (v.size() != data.d) throw std::invalid_argument("point must have length d");
    GaussRatVector base = complex_solution_space(data).base;
    IntMatrix Ut = data.U.transpose();
    RatVector rhs_re(data.d), rhs_im(data.d);
    for (Index i = 0; i < data.d; ++i) {
        rhs_re(i) = v(i).re - base(i).re;
        rhs_im(i) = v(i).im - base(i).im;
    }
    auto t_re = rational_solve(Ut, rhs_re);
    auto t_im = rational_solve(Ut, rhs_im);
    if (!t_re || !t_im)
        throw NotOnBaseError("point does not lie on the complex solution space");
    return gauss_join(*t_re, *t_im);
}

}  // namespace hypertoric
