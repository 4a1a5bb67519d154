#include "hypertoric/numeric_verifier.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "hypertoric/exact_linalg.hpp"

namespace hypertoric {

namespace {

using Index = Eigen::Index;
constexpr double kRankThreshold = 1e-8;
constexpr double kIsotropyThreshold = 1e-9;
constexpr double kSamplerTolerance = 1e-10;

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int threads = hw > 0 ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("HYPERTORIC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < threads) threads = cap;
    }
    return threads;
}

// Runs fn(0..count-1); results must be written to per-index slots so that
// reductions stay order-independent.
void parallel_for(Index count, const std::function<void(Index)>& fn) {
    int threads = std::min<Index>(thread_budget(), count);
    if (threads <= 1) {
        for (Index i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<Index> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            Index i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

Eigen::MatrixXd orbit_field_matrix(const HypertoricData& data, const FlatPoint& p) {
    Eigen::MatrixXd F(4 * data.d, data.m);
    for (Index k = 0; k < data.m; ++k) {
        Eigen::VectorXd a = data.A.row(k).transpose().cast<double>();
        F.col(k) = to_real_coords(torus_field(p, a));
    }
    return F;
}

Eigen::MatrixXd residual_field_matrix(const HypertoricData& data, const IntMatrix& section,
                                      const FlatPoint& p) {
    Eigen::MatrixXd F(4 * data.d, data.n);
    for (Index j = 0; j < data.n; ++j) {
        Eigen::VectorXd a = section.col(j).cast<double>();
        F.col(j) = to_real_coords(torus_field(p, a));
    }
    return F;
}

// Orthonormal basis of the column span, singular values below a relative
// threshold discarded.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& M) {
    if (M.cols() == 0) return Eigen::MatrixXd(M.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
    double top = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    double thresh = 1e-12 * std::max(1.0, top);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh) ++r;
    return svd.matrixU().leftCols(r);
}

RatVector exact_target(const HypertoricData& data, const RatVector& t) {
    RatVector x = real_solution_space(data).base;
    for (Index i = 0; i < data.d; ++i)
        for (Index j = 0; j < data.n; ++j) x(i) += Rat(data.U(j, i)) * t(j);
    return x;
}

double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace

IntMatrix phase_section(const HypertoricData& data) {
    if (data.n == 0) return IntMatrix(data.d, 0);
    auto snf = smith_normal_form(data.U);
    // U = L^-1 [I 0] R^-1, so B = R [I; 0] L satisfies U B = I.
    IntMatrix B = snf.R.leftCols(data.n) * snf.L;
    IntMatrix check = data.U * B;
    if (check != IntMatrix::Identity(data.n, data.n))
        throw Error("phase_section: section construction failed");
    return B;
}

FiberSample sample_fiber(const HypertoricData& data, const GaussRatVector& b,
                         const RatVector& t, const Eigen::VectorXd& phase_angles) {
    active_walls(data, b);  // validates A b = beta
    if (t.size() != data.n || phase_angles.size() != data.n)
        throw std::invalid_argument("sample_fiber: t and phases must have length n");

    RatVector x_exact = exact_target(data, t);
    FiberSample sample;
    sample.x.resize(data.d);
    sample.y_target.resize(data.d);
    sample.point.z.resize(data.d);
    sample.point.w.resize(data.d);

    for (Index i = 0; i < data.d; ++i) {
        double x = to_double(x_exact(i));
        std::complex<double> y = to_complex(b(i));
        sample.x(i) = x;
        sample.y_target(i) = y;
        if (b(i).is_zero()) {
            sample.point.z(i) = std::sqrt(std::max(2.0 * x, 0.0));
            sample.point.w(i) = std::sqrt(std::max(-2.0 * x, 0.0));
        } else {
            double s = x + std::sqrt(x * x + std::norm(y));
            double r = std::sqrt(s);
            sample.point.z(i) = r;
            sample.point.w(i) = y / r;
        }
    }

    // Free phases act through the integer section; the leftover gauge freedom
    // sits in the subtorus orbit and is fixed to zero.
    Eigen::VectorXcd zeta = Eigen::VectorXcd::Ones(data.d);
    if (data.n > 0) {
        Eigen::VectorXd phi = phase_section(data).cast<double>() * phase_angles;
        for (Index i = 0; i < data.d; ++i) zeta(i) = std::polar(1.0, phi(i));
        sample.point = act(sample.point, zeta);
    }
    sample.phases = zeta;

    auto mv = evaluate(data, sample.point);
    for (Index i = 0; i < data.d; ++i) {
        double scale = 1.0 + std::abs(sample.y_target(i));
        if (std::abs(mv.y(i) - sample.y_target(i)) > kSamplerTolerance * scale)
            throw InfeasibleTargetError("sample_fiber: complex residual too large");
    }
    Eigen::VectorXd alpha = Eigen::VectorXd(data.m);
    for (Index k = 0; k < data.m; ++k) alpha(k) = to_double(data.alpha(k));
    if (data.m > 0 && (mv.mu_r - alpha).cwiseAbs().maxCoeff() >
                          kSamplerTolerance * (1.0 + alpha.cwiseAbs().maxCoeff()))
        throw InfeasibleTargetError("sample_fiber: real residual too large");
    return sample;
}

NumericIsotropy numeric_isotropy(const HypertoricData& data, const FlatPoint& p) {
    NumericIsotropy iso;
    iso.gap = infinity();
    if (data.n == 0) return iso;
    Eigen::MatrixXd orbit = span_basis(orbit_field_matrix(data, p));
    Eigen::MatrixXd G = residual_field_matrix(data, phase_section(data), p);
    if (orbit.cols() > 0) G -= orbit * (orbit.transpose() * G);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
        double s = svd.singularValues()(i);
        if (s < kIsotropyThreshold)
            ++iso.rank;
        else
            iso.gap = std::min(iso.gap, s);
    }
    return iso;
}

std::vector<TangentVector> horizontal_fiber_frame(const HypertoricData& data,
                                                  const FiberSample& sample) {
    Eigen::MatrixXd J = constraint_jacobian(data, sample.point, sample.y_target);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    double top = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    double thresh = kRankThreshold * std::max(1.0, top);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh) ++r;
    Eigen::MatrixXd null_basis = svd.matrixV().rightCols(4 * data.d - r);

    Eigen::MatrixXd orbit = orbit_field_matrix(data, sample.point);
    Eigen::MatrixXd frame_basis;
    if (orbit.cols() == 0) {
        frame_basis = null_basis;
    } else {
        // Coordinates of kernel vectors orthogonal to the orbit span.
        Eigen::MatrixXd C = orbit.transpose() * null_basis;  // m x k
        Eigen::JacobiSVD<Eigen::MatrixXd> csvd(C, Eigen::ComputeFullV);
        double ctop = csvd.singularValues().size() > 0 ? csvd.singularValues()(0) : 0.0;
        double cthresh = kRankThreshold * std::max(1.0, ctop);
        Index cr = 0;
        for (Index i = 0; i < csvd.singularValues().size(); ++i)
            if (csvd.singularValues()(i) > cthresh) ++cr;
        frame_basis = null_basis * csvd.matrixV().rightCols(null_basis.cols() - cr);
    }

    if (frame_basis.cols() != 2 * data.n)
        throw RankDropError("horizontal_fiber_frame: frame dimension is not 2n");
    if (frame_basis.cols() > 0) {
        double residual = (J * frame_basis).cwiseAbs().maxCoeff();
        if (residual > kRankThreshold * std::max(1.0, top))
            throw RankDropError("horizontal_fiber_frame: kernel residual too large");
    }

    std::vector<TangentVector> frame;
    frame.reserve(static_cast<size_t>(frame_basis.cols()));
    for (Index c = 0; c < frame_basis.cols(); ++c)
        frame.push_back(from_real_coords(frame_basis.col(c)));
    return frame;
}

VerificationReport verify_lagrangian(const HypertoricData& data, const GaussRatVector& b,
                                     int n_samples, double tol, unsigned seed) {
    if (n_samples < 1) throw std::invalid_argument("verify_lagrangian: need n_samples >= 1");
    if (!is_regular_value(data, b))
        throw Error("verify_lagrangian: b lies on a wall, regular fiber required");

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-24, 24);
    std::uniform_int_distribution<int> den(1, 8);
    std::uniform_real_distribution<double> angle(0.0, 6.28318530717958648);
    std::vector<RatVector> targets;
    std::vector<Eigen::VectorXd> angles;
    for (int s = 0; s < n_samples; ++s) {
        RatVector t(data.n);
        Eigen::VectorXd psi(data.n);
        for (Index j = 0; j < data.n; ++j) {
            t(j) = Rat(num(rng), den(rng));
            psi(j) = angle(rng);
        }
        targets.push_back(std::move(t));
        angles.push_back(std::move(psi));
    }

    std::vector<double> omega_ff(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> omega_vx(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> residuals(static_cast<size_t>(n_samples), 0.0);
    IntMatrix section = phase_section(data);

    parallel_for(n_samples, [&](Index s) {
        auto sample = sample_fiber(data, b, targets[static_cast<size_t>(s)],
                                   angles[static_cast<size_t>(s)]);
        auto frame = horizontal_fiber_frame(data, sample);
        double ff = 0.0;
        for (size_t a = 0; a < frame.size(); ++a)
            for (size_t c = a + 1; c < frame.size(); ++c)
                ff = std::max(ff, std::abs(omega_c(frame[a], frame[c])));
        omega_ff[static_cast<size_t>(s)] = ff;

        // Orbit vectors of the residual torus, made horizontal.
        Eigen::MatrixXd orbit = span_basis(orbit_field_matrix(data, sample.point));
        Eigen::MatrixXd R = residual_field_matrix(data, section, sample.point);
        if (orbit.cols() > 0) R -= orbit * (orbit.transpose() * R);
        double vx = 0.0;
        for (Index j = 0; j < R.cols(); ++j) {
            double nrm = R.col(j).norm();
            if (nrm < 1e-12) continue;
            TangentVector V = from_real_coords(Eigen::VectorXd(R.col(j) / nrm));
            for (const auto& X : frame) vx = std::max(vx, std::abs(omega_c(V, X)));
        }
        omega_vx[static_cast<size_t>(s)] = vx;

        auto mv = evaluate(data, sample.point);
        residuals[static_cast<size_t>(s)] = (mv.x - sample.x).cwiseAbs().maxCoeff();
    });

    VerificationReport report;
    report.n_samples = n_samples;
    report.tolerance = tol;
    report.min_isotropy_gap = infinity();
    for (int s = 0; s < n_samples; ++s) {
        report.max_omega_c = std::max(report.max_omega_c, omega_ff[static_cast<size_t>(s)]);
        report.max_omega_vx = std::max(report.max_omega_vx, omega_vx[static_cast<size_t>(s)]);
        report.max_sampler_residual =
            std::max(report.max_sampler_residual, residuals[static_cast<size_t>(s)]);
    }
    report.per_sample.assign(omega_ff.begin(), omega_ff.end());
    report.passed = report.jacobian_rank_ok && report.max_omega_c <= tol &&
                    report.max_omega_vx <= tol;
    return report;
}

VerificationReport verify_generic_fiber(const HypertoricData& data, const GaussRatVector& b,
                                        const std::vector<Rat>& axis) {
    if (!is_regular_value(data, b))
        throw Error("verify_generic_fiber: b lies on a wall, regular fiber required");
    if (axis.empty()) throw std::invalid_argument("verify_generic_fiber: empty grid axis");

    // Product grid axis^n.
    std::vector<RatVector> grid;
    RatVector t(data.n);
    std::function<void(Index)> expand = [&](Index j) {
        if (j == data.n) {
            grid.push_back(t);
            return;
        }
        for (const Rat& v : axis) {
            t(j) = v;
            expand(j + 1);
        }
    };
    expand(0);

    const Index count = static_cast<Index>(grid.size());
    std::vector<double> residuals(grid.size(), 0.0);
    std::vector<double> gaps(grid.size(), 0.0);
    std::vector<char> free_ok(grid.size(), 0), frame_ok(grid.size(), 0);

    parallel_for(count, [&](Index g) {
        const RatVector& tg = grid[static_cast<size_t>(g)];
        auto sample = sample_fiber(data, b, tg, Eigen::VectorXd::Zero(data.n));
        // Surjectivity witness: the sampler hits the grid target exactly.
        auto mv = evaluate(data, sample.point);
        double scale = 1.0 + sample.x.cwiseAbs().maxCoeff();
        residuals[static_cast<size_t>(g)] =
            (mv.x - sample.x).cwiseAbs().maxCoeff() / scale;
        auto iso = numeric_isotropy(data, sample.point);
        free_ok[static_cast<size_t>(g)] = iso.rank == 0;
        gaps[static_cast<size_t>(g)] = iso.gap;
        auto frame = horizontal_fiber_frame(data, sample);
        frame_ok[static_cast<size_t>(g)] =
            static_cast<Index>(frame.size()) == 2 * data.n;
    });

    VerificationReport report;
    report.n_samples = static_cast<int>(count);
    report.tolerance = kSamplerTolerance;
    report.min_isotropy_gap = infinity();
    for (Index g = 0; g < count; ++g) {
        report.max_sampler_residual =
            std::max(report.max_sampler_residual, residuals[static_cast<size_t>(g)]);
        report.min_isotropy_gap = std::min(report.min_isotropy_gap, gaps[static_cast<size_t>(g)]);
        report.freeness_ok = report.freeness_ok && free_ok[static_cast<size_t>(g)];
        report.jacobian_rank_ok = report.jacobian_rank_ok && frame_ok[static_cast<size_t>(g)];
    }
    report.per_sample.assign(residuals.begin(), residuals.end());
    report.passed = report.freeness_ok && report.jacobian_rank_ok &&
                    report.max_sampler_residual <= kSamplerTolerance;
    return report;
}

namespace {

// Point of the stratum flat avoiding the zero sets of every other active
// coordinate that is not identically zero on the flat.
RatVector generic_flat_witness(const HypertoricData& data, const std::vector<int>& active,
                               const ShrinkStratum& stratum) {
    const RatVector base = real_solution_space(data).base;
    const IntMatrix& D = stratum.flat.flat_directions;  // g x n rows
    const Index g = D.rows();
    auto x_at = [&](Index i, const RatVector& t) {
        Rat v = base(i);
        for (Index j = 0; j < data.n; ++j) v += Rat(data.U(j, i)) * t(j);
        return v;
    };
    for (int k = 0; k <= 64; ++k) {
        RatVector t = stratum.flat.flat_base;
        Rat c(1);
        for (Index r = 0; r < g; ++r) {
            c *= k;
            for (Index j = 0; j < data.n; ++j) t(j) += Rat(D(r, j)) * c;
        }
        bool ok = true;
        for (int i : active) {
            if (std::find(stratum.active.begin(), stratum.active.end(), i) !=
                stratum.active.end())
                continue;
            // Skip coordinates identically zero on the flat.
            bool constant_zero = x_at(i, stratum.flat.flat_base) == 0;
            if (constant_zero) {
                for (Index r = 0; r < g && constant_zero; ++r) {
                    Rat dv = 0;
                    for (Index j = 0; j < data.n; ++j) dv += Rat(data.U(j, i)) * Rat(D(r, j));
                    if (dv != 0) constant_zero = false;
                }
            }
            if (constant_zero) continue;
            if (x_at(i, t) == 0) { ok = false; break; }
        }
        if (ok) return t;
    }
    throw Error("generic_flat_witness: no generic point found");
}

}  // namespace

VerificationReport verify_shrinking(const HypertoricData& data, const GaussRatVector& b) {
    std::vector<int> active = active_walls(data, b);
    if (active.empty())
        throw Error("verify_shrinking: b is a regular value, nothing shrinks");
    auto fd = classify_fiber(data, b);
    const RatVector base = real_solution_space(data).base;

    VerificationReport report;
    report.tolerance = kIsotropyThreshold;
    report.min_isotropy_gap = infinity();

    auto x_at = [&](Index i, const RatVector& t) {
        Rat v = base(i);
        for (Index j = 0; j < data.n; ++j) v += Rat(data.U(j, i)) * t(j);
        return v;
    };

    for (const auto& stratum : fd.shrink_strata) {
        RatVector t_on = generic_flat_witness(data, active, stratum);
        auto sample = sample_fiber(data, b, t_on, Eigen::VectorXd::Zero(data.n));
        auto iso = numeric_isotropy(data, sample.point);
        ++report.n_samples;
        report.per_sample.push_back(static_cast<double>(iso.rank));
        report.min_isotropy_gap = std::min(report.min_isotropy_gap, iso.gap);
        if (iso.rank != stratum.shrunk_torus_rank) report.isotropy_ok = false;

        if (stratum.shrunk_torus_rank == 0 || data.n == 0) continue;

        // Direction leaving every active hyperplane through the witness.
        std::vector<int> pinned;
        for (int i : active) {
            if (!data.U.col(i).isZero(0) && x_at(i, t_on) == 0) pinned.push_back(i);
        }
        RatVector v = RatVector::Zero(data.n);
        for (int k = 1; k <= 64 && !pinned.empty(); ++k) {
            Rat c(1);
            for (Index j = 0; j < data.n; ++j) {
                v(j) = c;
                c *= k;
            }
            bool ok = true;
            for (int i : pinned) {
                Rat dv = 0;
                for (Index j = 0; j < data.n; ++j) dv += Rat(data.U(j, i)) * v(j);
                if (dv == 0) { ok = false; break; }
            }
            if (ok) break;
            if (k == 64) throw Error("verify_shrinking: no transverse direction found");
        }
        RatVector t_off;
        bool found = false;
        for (int dd = 16; dd <= 80 && !found; ++dd) {
            RatVector cand = t_on + v * Rat(1, dd);
            found = true;
            for (int i : active) {
                if (!data.U.col(i).isZero(0) && x_at(i, cand) == 0) { found = false; break; }
            }
            if (found) t_off = cand;
        }
        if (!found) throw Error("verify_shrinking: no off-flat step found");

        auto off_sample = sample_fiber(data, b, t_off, Eigen::VectorXd::Zero(data.n));
        auto off_iso = numeric_isotropy(data, off_sample.point);
        ++report.n_samples;
        report.per_sample.push_back(static_cast<double>(off_iso.rank));
        report.min_isotropy_gap = std::min(report.min_isotropy_gap, off_iso.gap);
        if (off_iso.rank >= stratum.shrunk_torus_rank) report.isotropy_ok = false;
    }

    report.passed = report.isotropy_ok;
    return report;
}

}  // namespace hypertoric
