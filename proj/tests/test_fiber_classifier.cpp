#include <doctest.h>

#include <random>
#include <set>

#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/fiber_classifier.hpp"
#include "test_support.hpp"

using namespace hypertoric;
using namespace hypertoric::testing;

namespace {

HypertoricData example_data() {
    return build(int_matrix({{1, 1, 0}, {1, 0, 1}}), rat_vector({"1/2", "1"}), gauss_zero(2));
}

// Ambient oracle for the set of feasible vanishing patterns on the fiber over
// b: a pattern Q is realized by a fiber point with (z_i, w_i) = (0, 0) for
// exactly the coordinates where both constraints allow it, decided by exact
// solving of the two restricted linear systems.
std::set<std::vector<int>> brute_force_patterns(const HypertoricData& data,
                                                const GaussRatVector& b) {
    std::set<std::vector<int>> out;
    const Eigen::Index d = data.d;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> Q;
        bool off_wall = false;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (mask & (1u << i)) {
                Q.push_back(static_cast<int>(i));
                if (!b(i).is_zero()) off_wall = true;  // y_i = z_i w_i != 0
            }
        }
        if (off_wall) continue;
        // Need x with A x = alpha and x_i = 0 on Q: solve on the complement.
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < d; ++i)
            if (!(mask & (1u << i))) keep.push_back(i);
        IntMatrix B(data.m, static_cast<Eigen::Index>(keep.size()));
        for (size_t j = 0; j < keep.size(); ++j)
            B.col(static_cast<Eigen::Index>(j)) = data.A.col(keep[j]);
        if (rational_solve(B, data.alpha).has_value()) out.insert(Q);
    }
    return out;
}

}  // namespace

TEST_SUITE("fiber_classifier") {

TEST_CASE("generic fiber of the worked example") {
    auto data = example_data();
    GaussRatVector b = gauss_vector({"1", "-1", "-1"}, {"0", "0", "0"});
    auto fd = classify_fiber(data, b);
    CHECK(fd.regular);
    REQUIRE(fd.generic_model.has_value());
    CHECK(fd.generic_model->torus_rank == 1);
    CHECK(fd.generic_model->affine_rank == 1);
    CHECK(fd.shrink_strata.empty());
    CHECK(fd.fixed_loci.empty());
}

TEST_CASE("central fiber of the worked example") {
    auto data = example_data();
    auto fd = classify_fiber(data, gauss_zero(3));
    CHECK(!fd.regular);
    REQUIRE(fd.shrink_strata.size() == 3);
    Rat expected_t[3] = {Rat(0), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 3; ++i) {
        const auto& sh = fd.shrink_strata[static_cast<size_t>(i)];
        CHECK(sh.active == std::vector<int>{i});
        CHECK(sh.shrunk_torus_rank == 1);
        CHECK(sh.flat.flat_dim == 0);
        CHECK(sh.flat.flat_base(0) == expected_t[i]);
    }
    // Singletons are full-rank loci for n = 1: three fixed points.
    CHECK(fd.fixed_loci.size() == 3);
}

TEST_CASE("central fiber of the free quaternionic line") {
    IntMatrix A(0, 1);
    auto data = build(A, RatVector(0), GaussRatVector(0));
    auto fd = classify_fiber(data, gauss_zero(1));
    CHECK(!fd.regular);
    REQUIRE(fd.shrink_strata.size() == 1);
    CHECK(fd.shrink_strata[0].active == std::vector<int>{0});
    CHECK(fd.shrink_strata[0].shrunk_torus_rank == 1);
    CHECK(fd.shrink_strata[0].flat.flat_dim == 0);
}

TEST_CASE("classification agrees with the regular-value test") {
    auto data = example_data();
    auto space = complex_solution_space(data);
    for (int k = -2; k <= 2; ++k) {
        GaussRatVector t(1);
        t(0) = GaussRat(Rat(k), Rat(k, 7));
        GaussRatVector b = space.at(t);
        CHECK(classify_fiber(data, b).regular == is_regular_value(data, b));
    }
}

TEST_CASE("single-wall fibers shrink exactly one circle") {
    // d = 3, n = 2: walls are lines through the origin in the t-plane.
    auto data = build(int_matrix({{1, 1, 1}}), rat_vector({"1"}), gauss_zero(1));
    REQUIRE(data.n == 2);
    auto space = complex_solution_space(data);
    // Find a point on exactly one wall.
    GaussRatVector t(2);
    t(0) = GaussRat(Rat(0), Rat(0));
    t(1) = GaussRat(Rat(1), Rat(0));
    GaussRatVector b = space.at(t);
    auto active = active_walls(data, b);
    REQUIRE(active.size() == 1);
    auto fd = classify_fiber(data, b);
    REQUIRE(fd.shrink_strata.size() == 1);
    CHECK(fd.shrink_strata[0].active == active);
    CHECK(fd.shrink_strata[0].shrunk_torus_rank == 1);
    // The flat is the full hyperplane H_i: dimension n - 1.
    CHECK(fd.shrink_strata[0].flat.flat_dim == 1);
    CHECK(fd.fixed_loci.empty());
}

TEST_CASE("rank monotonicity along nested strata") {
    std::mt19937 rng(606);
    int kept = 0;
    while (kept < 10) {
        Eigen::Index d = 2 + static_cast<Eigen::Index>(rng() % 5);
        Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % d);
        if (m > d) continue;
        IntMatrix A = random_int_matrix(rng, m, d, -2, 2);
        HypertoricData data;
        try {
            data = build(A, random_rat_vector(rng, m), gauss_zero(m));
        } catch (const Error&) {
            continue;
        }
        ++kept;
        auto fd = classify_fiber(data, gauss_zero(d));
        for (const auto& s1 : fd.shrink_strata) {
            for (const auto& s2 : fd.shrink_strata) {
                if (std::includes(s2.active.begin(), s2.active.end(), s1.active.begin(),
                                  s1.active.end()))
                    CHECK(s1.shrunk_torus_rank <= s2.shrunk_torus_rank);
            }
        }
    }
}

TEST_CASE("classifier strata match ambient brute force") {
    std::mt19937 rng(909);
    int kept = 0;
    while (kept < 10) {
        Eigen::Index d = 2 + static_cast<Eigen::Index>(rng() % 6);  // up to 7
        Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % d);
        if (m > d) continue;
        IntMatrix A = random_int_matrix(rng, m, d, -2, 2);
        HypertoricData data;
        try {
            data = build(A, random_rat_vector(rng, m), gauss_zero(m));
        } catch (const Error&) {
            continue;
        }
        ++kept;
        auto fd = classify_fiber(data, gauss_zero(d));
        std::set<std::vector<int>> classified;
        for (const auto& sh : fd.shrink_strata) classified.insert(sh.active);
        CHECK(classified == brute_force_patterns(data, gauss_zero(d)));
    }
}

TEST_CASE("isotropy ranks of the worked example") {
    auto data = example_data();
    CHECK(isotropy_rank(data, {0}) == 1);
    CHECK(isotropy_rank(data, {}) == 0);
    CHECK(isotropy_rank(data, {0, 1, 2}) == 1);  // all normals parallel
}

TEST_CASE("extended core of the worked example") {
    auto data = example_data();
    auto core = extended_core(data);
    REQUIRE(core.size() == 4);
    CHECK(core[0].label == "C");
    CHECK(core[1].label == "CP1");
    CHECK(core[2].label == "CP1");
    CHECK(core[3].label == "C");
    // Sequential intersection pattern.
    CHECK(core[0].neighbors == std::vector<int>{1});
    CHECK(core[1].neighbors == std::vector<int>{0, 2});
    CHECK(core[2].neighbors == std::vector<int>{1, 3});
    CHECK(core[3].neighbors == std::vector<int>{2});
}

TEST_CASE("extended core of the diagonal circle") {
    auto data = build(int_matrix({{1, 1}}), rat_vector({"1"}), gauss_zero(1));
    auto core = extended_core(data);
    REQUIRE(core.size() == 3);
    CHECK(core[0].label == "C");
    CHECK(core[1].label == "CP1");
    CHECK(core[2].label == "C");
}

TEST_CASE("extended core preconditions") {
    auto data = build(int_matrix({{1, 1}}), rat_vector({"1"}),
                      gauss_vector({"1"}, {"0"}));
    CHECK_THROWS_AS(extended_core(data), BetaNotZeroError);

    IntMatrix A(0, 4);
    auto big = build(A, RatVector(0), GaussRatVector(0));
    CHECK_THROWS_AS(extended_core(big), DimensionTooLargeError);
}

TEST_CASE("euler count for one-dimensional cores") {
    std::mt19937 rng(5150);
    int kept = 0;
    while (kept < 10) {
        Eigen::Index d = 2 + static_cast<Eigen::Index>(rng() % 4);
        Eigen::Index m = d - 1;  // n = 1
        IntMatrix A = random_int_matrix(rng, m, d, -2, 2);
        HypertoricData data;
        try {
            data = build(A, random_rat_vector(rng, m), gauss_zero(m));
        } catch (const Error&) {
            continue;
        }
        bool all_proper = true;
        for (const auto& h : hyperplanes(data))
            if (h.kind != HyperplaneKind::proper) all_proper = false;
        if (!all_proper) continue;
        ++kept;
        CHECK(extended_core(data).size() == fixed_points(data).size() + 1);
    }
}

}  // TEST_SUITE

TEST_SUITE("fiber_classifier") {

TEST_CASE("zero-dimensional quotients classify fibers as point sets") {
    // m = d: the residual torus is trivial and the base space is one point.
    auto data = build(int_matrix({{1, 0}, {0, 1}}), rat_vector({"1", "1"}),
                      gauss_vector({"2", "3"}, {"0", "0"}));
    REQUIRE(data.n == 0);
    GaussRatVector b = gauss_vector({"2", "3"}, {"0", "0"});
    auto fd = classify_fiber(data, b);
    CHECK(fd.regular);
    CHECK(fd.generic_model->torus_rank == 0);

    auto zero = build(int_matrix({{1, 0}, {0, 1}}), rat_vector({"1", "1"}), gauss_zero(2));
    auto fd0 = classify_fiber(zero, gauss_zero(2));
    CHECK(!fd0.regular);
    for (const auto& sh : fd0.shrink_strata) CHECK(sh.shrunk_torus_rank == 0);

    auto core = extended_core(zero);
    REQUIRE(core.size() == 1);
    CHECK(core[0].bounded);
}

TEST_CASE("nonzero beta uses the same shrinking rule") {
    // beta = (1, 0): the first wall pair stays away from the second.
    auto data = build(int_matrix({{1, 1, 0}, {1, 0, 1}}), rat_vector({"1/2", "1"}),
                      gauss_vector({"1", "0"}, {"0", "0"}));
    auto space = complex_solution_space(data);
    // Find the wall of coordinate 0 and take its intersection point.
    auto st = complex_stratum(data, {0});
    REQUIRE(st.feasible);
    GaussRatVector b = space.at(st.flat_base);
    REQUIRE(b(0).is_zero());
    auto fd = classify_fiber(data, b);
    CHECK(!fd.regular);
    REQUIRE(!fd.shrink_strata.empty());
    CHECK(fd.shrink_strata[0].active == std::vector<int>{0});
    CHECK(fd.shrink_strata[0].shrunk_torus_rank == 1);
}

TEST_CASE("orbifold data still classifies and builds a core") {
    // ker A spanned by (1, -2): not unimodular, combinatorics still run.
    auto data = build(int_matrix({{2, 1}}), rat_vector({"1"}), gauss_zero(1));
    CHECK(!check_parameter_regularity(data).unimodular);
    auto fd = classify_fiber(data, gauss_zero(2));
    CHECK(!fd.regular);
    auto core = extended_core(data);
    CHECK(core.size() >= 2);
}

}  // TEST_SUITE
