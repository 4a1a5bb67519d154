#include <doctest.h>

#include <random>

#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/hypertoric_data.hpp"
#include "test_support.hpp"

using namespace hypertoric;
using namespace hypertoric::testing;

TEST_SUITE("hypertoric_data") {

TEST_CASE("building the worked example") {
    IntMatrix A = int_matrix({{1, 1, 0}, {1, 0, 1}});
    auto data = build(A, rat_vector({"1/2", "1"}), gauss_zero(2));
    CHECK(data.m == 2);
    CHECK(data.n == 1);
    CHECK(data.d == 3);
    REQUIRE(data.U.rows() == 1);
    CHECK(data.U(0, 0) == 1);
    CHECK(data.U(0, 1) == -1);
    CHECK(data.U(0, 2) == -1);
    IntMatrix prod = data.A * data.U.transpose();
    CHECK(prod.isZero(0));
}

TEST_CASE("building a single-circle quotient") {
    auto data = build(int_matrix({{1, 1}}), rat_vector({"1"}), gauss_zero(1));
    CHECK(data.n == 1);
    CHECK(data.U(0, 0) == 1);
    CHECK(data.U(0, 1) == -1);
}

TEST_CASE("trivial subtorus leaves the full quaternionic space") {
    IntMatrix A(0, 1);
    auto data = build(A, RatVector(0), GaussRatVector(0));
    CHECK(data.m == 0);
    CHECK(data.n == 1);
    CHECK(data.U == IntMatrix::Identity(1, 1));
}

TEST_CASE("non-primitive and rank-deficient inputs are rejected") {
    CHECK_THROWS_AS(build(int_matrix({{2}}), rat_vector({"1"}), gauss_zero(1)),
                    NonPrimitiveSubtorusError);
    CHECK_THROWS_AS(build(int_matrix({{2, 4}}), rat_vector({"1"}), gauss_zero(1)),
                    NonPrimitiveSubtorusError);
    CHECK_THROWS_AS(build(int_matrix({{1, 1}, {1, 1}}), rat_vector({"1", "1"}), gauss_zero(2)),
                    RankDeficientError);
    CHECK_THROWS_AS(build(int_matrix({{1}, {0}}), rat_vector({"1", "0"}), gauss_zero(2)),
                    RankDeficientError);
}

TEST_CASE("example parameters are regular and unimodular") {
    auto data = build(int_matrix({{1, 1, 0}, {1, 0, 1}}), rat_vector({"1/2", "1"}), gauss_zero(2));
    auto report = check_parameter_regularity(data);
    CHECK(report.parameter_regular);
    CHECK(report.unimodular);
    CHECK(report.smooth());
    CHECK(report.offending_subsets.empty());
}

TEST_CASE("zero level of the diagonal circle is singular") {
    auto data = build(int_matrix({{1, 1}}), rat_vector({"0"}), gauss_zero(1));
    auto report = check_parameter_regularity(data);
    CHECK(!report.parameter_regular);
    CHECK(report.unimodular);
    REQUIRE(report.offending_subsets.size() == 1);
    CHECK(report.offending_subsets[0] == std::vector<int>{0, 1});
}

TEST_CASE("trivial subtorus is vacuously regular") {
    IntMatrix A(0, 2);
    auto data = build(A, RatVector(0), GaussRatVector(0));
    auto report = check_parameter_regularity(data);
    CHECK(report.parameter_regular);
    CHECK(report.unimodular);
}

TEST_CASE("non-unimodular normals downgrade to orbifold, with witnesses") {
    // ker A is spanned by (1, -2): a 1 x 1 minor of U equals -2.
    auto data = build(int_matrix({{2, 1}}), rat_vector({"1"}), gauss_zero(1));
    auto report = check_parameter_regularity(data);
    CHECK(!report.unimodular);
    CHECK(report.parameter_regular);
    CHECK(report.orbifold());
    CHECK(!report.offending_subsets.empty());
}

TEST_CASE("generic perturbation preserves regularity") {
    std::mt19937 rng(2024);
    int kept = 0;
    while (kept < 10) {
        Eigen::Index d = 2 + static_cast<Eigen::Index>(rng() % 4);
        Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % d);
        if (m >= d) m = d - 1;
        if (m < 1) continue;
        IntMatrix A = random_int_matrix(rng, m, d, -2, 2);
        HypertoricData data;
        try {
            data = build(A, random_rat_vector(rng, m), gauss_zero(m));
        } catch (const Error&) {
            continue;
        }
        if (!check_parameter_regularity(data).parameter_regular) continue;
        ++kept;
        // Perturb the levels by small random rationals with a large prime
        // denominator; regular stays regular.
        RatVector alpha2 = data.alpha;
        GaussRatVector beta2 = data.beta;
        std::uniform_int_distribution<int> num(1, 96);
        for (Eigen::Index k = 0; k < m; ++k) {
            alpha2(k) += Rat(num(rng), 97);
            beta2(k) = GaussRat(beta2(k).re + Rat(num(rng), 97), beta2(k).im + Rat(num(rng), 97));
        }
        auto data2 = build(A, alpha2, beta2);
        CHECK(check_parameter_regularity(data2).parameter_regular);
    }
}

TEST_CASE("kernel rows always span the saturated integer kernel") {
    std::mt19937 rng(4096);
    int kept = 0;
    while (kept < 20) {
        Eigen::Index d = 1 + static_cast<Eigen::Index>(rng() % 5);
        Eigen::Index m = static_cast<Eigen::Index>(rng() % (d + 1));
        IntMatrix A = random_int_matrix(rng, m, d, -3, 3);
        HypertoricData data;
        try {
            data = build(A, random_rat_vector(rng, m), gauss_zero(m));
        } catch (const Error&) {
            continue;
        }
        ++kept;
        CHECK(data.U.rows() == data.n);
        if (data.n > 0) CHECK(smith_normal_form(data.U).diagonal_all_ones());
        if (data.m > 0 && data.n > 0) {
            IntMatrix prod = data.A * data.U.transpose();
            CHECK(prod.isZero(0));
        }
    }
}

TEST_CASE("dimension cap is enforced") {
    IntMatrix A(0, 17);
    auto data = build(A, RatVector(0), GaussRatVector(0));
    CHECK_THROWS_AS(check_parameter_regularity(data), DimensionTooLargeError);
}

}  // TEST_SUITE
