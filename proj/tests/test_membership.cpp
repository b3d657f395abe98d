#include <cmath>

#include <doctest.h>

#include "fuzzy/membership.hpp"
#include "test_support.hpp"

using fuzzy::eval_membership;
using fuzzy::Gaussian;
using fuzzy::MembershipFunction;
using fuzzy::Triangular;

TEST_CASE("triangular evaluates the piecewise-linear hat") {
    const MembershipFunction mf = Triangular{37.0, 38.0, 39.0};
    CHECK(eval_membership(mf, 38.0) == 1.0);
    CHECK(eval_membership(mf, 37.5) == 0.5);
    CHECK(eval_membership(mf, 38.5) == 0.5);
    CHECK(eval_membership(mf, 37.0) == 0.0);
    CHECK(eval_membership(mf, 39.0) == 0.0);
    CHECK(eval_membership(mf, 36.0) == 0.0);
    CHECK(eval_membership(mf, 42.0) == 0.0);
}

TEST_CASE("degenerate flanks act as shoulders") {
    const MembershipFunction left = Triangular{0.0, 0.0, 38.0};
    CHECK(eval_membership(left, 0.0) == 1.0);
    CHECK(eval_membership(left, 19.0) == 0.5);
    CHECK(eval_membership(left, 38.0) == 0.0);
    CHECK(eval_membership(left, -1.0) == 0.0);

    const MembershipFunction right = Triangular{38.0, 80.0, 80.0};
    CHECK(eval_membership(right, 80.0) == 1.0);
    CHECK(eval_membership(right, 59.0) == 0.5);
    CHECK(eval_membership(right, 38.0) == 0.0);
    CHECK(eval_membership(right, 81.0) == 0.0);
}

TEST_CASE("gaussian evaluates exp(-(x-m)^2 / (2k^2))") {
    const MembershipFunction mf = Gaussian{5.0, 1.2};
    CHECK(eval_membership(mf, 5.0) == 1.0);
    CHECK(eval_membership(mf, 6.2) == doctest::Approx(0.606531).epsilon(0.0).margin(1e-6));
    CHECK(eval_membership(mf, 3.8) == doctest::Approx(std::exp(-0.5)).margin(1e-9));
    CHECK(eval_membership(mf, 100.0) < 1e-300);
}

TEST_CASE("gaussian is symmetric about its center") {
    testsup::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const Gaussian g{rng.range(-50.0, 50.0), rng.range(0.05, 20.0)};
        const double d = rng.range(0.0, 60.0);
        const double up = eval_membership(MembershipFunction{g}, g.m + d);
        const double down = eval_membership(MembershipFunction{g}, g.m - d);
        CHECK(up == doctest::Approx(down).epsilon(1e-12));
    }
}

TEST_CASE("membership stays within [0, 1] for random curves and points") {
    testsup::Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        const MembershipFunction mf = testsup::random_mf(rng, -100.0, 100.0);
        const double x = rng.range(-300.0, 300.0);
        const double mu = eval_membership(mf, x);
        CHECK(mu >= 0.0);
        CHECK(mu <= 1.0);
    }
}

TEST_CASE("parameter validity") {
    CHECK(fuzzy::mf_params_valid(Triangular{0.0, 1.0, 2.0}));
    CHECK(fuzzy::mf_params_valid(Triangular{0.0, 0.0, 2.0}));
    CHECK_FALSE(fuzzy::mf_params_valid(Triangular{3.0, 1.0, 2.0}));
    CHECK_FALSE(fuzzy::mf_params_valid(Triangular{1.0, 1.0, 1.0}));
    CHECK(fuzzy::mf_params_valid(Gaussian{0.0, 0.5}));
    CHECK_FALSE(fuzzy::mf_params_valid(Gaussian{0.0, 0.0}));
    CHECK_FALSE(fuzzy::mf_params_valid(Gaussian{0.0, -1.0}));
}

TEST_CASE("support intersection with a universe") {
    CHECK(fuzzy::mf_support_intersects(Triangular{0.0, 5.0, 10.0}, 0.0, 10.0));
    CHECK(fuzzy::mf_support_intersects(Triangular{-5.0, 0.0, 1.0}, 0.0, 10.0));
    CHECK_FALSE(fuzzy::mf_support_intersects(Triangular{20.0, 25.0, 30.0}, 0.0, 10.0));
    CHECK_FALSE(fuzzy::mf_support_intersects(Triangular{10.0, 15.0, 20.0}, 0.0, 10.0));
    CHECK(fuzzy::mf_support_intersects(Gaussian{1000.0, 1.0}, 0.0, 10.0));
}
