#include "helmprop/index_profile.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace helmprop;

namespace {
const ParabolicProfile demo{1.45, 0.1, 25.0};
}

TEST(ParabolicProfile, DemoValues) {
    EXPECT_DOUBLE_EQ(parabolic_index_squared(0, 0, demo), 1.45);
    EXPECT_NEAR(parabolic_index_squared(25, 0, demo), 1.305, 1e-15);
    EXPECT_NEAR(parabolic_index_squared(20, 20, demo), 1.305, 1e-15);
}

TEST(ParabolicProfile, ClampedBeyondRadius) {
    const double floor = demo.n0_squared * (1.0 - demo.depth);
    for (double r : {25.0, 26.0, 30.0, 100.0, 1e6})
        EXPECT_EQ(parabolic_index_squared(r, 0.0, demo), floor);
    EXPECT_EQ(parabolic_index_squared(-40.0, 12.0, demo), floor);
}

TEST(ParabolicProfile, RadialSymmetry) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-30.0, 30.0), angle(0.0, 2.0 * std::numbers::pi);
    for (int t = 0; t < 200; ++t) {
        const double x = u(rng), y = u(rng);
        const double r = std::hypot(x, y), a = angle(rng);
        const double ref = parabolic_index_squared(x, y, demo);
        EXPECT_NEAR(parabolic_index_squared(-x, -y, demo), ref, 1e-15);
        EXPECT_NEAR(parabolic_index_squared(r * std::cos(a), r * std::sin(a), demo), ref, 1e-15);
    }
}

TEST(ParabolicProfile, NonIncreasingAndBounded) {
    double prev = parabolic_index_squared(0, 0, demo);
    for (double r = 0.1; r < 40.0; r += 0.1) {
        const double v = parabolic_index_squared(r, 0, demo);
        EXPECT_LE(v, prev);
        EXPECT_GE(v, demo.n0_squared * (1.0 - demo.depth));
        prev = v;
    }
}

TEST(SampleProfile, DemoGrid) {
    const Grid g = make_grid(40, 1.0);
    const auto map = sample_profile(g, demo);
    EXPECT_DOUBLE_EQ(map(20, 20), 1.45);
    EXPECT_NEAR(map(0, 0), 1.305, 1e-15);  // (-20, -20): r = 28.28, clamped
    Eigen::Index mi, mj;
    map.values().maxCoeff(&mi, &mj);
    EXPECT_EQ(mi, 20);
    EXPECT_EQ(mj, 20);
}

TEST(SampleProfile, UniformWhenDepthZero) {
    const auto map = sample_profile(make_grid(8, 1.0), ParabolicProfile{2.1, 0.0, 5.0});
    EXPECT_EQ(map.values().minCoeff(), 2.1);
    EXPECT_EQ(map.values().maxCoeff(), 2.1);
}

TEST(SampleProfile, RejectsInvalidProfile) {
    const Grid g = make_grid(4, 1.0);
    EXPECT_THROW(sample_profile(g, ParabolicProfile{1.45, 1.0, 25.0}), std::invalid_argument);
    EXPECT_THROW(sample_profile(g, ParabolicProfile{-1.0, 0.1, 25.0}), std::invalid_argument);
    EXPECT_THROW(sample_profile(g, ParabolicProfile{1.45, 0.1, 0.0}), std::invalid_argument);
}

TEST(IndexSquaredMap, RejectsNonPositive) {
    const Grid g = make_grid(2, 1.0);
    EXPECT_THROW(IndexSquaredMap(g, 0.0), std::invalid_argument);
    EXPECT_THROW(IndexSquaredMap(g, RealGrid::Ones(2, 3)), std::invalid_argument);
}

TEST(IndexDeltaMap, Examples) {
    const Grid g = make_grid(8, 1.0);
    const auto initial = sample_profile(g, demo);
    EXPECT_EQ(index_delta_map(initial, initial).cwiseAbs().maxCoeff(), 0.0);

    const IndexSquaredMap scaled(g, (1.1 * 1.1) * initial.values());
    const RealGrid dn = index_delta_map(scaled, initial);
    const RealGrid expected = 0.1 * initial.values().array().sqrt().matrix();
    EXPECT_LT((dn - expected).cwiseAbs().maxCoeff(), 1e-14);

    RealGrid bumped = initial.values();
    bumped(4, 4) = 1.4645;
    const RealGrid dn1 = index_delta_map(IndexSquaredMap(g, bumped), initial);
    EXPECT_NEAR(initial(4, 4), 1.45, 0.0);
    EXPECT_NEAR(dn1(4, 4), 0.00600582008903205, 1e-15);  // sqrt(1.4645) - sqrt(1.45)
    EXPECT_EQ(dn1(0, 0), 0.0);
}

TEST(IndexDeltaMap, GridMismatch) {
    EXPECT_THROW(index_delta_map(IndexSquaredMap(make_grid(4, 1.0), 1.0), IndexSquaredMap(make_grid(8, 1.0), 1.0)),
                 std::invalid_argument);
}

TEST(BlendIndexMaps, Endpoints) {
    const Grid g = make_grid(4, 1.0);
    const IndexSquaredMap a(g, 1.2), b(g, 1.6);
    EXPECT_EQ(blend_index_maps(a, b, 0.0).values(), a.values());
    EXPECT_EQ(blend_index_maps(a, b, 1.0).values(), b.values());
    EXPECT_NEAR(blend_index_maps(a, b, 0.25)(1, 1), 1.3, 1e-15);
    EXPECT_EQ(blend_index_maps(a, b, 4.0).values(), b.values());
}
