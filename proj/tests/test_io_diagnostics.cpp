#include "helmprop/io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace helmprop;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("helmprop_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path path(const std::string& name) const { return dir_ / name; }

    static std::vector<std::string> lines(const fs::path& p) {
        std::ifstream in(p);
        std::vector<std::string> out;
        for (std::string l; std::getline(in, l);)
            out.push_back(l);
        return out;
    }

    static void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

    fs::path dir_;
};

using Snapshots = TempDir;
using Trajectories = TempDir;

}  // namespace

TEST_F(Snapshots, RoundTripRandomFields) {
    std::mt19937_64 rng(10);
    for (int n : {2, 8, 40}) {
        const Grid g = make_grid(n, 0.37);
        const Field e = oracle::random_field(g, rng);
        write_field_snapshot(path("snap.csv"), 12.5, e);
        const auto back = read_field_snapshot(path("snap.csv"));
        EXPECT_EQ(back.z, 12.5);
        EXPECT_EQ(back.field.grid(), g);
        EXPECT_LE(oracle::max_abs_diff(back.field, e), 1e-12 * e.values().cwiseAbs().maxCoeff());
        EXPECT_EQ(back.field.values(), e.values());  // 17 significant digits round-trip exactly
    }
}

TEST_F(Snapshots, ZeroFieldLayout) {
    write_field_snapshot(path("zero.csv"), 0.0, Field(make_grid(2, 1.0)));
    const auto l = lines(path("zero.csv"));
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l[0], "# z=0 n=2 dx=1");
    EXPECT_EQ(l[1], "0,0,-1,-1,0,0");
    EXPECT_EQ(l[2], "0,1,-1,0,0,0");
    EXPECT_EQ(l[3], "1,0,0,-1,0,0");
    EXPECT_EQ(l[4], "1,1,0,0,0,0");
}

TEST_F(Snapshots, DemoBeamPeakLine) {
    const Grid g = make_grid(40, 1.0);
    write_field_snapshot(path("beam.csv"), 0.0, gaussian_field(g, 4.0, 0.0, 5.0));
    const auto l = lines(path("beam.csv"));
    double best = -1.0, best_y = 0.0;
    for (std::size_t k = 1; k < l.size(); ++k) {
        std::stringstream ss(l[k]);
        std::string tok;
        std::vector<double> v;
        while (std::getline(ss, tok, ','))
            v.push_back(std::stod(tok));
        const double amp = std::hypot(v[4], v[5]);
        if (amp > best) {
            best = amp;
            best_y = v[3];
        }
    }
    EXPECT_EQ(best_y, 5.0);
    EXPECT_EQ(best, 1.0);
}

TEST_F(Snapshots, MalformedInputs) {
    write_text(path("hdr.csv"), "# t=0 n=2 dx=1\n0,0,-1,-1,0,0\n");
    EXPECT_THROW(read_field_snapshot(path("hdr.csv")), IoError);

    write_field_snapshot(path("ok.csv"), 1.0, Field(make_grid(4, 1.0)));
    auto l = lines(path("ok.csv"));
    {
        std::ofstream out(path("short.csv"));
        for (std::size_t k = 0; k + 3 < l.size(); ++k)
            out << l[k] << '\n';
    }
    EXPECT_THROW(read_field_snapshot(path("short.csv")), IoError);

    l[3] = "0,2,-2,0,nan,0";
    {
        std::ofstream out(path("nan.csv"));
        for (const auto& s : l)
            out << s << '\n';
    }
    EXPECT_THROW(read_field_snapshot(path("nan.csv")), IoError);

    write_text(path("odd.csv"), "# z=0 n=3 dx=1\n");
    EXPECT_THROW(read_field_snapshot(path("odd.csv")), IoError);
    EXPECT_THROW(read_field_snapshot(path("missing.csv")), IoError);
}

TEST_F(Trajectories, EmptyAndSingle) {
    write_trajectory(path("empty.csv"), {});
    EXPECT_EQ(lines(path("empty.csv")), (std::vector<std::string>{"z,centroid_x,centroid_y,l2_norm"}));

    write_trajectory(path("one.csv"), {{0.0, 0.0, 5.0, 1.0}});
    const auto l = lines(path("one.csv"));
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[1], "0,0,5,1");
}

TEST_F(Trajectories, RoundTripAndOrdering) {
    const std::vector<TrajectoryRecord> recs{{0.0, 0.1, 5.0, 5.0132565492616898}, {1.0, -1.0 / 3.0, 4.99, 5.01}};
    write_trajectory(path("t.csv"), recs);
    const auto back = read_trajectory(path("t.csv"));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].centroid_x, -1.0 / 3.0);
    EXPECT_EQ(back[0].l2_norm, 5.0132565492616898);
    EXPECT_THROW(write_trajectory(path("bad.csv"), {{2.0, 0, 0, 1}, {1.0, 0, 0, 1}}), std::invalid_argument);
    write_text(path("nohdr.csv"), "0,0,0,0\n");
    EXPECT_THROW(read_trajectory(path("nohdr.csv")), IoError);
}

TEST(RayPeriod, Examples) {
    EXPECT_NEAR(ray_period(ParabolicProfile{1.45, 0.1, 25.0}), 496.729413289805, 1e-9);
    EXPECT_NEAR(ray_period(ParabolicProfile{1.45, 0.1, 25.0}), 496.7, 0.05);
    EXPECT_NEAR(ray_period(ParabolicProfile{1.45, 0.4, 25.0}), 248.364706644903, 1e-9);
    EXPECT_NEAR(ray_period(ParabolicProfile{1.45, 0.1, 50.0}), 993.45882657961, 1e-9);
    EXPECT_THROW(ray_period(ParabolicProfile{1.45, 0.0, 25.0}), std::invalid_argument);
}

TEST(RayPeriod, InverseSquareRootLaw) {
    const double ref = ray_period(ParabolicProfile{1.45, 0.1, 25.0}) * std::sqrt(0.1);
    for (double depth : {0.01, 0.05, 0.2, 0.5, 0.9})
        EXPECT_NEAR(ray_period(ParabolicProfile{1.0, depth, 25.0}) * std::sqrt(depth), ref, 1e-12 * ref);
}
