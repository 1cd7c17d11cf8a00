#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcap/capacity.hpp"
#include "qcap/figures.hpp"

using namespace qcap;

namespace {

const ChannelParams kPlanar{{0.3, 0.1, 0}, {0.4, 0.5, 0}};

double max_radial_deviation(const ContourResult& c, double radius) {
    double worst = 0.0;
    for (const auto& line : c.polylines)
        for (const auto& p : line.points) worst = std::max(worst, std::abs(std::hypot(p[0], p[1]) - radius));
    return worst;
}

}  // namespace

TEST(contour, circles_about_the_origin) {
    const int n = 512;
    auto c = contour_polylines({{0, 0, 0}, {1.0}, Plane::XY, n});
    ASSERT_FALSE(c.polylines.empty());
    EXPECT_LE(max_radial_deviation(c, 1.0), 2.0 / n);

    const double level = 1.0 - von_neumann_entropy(0.6);
    c = contour_polylines({{0, 0, 0}, {level}, Plane::XZ, n});
    ASSERT_EQ(c.polylines.size(), 1u);
    EXPECT_TRUE(c.polylines[0].closed);
    EXPECT_LE(max_radial_deviation(c, 0.6), 2.0 / n);
}

TEST(contour, off_centre_level_sets) {
    const BlochVector v{0, 0.5, 0};
    const auto c = contour_polylines({v, {0.1, 0.5}, Plane::XY, 256});
    ASSERT_FALSE(c.polylines.empty());
    const DivergenceTo div(v);
    for (const auto& line : c.polylines) {
        for (const auto& p : line.points) {
            const BlochVector w = embed_in_plane(Plane::XY, p[0], p[1]);
            if (w.norm() >= 1.0) continue;
            EXPECT_NEAR(div(w), line.level, 0.02);
        }
    }
    // The small level surrounds v.
    bool found = false;
    for (const auto& line : c.polylines) {
        if (line.level != 0.1 || !line.closed) continue;
        double cy = 0.0;
        for (const auto& p : line.points) cy += p[1];
        cy /= static_cast<double>(line.points.size());
        EXPECT_GT(cy, 0.3);
        found = true;
    }
    EXPECT_TRUE(found);
}

TEST(contour, empty_and_invalid_levels) {
    const auto c = contour_polylines({{0, 0, 0}, {2.0}, Plane::XY, 64});
    EXPECT_TRUE(c.polylines.empty());
    ASSERT_EQ(c.empty_levels.size(), 1u);
    EXPECT_THROW(contour_polylines({{0, 0, 0}, {-1.0}, Plane::XY, 64}), Error);
    EXPECT_THROW(contour_polylines({{0, 0, 1}, {0.5}, Plane::XY, 64}), Error);
    EXPECT_THROW(contour_polylines({{0, 0, 0}, {0.5}, Plane::XY, 1}), Error);
}

TEST(contour, csv_format) {
    const auto c = contour_polylines({{0, 0, 0}, {0.5}, Plane::XY, 32});
    std::ostringstream os;
    write_contour_csv(os, c);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "level,polyline_id,c1,c2");
    std::getline(in, line);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
}

TEST(scan, planar_channel_has_two_peaks) {
    const auto r = iterative_capacity(kPlanar);
    const auto s = angular_scan({kPlanar, r.average_output, Plane::XY, 720});
    ASSERT_EQ(s.size(), 720u);
    const auto peaks = scan_local_maxima(s);
    ASSERT_EQ(peaks.size(), 2u);
    for (auto i : peaks) EXPECT_NEAR(s[i].divergence, r.capacity_bits, 1e-4);
    for (const auto& x : s) {
        EXPECT_GE(x.theta, 0.0);
        EXPECT_LT(x.theta, 2 * std::numbers::pi);
    }
}

TEST(scan, unital_symmetry) {
    const auto p = named_channel({NamedChannel::TwoPauli, 0.2});
    const auto s = angular_scan({p, {0, 0, 0}, Plane::XZ, 360});
    for (std::size_t k = 0; k < 180; ++k) {
        EXPECT_NEAR(s[k].divergence, s[k + 180].divergence, 1e-12);
        EXPECT_NEAR(std::abs(std::remainder(s[k + 180].theta - s[k].theta, 2 * std::numbers::pi)), std::numbers::pi, 1e-9);
    }
}

TEST(scan, csv_and_errors) {
    const auto s = angular_scan({ChannelParams::identity(), {0, 0, 0}, Plane::XY, 8});
    std::ostringstream os;
    write_scan_csv(os, s);
    EXPECT_EQ(os.str().substr(0, 8), "theta,D\n");
    EXPECT_EQ(scan_local_maxima(s).size(), 0u);
    EXPECT_THROW(angular_scan({ChannelParams::identity(), {0, 0, 0}, Plane::XY, 4}), Error);
}
