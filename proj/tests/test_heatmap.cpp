// test_heatmap.cpp

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "qrws/coin.hpp"
#include "qrws/heatmap.hpp"
#include "qrws/io.hpp"

using namespace qrws;

namespace {

Field2D field(std::size_t rows, std::size_t cols, std::vector<double> values) {
    Field2D f;
    f.rows = rows;
    f.cols = cols;
    f.values = std::move(values);
    return f;
}

}  // namespace

TEST(Heatmap, ConstantFieldIsUniform) {
    const auto pixels = heatmap_pixels(field(3, 4, std::vector<double>(12, 0.37)), HeatmapScale::Linear);
    ASSERT_EQ(pixels.size(), 12u);
    for (auto p : pixels) EXPECT_EQ(p, pixels.front());
}

TEST(Heatmap, LinearScaleHitsBothEnds) {
    const auto pixels = heatmap_pixels(field(2, 2, {0.0, 0.43, 0.43, 0.0}), HeatmapScale::Linear);
    EXPECT_EQ(pixels, (std::vector<std::uint8_t>{0, 255, 255, 0}));
}

TEST(Heatmap, LogScaleClampsSmallValues) {
    const auto pixels = heatmap_pixels(field(1, 4, {0.0, 1e-9, 1e-6, 1.0}), HeatmapScale::Log);
    EXPECT_EQ(pixels[0], 0);
    EXPECT_EQ(pixels[1], 0);
    EXPECT_EQ(pixels[2], 0);
    EXPECT_EQ(pixels[3], 255);
    const auto mid = heatmap_pixels(field(1, 3, {1e-6, 1e-3, 1.0}), HeatmapScale::Log);
    EXPECT_NEAR(mid[1], 127.5, 1.0);
}

TEST(Heatmap, InvalidCellsRenderWhite) {
    Field2D f = field(1, 3, {0.1, std::nan(""), 0.3});
    f.valid = {1, 0, 1};
    const auto pixels = heatmap_pixels(f, HeatmapScale::Linear);
    EXPECT_EQ(pixels, (std::vector<std::uint8_t>{0, 255, 255}));
}

TEST(Heatmap, PgmLayout) {
    const std::string pgm = heatmap_pgm(field(2, 3, {0, 1, 2, 3, 4, 5}), HeatmapScale::Linear, "m=5");
    const std::string header = "P5\n# m=5\n3 2\n255\n";
    ASSERT_EQ(pgm.size(), header.size() + 6);
    EXPECT_EQ(pgm.substr(0, header.size()), header);
    EXPECT_EQ(static_cast<unsigned char>(pgm.back()), 255);

    const auto path = std::filesystem::temp_directory_path() / "qrws_test_heatmap" / "f.pgm";
    write_heatmap(field(2, 3, {0, 1, 2, 3, 4, 5}), path, HeatmapScale::Linear);
    EXPECT_EQ(std::filesystem::file_size(path), std::string("P5\n3 2\n255\n").size() + 6);
}

TEST(Heatmap, ParsesScaleNames) {
    EXPECT_EQ(parse_heatmap_scale("log"), HeatmapScale::Log);
    EXPECT_EQ(parse_heatmap_scale("linear"), HeatmapScale::Linear);
    EXPECT_THROW(parse_heatmap_scale("sqrt"), std::invalid_argument);
}

TEST(Heatmap, FiveDirectionLandscapeHasADiagonalStripe) {
    const auto d = sweep_grid(5, 180, 180);
    double stripe = 0.0, total = 0.0;
    std::size_t stripe_cells = 0;
    for (const auto& r : d.records) {
        total += r.p;
        if (std::abs(wrap_to_pi(r.zeta - zeta_of_phi(CurveRelation::linear(), r.phi))) < 0.1) {
            stripe += r.p;
            ++stripe_cells;
        }
    }
    ASSERT_GT(stripe_cells, 0u);
    EXPECT_GT(stripe / stripe_cells, 2.0 * total / d.records.size());

    const Field2D f = field_from(d);
    EXPECT_EQ(f.rows, 180u);
    EXPECT_EQ(f.cols, 180u);
}
