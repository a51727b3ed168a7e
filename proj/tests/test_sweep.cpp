// test_sweep.cpp

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "qrws/io.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

using namespace qrws;

namespace {

constexpr double kPi = std::numbers::pi;

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qrws_test_sweep";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Number of contiguous runs (periodic) of phi columns that contain a cell with
// p > threshold.
int phi_runs(const SweepDataset& grid, double threshold) {
    const int rows = grid.meta.phi_steps, cols = grid.meta.zeta_steps;
    std::vector<bool> high(rows, false);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (grid.grid_p(i, j) > threshold) high[i] = true;
    int runs = 0;
    for (int i = 0; i < rows; ++i)
        if (high[i] && !high[(i + rows - 1) % rows]) ++runs;
    return runs;
}

double max_p(const SweepDataset& d) {
    double best = 0.0;
    for (const auto& r : d.records) best = std::max(best, r.p);
    return best;
}

}  // namespace

TEST(RandomAngles, UniformRangeAndCounterBased) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const auto [phi, zeta] = random_angles(42, i);
        EXPECT_GE(phi, 0.0);
        EXPECT_LT(phi, kTwoPi);
        EXPECT_GE(zeta, 0.0);
        EXPECT_LT(zeta, kTwoPi);
    }
    EXPECT_EQ(random_angles(42, 17), random_angles(42, 17));
    EXPECT_NE(random_angles(42, 17), random_angles(43, 17));
    EXPECT_NE(random_angles(42, 17), random_angles(42, 18));
}

TEST(SweepRandom, RejectsZeroSamples) { EXPECT_THROW(sweep_random(4, 0, 1), std::invalid_argument); }

TEST(SweepRandom, SingleSampleMatchesRun) {
    const auto d = sweep_random(6, 1, 99);
    ASSERT_EQ(d.records.size(), 1u);
    const auto [phi, zeta] = random_angles(99, 0);
    EXPECT_EQ(d.records[0].phi, phi);
    EXPECT_EQ(d.records[0].zeta, zeta);
    EXPECT_EQ(d.records[0].p, success_probability(6, phi, zeta));
    EXPECT_EQ(d.meta.iterations, iteration_count(6));
}

TEST(SweepRandom, DeterministicAcrossRunsAndThreadCounts) {
    SweepOptions serial;
    serial.threads = 1;
    SweepOptions parallel;
    parallel.threads = 3;
    const auto a = sweep_random(5, 500, 2024, serial);
    const auto b = sweep_random(5, 500, 2024, parallel);
    write_sweep_csv(a, scratch("a.csv"));
    write_sweep_csv(b, scratch("b.csv"));
    EXPECT_EQ(read_text_file(scratch("a.csv")), read_text_file(scratch("b.csv")));
}

TEST(SweepRandom, HitsTheRidgeForEightDirections) {
    const auto d = sweep_random(8, 10000, 7);
    EXPECT_GE(max_p(d), 0.40);
}

TEST(SweepGrid, LayoutAndMaximumAtGroverPoint) {
    const auto d = sweep_grid(5, 180, 180);
    ASSERT_EQ(d.records.size(), 32400u);
    // row-major: phi index outer
    EXPECT_NEAR(d.records[0].phi, kTwoPi / 180.0, 1e-15);
    EXPECT_NEAR(d.records[1].zeta, 2.0 * kTwoPi / 180.0, 1e-15);
    EXPECT_NEAR(d.records[180].phi, 2.0 * kTwoPi / 180.0, 1e-15);
    // 2 pi is stored reduced
    EXPECT_EQ(d.records.back().phi, 0.0);

    const auto best = std::max_element(d.records.begin(), d.records.end(),
                                       [](const SweepRecord& a, const SweepRecord& b) { return a.p < b.p; });
    EXPECT_EQ(best->phi, kPi);
    EXPECT_EQ(best->zeta, kPi);
    EXPECT_NEAR(best->p, 0.4137, 1e-3);
}

TEST(SweepGrid, ConjugationSymmetry) {
    const int n = 60;
    const auto d = sweep_grid(6, n, n);
    // grid index i (1-based) mirrors to n - i, with 0 standing for n
    auto mirror = [n](int i) { return i == n ? n : n - i; };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            EXPECT_NEAR(d.grid_p(i - 1, j - 1), d.grid_p(mirror(i) - 1, mirror(j) - 1), 1e-10);
}

TEST(SweepGrid, ConstantZetaRowPeaksAtPi) {
    for (int m = 4; m <= 7; ++m) {
        const auto d = sweep_grid(m, 180, 2);  // zeta steps: pi and 2 pi
        int best = 0;
        for (int i = 1; i < 180; ++i)
            if (d.grid_p(i, 0) > d.grid_p(best, 0)) best = i;
        EXPECT_EQ(best, 89) << "m=" << m;
    }
}

TEST(SweepGrid, SmallCoinHasDisconnectedHighCells) {
    const auto small = sweep_grid(2, 90, 90);
    const auto large = sweep_grid(8, 90, 90);
    EXPECT_GT(phi_runs(small, 0.9 * max_p(small)), 1);
    EXPECT_EQ(phi_runs(large, 0.9 * max_p(large)), 1);
}

TEST(SweepGrid, RecordsReevaluateIdentically) {
    const auto d = sweep_grid(6, 30, 30);
    for (std::size_t n = 0; n < d.records.size(); n += 97) {
        const auto& r = d.records[n];
        EXPECT_EQ(r.p, success_probability(r.m, r.phi, r.zeta));
    }
}

TEST(SweepIo, CsvAndSidecarRoundTrip) {
    const auto d = sweep_grid(4, 12, 10);
    write_sweep_csv(d, scratch("grid.csv"));
    write_sweep_meta(d, scratch("grid.json"));
    const auto back = read_sweep(scratch("grid.csv"));
    EXPECT_EQ(back.meta.mode, SweepMode::Grid);
    EXPECT_EQ(back.meta.phi_steps, 12);
    EXPECT_EQ(back.meta.zeta_steps, 10);
    EXPECT_EQ(back.meta.iterations, iteration_count(4));
    ASSERT_EQ(back.records.size(), d.records.size());
    for (std::size_t n = 0; n < d.records.size(); ++n) {
        EXPECT_NEAR(back.records[n].phi, d.records[n].phi, 1e-11);
        EXPECT_NEAR(back.records[n].p, d.records[n].p, 1e-11);
        EXPECT_EQ(back.records[n].m, 4);
    }
    const std::string text = read_text_file(scratch("grid.csv"));
    EXPECT_EQ(text.substr(0, text.find('\n')), "phi,zeta,m,p");
}

TEST(SweepIo, RejectsBadHeader) {
    write_text_file(scratch("bad.csv"), "a,b\n1,2\n");
    write_text_file(scratch("bad.json"), R"({"mode":"grid","m":3,"iterations":3,"phi_steps":1,"zeta_steps":1})");
    EXPECT_THROW(read_sweep(scratch("bad.csv")), std::runtime_error);
}
