/**
 * @file test_raster.cpp
 * @brief BinaryImage, image I/O, thinning, noise and rotation.
 */
#include "arcscan/digigeom.hpp"
#include "arcscan/raster.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <queue>

using namespace arcscan;

namespace {

BinaryImage from_pixels(int w, int h, const std::vector<Pixel>& px) {
    BinaryImage img(w, h);
    for (const auto p : px) img.set(p);
    return img;
}

int components(const BinaryImage& img) {
    BinaryImage seen(img.width(), img.height());
    int n = 0;
    for (const auto p : img.pixels()) {
        if (seen.test(p)) continue;
        ++n;
        std::queue<Pixel> q;
        q.push(p);
        seen.set(p);
        while (!q.empty()) {
            const Pixel c = q.front();
            q.pop();
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const Pixel nb{c.x + dx, c.y + dy};
                    if (img.test(nb) && !seen.test(nb)) {
                        seen.set(nb);
                        q.push(nb);
                    }
                }
        }
    }
    return n;
}

std::size_t xor_count(const BinaryImage& a, const BinaryImage& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) n += a.data()[i] != b.data()[i];
    return n;
}

}  // namespace

TEST(BinaryImage, RejectsEmptyDimensions) {
    EXPECT_THROW(BinaryImage(0, 5), std::invalid_argument);
    EXPECT_THROW(BinaryImage(5, 0), std::invalid_argument);
}

TEST(BinaryImage, SetTestAndBounds) {
    BinaryImage img(4, 3);
    EXPECT_EQ(img.data().size(), 12u);
    img.set(3, 2);
    EXPECT_TRUE(img.test(3, 2));
    EXPECT_FALSE(img.test(-1, 0));
    EXPECT_FALSE(img.test(4, 0));
    EXPECT_THROW(img.set(4, 0), std::out_of_range);
    img.set_clipped({9, 9});
    EXPECT_EQ(img.count(), 1u);
    EXPECT_EQ(img.pixels(), (std::vector<Pixel>{{3, 2}}));
}

TEST(LoadBinary, SinglePixelPbm) {
    const auto dir = oracle::temp_dir("raster_pbm1");
    {
        std::ofstream f(dir / "one.pbm");
        f << "P1\n1 1\n1\n";
    }
    const auto img = load_binary(dir / "one.pbm", 128);
    EXPECT_EQ(img.width(), 1);
    EXPECT_EQ(img.count(), 1u);
}

TEST(LoadBinary, WhitePgmIsEmpty) {
    const auto dir = oracle::temp_dir("raster_pgm");
    {
        std::ofstream f(dir / "white.pgm", std::ios::binary);
        f << "P5\n10 10\n255\n" << std::string(100, '\xff');
    }
    const auto img = load_binary(dir / "white.pgm", 128);
    EXPECT_EQ(img.width(), 10);
    EXPECT_EQ(img.height(), 10);
    EXPECT_EQ(img.count(), 0u);
}

TEST(LoadBinary, AsciiPgmThresholdIsStrict) {
    const auto dir = oracle::temp_dir("raster_p2");
    {
        std::ofstream f(dir / "g.pgm");
        f << "P2\n# comment\n3 1\n255\n127 128 0\n";
    }
    const auto img = load_binary(dir / "g.pgm", 128);
    EXPECT_TRUE(img.test(0, 0));
    EXPECT_FALSE(img.test(1, 0));
    EXPECT_TRUE(img.test(2, 0));
}

TEST(LoadBinary, PngDiagonalRoundTrip) {
    const auto dir = oracle::temp_dir("raster_png");
    const auto img = from_pixels(5, 4, {{0, 0}, {1, 1}, {2, 2}});
    save_png(img, dir / "d.png");
    const auto back = load_binary(dir / "d.png");
    EXPECT_EQ(back, img);
    EXPECT_EQ(back.count(), 3u);
}

TEST(LoadBinary, PbmRoundTripOddWidth) {
    const auto dir = oracle::temp_dir("raster_p4");
    BinaryImage img(13, 5);
    for (int i = 0; i < 13; ++i) img.set(i, i % 5);
    save_pbm(img, dir / "x.pbm");
    EXPECT_EQ(load_binary(dir / "x.pbm"), img);
}

TEST(LoadBinary, Errors) {
    const auto dir = oracle::temp_dir("raster_err");
    try {
        load_binary(dir / "missing.pbm");
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("missing.pbm"), std::string::npos);
    }
    {
        std::ofstream f(dir / "junk.bin");
        f << "hello";
    }
    EXPECT_THROW(load_binary(dir / "junk.bin"), IoError);
    {
        std::ofstream f(dir / "zero.pbm");
        f << "P1\n0 0\n";
    }
    EXPECT_THROW(load_binary(dir / "zero.pbm"), IoError);
}

TEST(Thin, ThinCurveUnchanged) {
    const auto circle = midpoint_circle({30, 30}, 20);
    const auto img = from_pixels(61, 61, circle);
    EXPECT_EQ(thin(img), img);
    const auto line = from_pixels(20, 5, bresenham_line({1, 1}, {18, 3}));
    EXPECT_EQ(thin(line), line);
}

TEST(Thin, BarBecomesHorizontalRun) {
    BinaryImage bar(24, 7);
    std::vector<int> grid(24 * 7, 0);
    for (int y = 2; y < 5; ++y)
        for (int x = 2; x < 22; ++x) {
            bar.set(x, y);
            grid[y * 24 + x] = 1;
        }
    const auto sk = thin(bar);
    const auto ref = oracle::zhang_suen(grid, 24, 7);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 24; ++x) EXPECT_EQ(sk.test(x, y), ref[y * 24 + x] != 0) << x << "," << y;
    int row = -1;
    for (const auto p : sk.pixels()) {
        if (row < 0) row = p.y;
        EXPECT_EQ(p.y, row);
    }
    // Textbook Zhang-Suen shortens the 20-pixel bar to columns 3..19.
    EXPECT_EQ(sk.count(), 17u);
}

TEST(Thin, EmptyStaysEmpty) {
    BinaryImage img(8, 8);
    EXPECT_EQ(thin(img).count(), 0u);
}

TEST(Thin, ThickCircleSkeletonProperties) {
    BinaryImage img(101, 101);
    for (int r = 29; r <= 31; ++r)
        for (const auto p : midpoint_circle({50, 50}, r)) img.set(p);
    for (int y = 0; y < 101; ++y)
        for (int x = 0; x < 101; ++x) {
            const double d = std::hypot(x - 50, y - 50);
            if (d >= 28.6 && d <= 31.4) img.set(x, y);
        }
    const auto sk = thin(img);
    EXPECT_EQ(components(sk), components(img));
    for (const auto p : sk.pixels()) {
        EXPECT_TRUE(img.test(p));
        EXPECT_EQ(count_8_neighbors(sk, p), 2) << p.x << "," << p.y;
    }
    EXPECT_EQ(thin(sk), sk);
}

TEST(Thin, IdempotentOnScene) {
    BinaryImage img(80, 80);
    for (int t = -1; t <= 1; ++t) {
        for (const auto p : bresenham_line({5, 10 + t}, {75, 60 + t})) img.set(p);
        for (const auto p : midpoint_circle({40, 40}, 25 + t)) img.set(p);
    }
    const auto once = thin(img);
    EXPECT_EQ(thin(once), once);
    EXPECT_EQ(components(once), components(img));
}

TEST(Despeckle, RemovesDotsAndFillsHoles) {
    BinaryImage img(10, 10);
    img.set(1, 1);
    for (int y = 4; y <= 6; ++y)
        for (int x = 4; x <= 6; ++x) img.set(x, y);
    img.set(5, 5, false);
    const auto out = despeckle(img);
    EXPECT_FALSE(out.test(1, 1));
    EXPECT_TRUE(out.test(5, 5));
    EXPECT_EQ(out.count(), 9u);
}

TEST(PruneSpurs, RemovesShortBranchKeepsCurve) {
    BinaryImage img(30, 10);
    for (int x = 2; x < 28; ++x) img.set(x, 5);
    img.set(15, 4);
    img.set(15, 3);
    const auto out = prune_spurs(img, 3);
    EXPECT_FALSE(out.test(15, 4));
    EXPECT_FALSE(out.test(15, 3));
    EXPECT_EQ(out.count(), 26u);
    BinaryImage lone(10, 3);
    lone.set(1, 1);
    lone.set(2, 1);
    EXPECT_EQ(prune_spurs(lone, 3), lone);
}

TEST(SaltPepper, ZeroIsIdentity) {
    const auto img = from_pixels(20, 20, midpoint_circle({10, 10}, 6));
    EXPECT_EQ(add_salt_pepper(img, 0.0, 3), img);
}

TEST(SaltPepper, FullFlipOnWhite) {
    BinaryImage img(7, 9);
    EXPECT_EQ(add_salt_pepper(img, 1.0, 11).count(), 63u);
}

TEST(SaltPepper, ExactFlipCountAndDeterminism) {
    BinaryImage img(100, 100);
    for (const auto p : midpoint_circle({50, 50}, 30)) img.set(p);
    const auto a = add_salt_pepper(img, 0.05, 7);
    EXPECT_EQ(xor_count(a, img), 500u);
    EXPECT_EQ(add_salt_pepper(img, 0.05, 7), a);
    EXPECT_NE(add_salt_pepper(img, 0.05, 8), a);
}

TEST(SaltPepper, RejectsBadFraction) {
    BinaryImage img(4, 4);
    EXPECT_THROW(add_salt_pepper(img, -0.1, 0), std::invalid_argument);
    EXPECT_THROW(add_salt_pepper(img, 1.5, 0), std::invalid_argument);
}

TEST(Rotate, ZeroIsIdentity) {
    const auto img = from_pixels(31, 17, bresenham_line({2, 3}, {28, 14}));
    EXPECT_EQ(rotate(img, 0.0), img);
}

TEST(Rotate, QuarterTurnIsExactPermutation) {
    // 7 wide, 5 high: centre (3, 2); rotated canvas 5 x 7 with centre (2, 3).
    const std::vector<Pixel> px{{0, 0}, {6, 0}, {1, 3}, {5, 4}, {3, 2}};
    const auto img = from_pixels(7, 5, px);
    const auto rot = rotate(img, 90.0);
    ASSERT_EQ(rot.width(), 5);
    ASSERT_EQ(rot.height(), 7);
    EXPECT_EQ(rot.count(), px.size());
    for (const auto p : px) {
        // Clockwise on screen: (dx, dy) -> (-dy, dx).
        const int dx = p.x - 3, dy = p.y - 2;
        EXPECT_TRUE(rot.test(2 - dy, 3 + dx)) << p.x << "," << p.y;
    }
}

TEST(Rotate, CenteredCircleInvariantUnderQuarterTurns) {
    const auto img = from_pixels(101, 101, midpoint_circle({50, 50}, 33));
    for (double deg : {90.0, 180.0, 270.0}) EXPECT_EQ(rotate(img, deg), img) << deg;
}

TEST(Rotate, FullTurnKeepsPixelSet) {
    const auto img = from_pixels(40, 30, bresenham_line({3, 4}, {35, 25}));
    const auto rot = rotate(img, 360.0);
    EXPECT_EQ(rot.width(), 40);
    EXPECT_EQ(rot.height(), 30);
    EXPECT_EQ(rot, img);
}

TEST(Rotate, ArbitraryAngleKeepsComponents) {
    BinaryImage img(120, 100);
    for (int t = -1; t <= 1; ++t) {
        for (const auto p : midpoint_circle({40, 50}, 20 + t)) img.set(p);
        for (const auto p : bresenham_line({70, 10 + t}, {115, 90 + t})) img.set(p);
    }
    for (double deg = 5.0; deg <= 45.0; deg += 5.0) {
        const auto rot = rotate(img, deg);
        EXPECT_EQ(components(rot), components(img)) << deg;
        const double ratio = double(rot.count()) / double(img.count());
        EXPECT_GT(ratio, 0.8);
        EXPECT_LT(ratio, 1.25);
    }
}

TEST(Rotate, ForwardInverseRoundTrip) {
    const Rotation r(200, 150, 27.5);
    const RealPoint p{13.25, 140.5};
    const RealPoint q = r.inverse(r.forward(p));
    EXPECT_NEAR(q.x, p.x, 1e-9);
    EXPECT_NEAR(q.y, p.y, 1e-9);
}
