#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rscc/grid_julia.hpp"
#include "rscc/scenario.hpp"

using namespace rscc;

namespace {
std::complex<double> pixel_center(const GridWindow& w, int row, int col) {
    const double dx = (w.reMax - w.reMin) / w.res;
    const double dy = (w.imMax - w.imMin) / w.res;
    return {w.reMin + (col + 0.5) * dx, w.imMax - (row + 0.5) * dy};
}

PathSample repeated_map_path(const MapSpec& m, int n) {
    PathSample p;
    p.word.assign(n, 0);
    p.mapIdx.assign(n, 0);
    p.maps.assign(n, m);
    p.states.assign(n + 1, StatePoint::discrete("*", 0.0));
    p.logProb = 0.0;
    return p;
}
} // namespace

TEST_CASE("squaring path sorts the plane around the unit circle") {
    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 64};
    GridParams par;
    par.maxDepth = 30;
    par.probeOffset = 0.04; // wide stencil so boundary pixels reliably straddle
    const auto path = repeated_map_path(MapSpec::monomial(1.0, 2), 30);
    const auto grid = estimate_path_julia_grid(path, win, par);

    REQUIRE(grid.labels.size() == 64u * 64u);
    int candidates = 0;
    for (int row = 0; row < 64; ++row)
        for (int col = 0; col < 64; ++col) {
            const double r = std::abs(pixel_center(win, row, col));
            const auto label = grid.labels[row * 64 + col];
            if (r < 0.7) CHECK(label == PixelLabel::FatouAttracting);
            if (r > 2.2) CHECK(label == PixelLabel::FatouEscaping);
            if (label == PixelLabel::JuliaCandidate) {
                ++candidates;
                CHECK(std::abs(r - 1.0) < 0.2);
            }
        }
    CHECK(candidates > 0);
}

TEST_CASE("statewise sampling confines candidates to the expected annulus") {
    const auto spec = builtin_scenario("jump-annulus");
    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 96};
    GridParams par;
    par.maxDepth = 40;
    par.wordSamples = 20;
    par.seed = 7;
    const auto grid = estimate_julia_grid(spec, StatePoint::ladder(1), win, par);

    int candidates = 0;
    for (int row = 0; row < win.res; ++row)
        for (int col = 0; col < win.res; ++col) {
            if (grid.labels[row * win.res + col] != PixelLabel::JuliaCandidate) continue;
            ++candidates;
            const double r = std::abs(pixel_center(win, row, col));
            CHECK(r > 0.8);
            CHECK(r < 2.3);
        }
    CHECK(candidates > 0);
}

TEST_CASE("grid estimates are reproducible and worker-count independent") {
    const auto spec = builtin_scenario("jump-annulus");
    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 48};
    GridParams par;
    par.maxDepth = 30;
    par.wordSamples = 10;
    par.seed = 42;

    par.workers = 1;
    const auto a = estimate_julia_grid(spec, StatePoint::ladder(1), win, par);
    const auto b = estimate_julia_grid(spec, StatePoint::ladder(1), win, par);
    CHECK(a.labels == b.labels);
    CHECK(a.probeDiam == b.probeDiam);

    par.workers = 3;
    const auto c = estimate_julia_grid(spec, StatePoint::ladder(1), win, par);
    CHECK(a.labels == c.labels);
    CHECK(a.probeDiam == c.probeDiam);
}

TEST_CASE("ppm rendering") {
    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 32};
    GridParams par;
    par.maxDepth = 20;
    const auto path = repeated_map_path(MapSpec::monomial(1.0, 2), 20);
    const auto grid = estimate_path_julia_grid(path, win, par);

    const auto ppm = render_ppm(grid, "bw", "unit circle");
    const std::string header = "P6\n# unit circle\n32 32\n255\n";
    REQUIRE(ppm.size() == header.size() + 3u * 32u * 32u);
    CHECK(ppm.compare(0, header.size(), header) == 0);

    // bw palette: candidates black, everything else white
    for (std::size_t pix = 0; pix < grid.labels.size(); ++pix) {
        const char want = grid.labels[pix] == PixelLabel::JuliaCandidate ? '\x00' : '\xFF';
        CHECK(ppm[header.size() + 3 * pix] == want);
    }

    const auto bare = render_ppm(grid, "heat");
    CHECK(bare.compare(0, 3, "P6\n") == 0);
    CHECK(bare.size() == 3 + std::string("32 32\n255\n").size() + 3u * 32u * 32u);

    CHECK_THROWS_AS(render_ppm(grid, "sepia"), std::invalid_argument);
}

TEST_CASE("radial profile concentrates mass on the circle") {
    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 96};
    GridParams par;
    par.maxDepth = 30;
    par.probeOffset = 0.04;
    const auto path = repeated_map_path(MapSpec::monomial(1.0, 2), 30);
    const auto grid = estimate_path_julia_grid(path, win, par);

    const auto prof = radial_profile(grid, PixelLabel::JuliaCandidate, 24);
    REQUIRE(prof.size() == 24);
    double bestR = 0.0, bestFrac = -1.0;
    for (const auto& [mid, frac] : prof)
        if (frac > bestFrac) {
            bestFrac = frac;
            bestR = mid;
        }
    CHECK(bestFrac > 0.0);
    CHECK(std::abs(bestR - 1.0) < 0.25);

    CHECK_THROWS_AS(radial_profile(grid, PixelLabel::JuliaCandidate, 0), std::invalid_argument);
}

TEST_CASE("pixel measure input validation") {
    MembershipGrid empty;
    CHECK_THROWS_AS(pixel_measure(empty, PixelLabel::JuliaCandidate), std::invalid_argument);

    const GridWindow win{-2.5, 2.5, -2.5, 2.5, 16};
    GridParams par;
    par.maxDepth = 10;
    const auto path = repeated_map_path(MapSpec::monomial(1.0, 2), 10);
    const auto grid = estimate_path_julia_grid(path, win, par);
    double total = 0.0;
    for (auto l : {PixelLabel::FatouAttracting, PixelLabel::FatouEscaping,
                   PixelLabel::JuliaCandidate, PixelLabel::Unknown})
        total += pixel_measure(grid, l);
    CHECK(std::abs(total - 1.0) <= 1e-12);

    PathSample bare;
    CHECK_THROWS_AS(estimate_path_julia_grid(bare, win, par), std::invalid_argument);
}
