#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace rscc {

struct GridWindow {
    double reMin = -2.5, reMax = 2.5;
    double imMin = -2.5, imMax = 2.5;
    int res = 256; // pixels per side
};

enum class PixelLabel : std::uint8_t {
    FatouAttracting, // sampled orbits fall into the superattracting basin at 0
    FatouEscaping,   // sampled orbits run off to infinity
    JuliaCandidate,  // a probe stencil blew past the diameter threshold
    Unknown,
};

struct MembershipGrid {
    GridWindow window;
    std::vector<PixelLabel> labels; // row major, top row first
    std::vector<double> probeDiam;  // largest chordal probe diameter seen per pixel
};

struct GridParams {
    int maxDepth = 40;
    int wordSamples = 20;
    double probeOffset = 0.0;   // 0 picks the default window-width/(4*res)
    double diamThreshold = 0.5; // chordal
    std::uint64_t seed = 0;
    int workers = 1;
};

// sampled statewise estimate: each pixel follows wordSamples map paths drawn from
// its own counter-rng stream, tracking a 4-point probe stencil around the center.
MembershipGrid estimate_julia_grid(const ScenarioSpec& spec, const StatePoint& w,
                                   const GridWindow& win, const GridParams& par);

// same probe test along one fixed path (uses min(maxDepth, path length) steps)
MembershipGrid estimate_path_julia_grid(const PathSample& path, const GridWindow& win,
                                        const GridParams& par);

double pixel_measure(const MembershipGrid& grid, PixelLabel label);

// fraction of pixels with the label per |z| bin; pairs (bin midpoint radius, fraction)
std::vector<std::pair<double, double>> radial_profile(const MembershipGrid& grid, PixelLabel label,
                                                      int bins);

// binary P6 image; palette "bw" (candidate pixels black) or "heat" (probe diameter ramp).
// the comment line lands inside the PPM header.
std::string render_ppm(const MembershipGrid& grid, const std::string& palette,
                       const std::string& comment = "");

const char* to_string(PixelLabel label);

} // namespace rscc
