#include "rscc/grid_julia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rscc/errors.hpp"
#include "rscc/parallel.hpp"
#include "rscc/rng.hpp"

namespace rscc {

namespace {

constexpr double kEscapeHi = 1e8;
constexpr double kEscapeLo = 1e-8;
constexpr int kEscapeRun = 5; // consecutive monotone steps outside the annulus

enum class SampleFate { Julia, ToZero, ToInfinity, Undecided };

// walk the five-point stencil through one map path. the probe diameter is the
// largest pairwise chordal distance among the four offset points; it counts as a
// Julia hit only while the center is still inside the tracking annulus.
SampleFate classify_sample(const std::vector<MapSpec>& maps, int depth, cplx center, double h,
                           double threshold, double& maxDiam) {
    SpherePoint pts[5] = {
        SpherePoint::at(center),
        SpherePoint::at(center + cplx{h, 0.0}),
        SpherePoint::at(center - cplx{h, 0.0}),
        SpherePoint::at(center + cplx{0.0, h}),
        SpherePoint::at(center - cplx{0.0, h}),
    };
    double prevAbs = std::abs(center);
    int runDir = 0, runLen = 0;

    for (int k = 0; k < depth; ++k) {
        const MapSpec& m = maps[k];
        for (auto& p : pts) p = apply_map(m, p);

        double diam = 0.0;
        for (int i = 1; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                diam = std::max(diam, chordal_distance(pts[i], pts[j]));
        maxDiam = std::max(maxDiam, diam);

        const double cAbs = pts[0].finite ? std::abs(pts[0].z)
                                          : std::numeric_limits<double>::infinity();
        const bool inAnnulus = cAbs >= kEscapeLo && cAbs <= kEscapeHi;
        if (diam > threshold && inAnnulus) return SampleFate::Julia;

        // superattracting endpoints are final for every map family here
        if (!pts[0].finite || std::isinf(cAbs)) return SampleFate::ToInfinity;
        if (cAbs == 0.0) return SampleFate::ToZero;

        const int dir = cAbs > prevAbs ? 1 : (cAbs < prevAbs ? -1 : 0);
        runLen = (dir != 0 && dir == runDir) ? runLen + 1 : 1;
        runDir = dir;
        if (cAbs > kEscapeHi && dir == 1 && runLen >= kEscapeRun) return SampleFate::ToInfinity;
        if (cAbs < kEscapeLo && dir == -1 && runLen >= kEscapeRun) return SampleFate::ToZero;
        prevAbs = cAbs;
    }
    return SampleFate::Undecided;
}

PixelLabel combine_fates(int julia, int toZero, int toInf, int undecided, int total) {
    if (julia > 0) return PixelLabel::JuliaCandidate;
    if (undecided > 0) return PixelLabel::Unknown;
    if (toZero == total) return PixelLabel::FatouAttracting;
    if (toInf == total) return PixelLabel::FatouEscaping;
    return PixelLabel::Unknown; // samples disagree about the direction
}

cplx pixel_center(const GridWindow& w, int row, int col) {
    const double dx = (w.reMax - w.reMin) / w.res;
    const double dy = (w.imMax - w.imMin) / w.res;
    return {w.reMin + (col + 0.5) * dx, w.imMax - (row + 0.5) * dy};
}

void check_window(const GridWindow& w) {
    if (!(w.reMin < w.reMax) || !(w.imMin < w.imMax))
        throw std::invalid_argument("grid window must have positive extent");
    if (w.res < 1 || w.res > 8192) throw std::invalid_argument("grid resolution out of range");
}

double effective_offset(const GridWindow& w, const GridParams& p) {
    return p.probeOffset > 0.0 ? p.probeOffset : (w.reMax - w.reMin) / (4.0 * w.res);
}

} // namespace

MembershipGrid estimate_julia_grid(const ScenarioSpec& spec, const StatePoint& w,
                                   const GridWindow& win, const GridParams& par) {
    if (spec.fiber != ScenarioSpec::Fiber::Sphere)
        throw unsupported_map("grid estimation needs a sphere fiber");
    check_window(win);
    if (par.maxDepth < 1 || par.wordSamples < 1)
        throw std::invalid_argument("grid estimation needs positive depth and sample count");

    const double h = effective_offset(win, par);
    MembershipGrid grid;
    grid.window = win;
    const std::int64_t nPix = static_cast<std::int64_t>(win.res) * win.res;
    grid.labels.assign(nPix, PixelLabel::Unknown);
    grid.probeDiam.assign(nPix, 0.0);

    parallel_chunks(nPix, par.workers, win.res, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t pix = begin; pix < end; ++pix) {
            const int row = static_cast<int>(pix / win.res);
            const int col = static_cast<int>(pix % win.res);
            const cplx center = pixel_center(win, row, col);

            int julia = 0, toZero = 0, toInf = 0, undecided = 0;
            double maxDiam = 0.0;
            for (int s = 0; s < par.wordSamples; ++s) {
                // per (pixel, sample) stream keeps the estimate independent of
                // worker partitioning
                const auto path = sample_path_with_maps(
                    spec, w, par.maxDepth, par.seed,
                    derive_stream(0x9d1dull, static_cast<std::uint64_t>(pix),
                                  static_cast<std::uint64_t>(s)));
                switch (classify_sample(path.maps, par.maxDepth, center, h, par.diamThreshold,
                                        maxDiam)) {
                    case SampleFate::Julia: ++julia; break;
                    case SampleFate::ToZero: ++toZero; break;
                    case SampleFate::ToInfinity: ++toInf; break;
                    case SampleFate::Undecided: ++undecided; break;
                }
            }
            grid.labels[pix] = combine_fates(julia, toZero, toInf, undecided, par.wordSamples);
            grid.probeDiam[pix] = maxDiam;
        }
    });
    return grid;
}

MembershipGrid estimate_path_julia_grid(const PathSample& path, const GridWindow& win,
                                        const GridParams& par) {
    check_window(win);
    if (path.maps.empty()) throw std::invalid_argument("path carries no maps");
    const int depth = std::min<int>(par.maxDepth, static_cast<int>(path.maps.size()));

    const double h = effective_offset(win, par);
    MembershipGrid grid;
    grid.window = win;
    const std::int64_t nPix = static_cast<std::int64_t>(win.res) * win.res;
    grid.labels.assign(nPix, PixelLabel::Unknown);
    grid.probeDiam.assign(nPix, 0.0);

    parallel_chunks(nPix, par.workers, win.res, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t pix = begin; pix < end; ++pix) {
            const int row = static_cast<int>(pix / win.res);
            const int col = static_cast<int>(pix % win.res);
            double maxDiam = 0.0;
            const SampleFate fate = classify_sample(path.maps, depth, pixel_center(win, row, col),
                                                    h, par.diamThreshold, maxDiam);
            switch (fate) {
                case SampleFate::Julia: grid.labels[pix] = PixelLabel::JuliaCandidate; break;
                case SampleFate::ToZero: grid.labels[pix] = PixelLabel::FatouAttracting; break;
                case SampleFate::ToInfinity: grid.labels[pix] = PixelLabel::FatouEscaping; break;
                case SampleFate::Undecided: grid.labels[pix] = PixelLabel::Unknown; break;
            }
            grid.probeDiam[pix] = maxDiam;
        }
    });
    return grid;
}

double pixel_measure(const MembershipGrid& grid, PixelLabel label) {
    if (grid.labels.empty()) throw std::invalid_argument("empty grid");
    std::int64_t hits = 0;
    for (const auto l : grid.labels) hits += l == label;
    return static_cast<double>(hits) / static_cast<double>(grid.labels.size());
}

std::vector<std::pair<double, double>> radial_profile(const MembershipGrid& grid, PixelLabel label,
                                                      int bins) {
    if (bins < 1) throw std::invalid_argument("radial profile needs at least one bin");
    const auto& w = grid.window;
    const double maxR = std::max({std::hypot(w.reMin, w.imMin), std::hypot(w.reMin, w.imMax),
                                  std::hypot(w.reMax, w.imMin), std::hypot(w.reMax, w.imMax)});
    std::vector<std::int64_t> total(bins, 0), hit(bins, 0);
    for (int row = 0; row < w.res; ++row)
        for (int col = 0; col < w.res; ++col) {
            const double r = std::abs(pixel_center(w, row, col));
            int b = static_cast<int>(r / maxR * bins);
            b = std::clamp(b, 0, bins - 1);
            ++total[b];
            hit[b] += grid.labels[static_cast<std::size_t>(row) * w.res + col] == label;
        }
    std::vector<std::pair<double, double>> out;
    out.reserve(bins);
    for (int b = 0; b < bins; ++b) {
        const double mid = (b + 0.5) * maxR / bins;
        const double frac = total[b] ? static_cast<double>(hit[b]) / total[b] : 0.0;
        out.emplace_back(mid, frac);
    }
    return out;
}

namespace {

void heat_rgb(double t, unsigned char rgb[3]) {
    t = std::clamp(t, 0.0, 1.0);
    const double r = std::min(1.0, 3.0 * t);
    const double g = std::clamp(3.0 * t - 1.0, 0.0, 1.0);
    const double b = std::clamp(3.0 * t - 2.0, 0.0, 1.0);
    rgb[0] = static_cast<unsigned char>(std::lround(255.0 * r));
    rgb[1] = static_cast<unsigned char>(std::lround(255.0 * g));
    rgb[2] = static_cast<unsigned char>(std::lround(255.0 * b));
}

} // namespace

std::string render_ppm(const MembershipGrid& grid, const std::string& palette,
                       const std::string& comment) {
    if (palette != "bw" && palette != "heat")
        throw std::invalid_argument("palette must be bw or heat");
    const int res = grid.window.res;
    std::string out = "P6\n";
    if (!comment.empty()) out += "# " + comment + "\n";
    out += std::to_string(res) + " " + std::to_string(res) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(res) * res * 3);
    for (std::size_t pix = 0; pix < grid.labels.size(); ++pix) {
        unsigned char rgb[3];
        if (palette == "bw") {
            const unsigned char v =
                grid.labels[pix] == PixelLabel::JuliaCandidate ? 0x00 : 0xFF;
            rgb[0] = rgb[1] = rgb[2] = v;
        } else {
            heat_rgb(grid.probeDiam[pix] / 2.0, rgb); // chordal diameter tops out at 2
        }
        out.append(reinterpret_cast<const char*>(rgb), 3);
    }
    return out;
}

const char* to_string(PixelLabel label) {
    switch (label) {
        case PixelLabel::FatouAttracting: return "fatou-attracting";
        case PixelLabel::FatouEscaping: return "fatou-escaping";
        case PixelLabel::JuliaCandidate: return "julia-candidate";
        case PixelLabel::Unknown: return "unknown";
    }
    return "?";
}

} // namespace rscc
