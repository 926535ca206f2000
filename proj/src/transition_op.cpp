#include "rscc/transition_op.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rscc/errors.hpp"
#include "rscc/rng.hpp"

namespace rscc {

TestFunction TestFunction::one() { return {}; }

TestFunction TestFunction::state_coord() {
    TestFunction f;
    f.kind = Kind::StateCoord;
    return f;
}

TestFunction TestFunction::radial_bump(double s0, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("radial bump width must be positive");
    TestFunction f;
    f.kind = Kind::RadialBump;
    f.s0 = s0;
    f.sigma = sigma;
    return f;
}

TestFunction TestFunction::clipped_log(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("clipped log needs lo < hi");
    TestFunction f;
    f.kind = Kind::ClippedLogMod;
    f.lo = lo;
    f.hi = hi;
    return f;
}

double TestFunction::operator()(const ProductPoint& p) const {
    switch (kind) {
        case Kind::One:
            return 1.0;
        case Kind::StateCoord:
            return p.w.numeric();
        case Kind::RadialBump: {
            if (!p.y.finite) return 0.0;
            const double r = std::abs(p.y.z);
            if (r == 0.0) return 0.0;
            const double u = (std::log(r) - s0) / sigma;
            return std::exp(-u * u);
        }
        case Kind::ClippedLogMod: {
            if (!p.y.finite) return hi;
            const double r = std::abs(p.y.z);
            if (r == 0.0) return lo;
            return std::clamp(std::log(r), lo, hi);
        }
    }
    return 0.0;
}

const char* TestFunction::name() const {
    switch (kind) {
        case Kind::One: return "one";
        case Kind::StateCoord: return "state-coord";
        case Kind::RadialBump: return "radial-bump";
        case Kind::ClippedLogMod: return "clipped-log";
    }
    return "?";
}

double apply_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p) {
    const auto probs = transition_probs(spec, p.w);
    double acc = 0.0;
    for (int x = 0; x < spec.index_count(); ++x) {
        if (!(probs[x] > 0.0)) continue;
        const StatePoint wx = update_state(spec, p.w, x);
        const auto& dist = spec.tau[x];
        double inner = 0.0;
        for (std::size_t m = 0; m < dist.maps.size(); ++m)
            inner += dist.weights[m] * phi({apply_map(dist.maps[m], p.y), wx});
        acc += probs[x] * inner;
    }
    return acc;
}

namespace {

double iterate_rec(const ScenarioSpec& spec, const TestFunction& phi, const SpherePoint& y,
                   const StatePoint& w, int n, std::uint64_t cap, std::uint64_t& leaves) {
    if (n == 0) {
        if (++leaves > cap) throw resource_error("branch recursion exceeded its leaf cap");
        return phi({y, w});
    }
    const auto probs = transition_probs(spec, w);
    double acc = 0.0;
    for (int x = 0; x < spec.index_count(); ++x) {
        if (!(probs[x] > 0.0)) continue;
        const StatePoint wx = update_state(spec, w, x);
        const auto& dist = spec.tau[x];
        double inner = 0.0;
        for (std::size_t m = 0; m < dist.maps.size(); ++m)
            inner += dist.weights[m] *
                     iterate_rec(spec, phi, apply_map(dist.maps[m], y), wx, n - 1, cap, leaves);
        acc += probs[x] * inner;
    }
    return acc;
}

} // namespace

double iterate_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p, int n,
                 std::uint64_t branchCap) {
    if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
    std::uint64_t leaves = 0;
    return iterate_rec(spec, phi, p.y, p.w, n, branchCap, leaves);
}

double word_sum_oracle(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p,
                       int n, std::uint64_t branchCap) {
    if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
    if (n == 0) return phi(p);

    // explicit double sum: over admissible words, then over map tuples per word.
    // map tuples run through an odometer; the composition is evaluated by walking
    // the fiber point forward step by step.
    const auto words = admissible_words(spec, p.w, n);
    std::uint64_t terms = 0;
    double total = 0.0;
    for (const auto& word : words) {
        std::vector<StatePoint> states{p.w};
        for (int x : word) states.push_back(update_state(spec, states.back(), x));
        const double mass = cylinder_prob(spec, p.w, word);

        std::vector<std::size_t> pick(word.size(), 0);
        for (;;) {
            if (++terms > branchCap)
                throw resource_error("word-sum enumeration exceeded its term cap");
            SpherePoint y = p.y;
            double weight = mass;
            for (std::size_t k = 0; k < word.size(); ++k) {
                const auto& dist = spec.tau[word[k]];
                y = apply_map(dist.maps[pick[k]], y);
                weight *= dist.weights[pick[k]];
            }
            total += weight * phi({y, states.back()});

            // advance the odometer
            std::size_t k = 0;
            for (; k < pick.size(); ++k) {
                if (++pick[k] < spec.tau[word[k]].maps.size()) break;
                pick[k] = 0;
            }
            if (k == pick.size()) break;
        }
    }
    return total;
}

McEstimate mc_estimate_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p,
                         int n, std::int64_t samples, std::uint64_t seed, int workers) {
    if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    (void)workers; // sampling is cheap at desk scale; kept sequential on purpose

    double sum = 0.0, sumSq = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        const auto path = sample_path_with_maps(spec, p.w, n, seed,
                                                derive_stream(0x6d63ull, static_cast<std::uint64_t>(s)));
        SpherePoint y = p.y;
        for (const auto& m : path.maps) y = apply_map(m, y);
        const double val = phi({y, path.states.back()});
        sum += val;
        sumSq += val * val;
    }
    McEstimate est;
    est.samples = samples;
    est.mean = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, (sumSq - sum * sum / static_cast<double>(samples)) /
                          static_cast<double>(samples - 1));
    est.stderr_ = std::sqrt(var / static_cast<double>(samples));
    return est;
}

namespace {

// euclidean offset that lands at chordal distance delta from y, along direction
// theta; bisection on the monotone stretch of the chordal distance
cplx probe_at(const SpherePoint& y, double theta, double delta) {
    const cplx dir{std::cos(theta), std::sin(theta)};
    // first-order guess, then bracket and bisect
    double guess = delta * (1.0 + std::norm(y.z)) / 2.0;
    double lo = 0.0, hi = guess;
    auto chord = [&](double rho) {
        return chordal_distance(y, SpherePoint::at(y.z + rho * dir));
    };
    for (int i = 0; i < 200 && chord(hi) < delta; ++i) hi *= 2.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chord(mid) < delta ? lo : hi) = mid;
    }
    return y.z + 0.5 * (lo + hi) * dir;
}

} // namespace

EquiDiagnostic equicontinuity_diagnostic(const ScenarioSpec& spec, const TestFunction& phi,
                                         const ProductPoint& p, std::vector<double> radii,
                                         int nMax) {
    if (!p.y.finite) throw std::invalid_argument("probe rings need a finite base point");
    if (nMax < 0) throw std::invalid_argument("nMax must be nonnegative");
    for (double d : radii)
        if (!(d > 0.0 && d < 2.0)) throw std::invalid_argument("probe radii must lie in (0,2)");

    EquiDiagnostic out;
    out.radii = radii;
    out.osc.resize(radii.size());
    out.supOverN.assign(radii.size(), 0.0);

    std::vector<double> base(nMax + 1);
    for (int n = 0; n <= nMax; ++n) base[n] = iterate_M(spec, phi, p, n);

    for (std::size_t r = 0; r < radii.size(); ++r) {
        out.osc[r].assign(nMax + 1, 0.0);
        for (int j = 0; j < 8; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / 8.0;
            const ProductPoint probe{SpherePoint::at(probe_at(p.y, theta, radii[r])), p.w};
            for (int n = 0; n <= nMax; ++n) {
                const double dev = std::abs(iterate_M(spec, phi, probe, n) - base[n]);
                out.osc[r][n] = std::max(out.osc[r][n], dev);
            }
        }
        out.supOverN[r] = *std::max_element(out.osc[r].begin(), out.osc[r].end());
    }
    return out;
}

} // namespace rscc
