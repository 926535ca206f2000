#pragma once
#include <cstdint>
#include <vector>

#include "scenario.hpp"
#include "sphere.hpp"

namespace rscc {

inline constexpr std::uint64_t kBranchCap = 10'000'000;

struct ProductPoint {
    SpherePoint y;
    StatePoint w;
};

// observables on the product of fiber and state. all four extend continuously
// to the sphere: the radial bump dies off toward 0 and infinity, the clipped
// log modulus saturates there.
struct TestFunction {
    enum class Kind { One, StateCoord, RadialBump, ClippedLogMod };
    Kind kind = Kind::One;
    double s0 = 0.0, sigma = 1.0; // bump center and width in log radius
    double lo = -4.0, hi = 4.0;   // clipping bounds for the log modulus

    static TestFunction one();
    static TestFunction state_coord();
    static TestFunction radial_bump(double s0, double sigma);
    static TestFunction clipped_log(double lo, double hi);

    double operator()(const ProductPoint& p) const;
    const char* name() const;
};

// one exact averaging step: sum over admissible indices and their maps
double apply_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p);

// n averaging steps by branch recursion, leaves counted against the cap
double iterate_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p, int n,
                 std::uint64_t branchCap = kBranchCap);

// the same value as an explicit double sum over admissible words and map tuples.
// deliberately a separate code path from iterate_M so the two can cross-check.
double word_sum_oracle(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p,
                       int n, std::uint64_t branchCap = kBranchCap);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
};

// Monte Carlo estimate of the n-step average along sampled map paths
McEstimate mc_estimate_M(const ScenarioSpec& spec, const TestFunction& phi, const ProductPoint& p,
                         int n, std::int64_t samples, std::uint64_t seed, int workers = 1);

struct EquiDiagnostic {
    std::vector<double> radii;
    std::vector<std::vector<double>> osc; // [radius][n] worst probe deviation at level n
    std::vector<double> supOverN;         // per radius, max over n = 0..nMax
};

// oscillation of the iterates over an 8-point probe ring at each chordal radius.
// decay as the radius shrinks is the pointwise equicontinuity signal; a floor
// bounded away from zero marks a Julia point of the sampled compositions.
EquiDiagnostic equicontinuity_diagnostic(const ScenarioSpec& spec, const TestFunction& phi,
                                         const ProductPoint& p, std::vector<double> radii,
                                         int nMax);

} // namespace rscc
