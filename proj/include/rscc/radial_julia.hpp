#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "radial_set.hpp"
#include "scenario.hpp"

namespace rscc {

inline constexpr double kRadialTol = 1e-9;
inline constexpr std::size_t kIntervalCap = 200'000;

// attractor of the inverse-branch system {s -> (s - log|c_i|)/d_i} started from
// the hull of the branch fixed points. the iteration is monotone decreasing, so
// stopping once a step moves less than tol*(1 - maxRatio) leaves the result
// within tol of the true set, comfortably inside the advertised tol/(1 - maxRatio).
RadialSet semigroup_julia_radial(const std::vector<MapSpec>& maps, double tol = kRadialTol);

// exact preimage of a radial set under one monomial
RadialSet radial_preimage(const MapSpec& m, const RadialSet& s);

// per-class greatest fixed point of the graph-directed inverse system declared
// by the scenario's radial classes. requires monomial maps of degree >= 2.
std::map<std::string, RadialSet> statewise_julia_radial(const ScenarioSpec& spec,
                                                        double tol = kRadialTol);

struct KernelCertificate {
    enum class Verdict { EmptyAtDepth, ExactNonempty, UnknownSuperset };
    Verdict verdict = Verdict::UnknownSuperset;
    int depth = 0;  // least emptiness depth, or the probed depth for the other verdicts
    RadialSet set;  // exact set for ExactNonempty, depth-bounded superset otherwise
};

// depth-bounded kernel certificate at state w. EmptyAtDepth(k) certifies the kernel
// is empty (a finite superset of constraints already has empty intersection);
// ExactNonempty is only issued on deterministic absorbing cycles, where the kernel
// is the Julia circle of the cycle composition.
KernelCertificate kernel_julia_depth(const ScenarioSpec& spec, const StatePoint& w, int depth,
                                     double tol = kRadialTol);

struct PathRadius {
    double t = 0.0;         // log radius of the path Julia circle
    double errorBound = 0.0; // tail bound of the truncated series
};

// log radius of the path Julia circle for a fixed map path (step -> monomial),
// via the partial sums of sum_k (-log|c_k|) / (d_1...d_k)
PathRadius path_julia_radius(const std::function<MapSpec(int)>& mapAt, int depth);

} // namespace rscc
