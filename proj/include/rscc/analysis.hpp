#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radial_julia.hpp"
#include "scenario.hpp"

namespace rscc {

// how the chain is driven during a jump probe: a forced index pattern (cycled)
// or sampling from the scenario's own transition kernel
struct Drive {
    std::vector<int> pattern; // empty means sample
    std::uint64_t seed = 0;
    static Drive forced(std::vector<int> p) { return {std::move(p), 0}; }
    static Drive sampled(std::uint64_t seed) { return {{}, seed}; }
};

struct JumpStep {
    int k = 0;
    StatePoint w;
    KernelCertificate cert;
};

struct JumpReport {
    enum class Verdict { JumpDetected, NoJumpWithinHorizon, NotApplicable };
    Verdict verdict = Verdict::NotApplicable;
    std::vector<JumpStep> steps;
    bool converged = false;
    std::optional<StatePoint> limit;
    std::optional<KernelCertificate> limitCert;
    std::string note;
};

// walks the driven trajectory, certifies kernel emptiness at every visited state,
// extrapolates the limit state, and compares the limit's certificate against the
// trajectory's. a jump needs: empty all along, convergence, nonempty at the limit.
// discrete state spaces short-circuit to NoJumpWithinHorizon.
JumpReport detect_jump(const ScenarioSpec& spec, const StatePoint& w0, const Drive& drive,
                       int horizon, int kernelDepth = 2, double convTol = 1e-6);

// true when the observed-state space carries the discrete topology, which rules
// the jump phenomenon out wholesale
bool no_jump_discrete_check(const ScenarioSpec& spec);

struct IrreducibilityReport {
    bool irreducible = false;
    // a failing pair: (source, target the source never reaches)
    std::optional<std::pair<StatePoint, StatePoint>> witness;
};

// reachability proxy on the finite chain induced by projecting one-step updates
// onto the given states (within projTol). a state whose every admissible update
// leaves the set entirely is a closure violation and raises invalid_argument.
IrreducibilityReport check_irreducible(const ScenarioSpec& spec,
                                       const std::vector<StatePoint>& states, int depth,
                                       double projTol = 1e-12);

struct PropagationReport {
    bool holds = false;   // emptiness at one state propagated to all of them
    bool vacuous = false; // no emptiness anywhere, nothing to propagate
    std::vector<KernelCertificate> certs;
};

// on an irreducible state set, kernel emptiness is an all-or-nothing affair;
// this checks the dichotomy on the given states at the given certificate depth
PropagationReport propagation_check(const ScenarioSpec& spec,
                                    const std::vector<StatePoint>& states, int kernelDepth);

struct FatteningRow {
    int k = 0;
    StatePoint w;
    double y = 0.0;
    double distUnfattened = 0.0; // distance to the raw kernel set at the current state
    double distThickened = 0.0;  // distance to the eps-fattened kernel set
};

struct FatteningTrace {
    double eps = 0.0;
    double y0 = 0.0;
    bool forcedFirstIndex = true;
    std::vector<FatteningRow> rows;
    double eventProbability = 0.0; // mass of the all-first-index event, truncated product
};

// the halving-maps ladder run: raw kernel distances stay infinite along the
// trajectory while the eps-fattened distances drop to zero once the state enters
// the eps-ball of the accumulation point. the contrast is the whole point.
FatteningTrace fattening_experiment(double eps, int horizon, std::uint64_t seed, double y0 = 0.1,
                                    bool forcedFirstIndex = true);

struct SkewStepResult {
    PathSample shifted;   // the path with its first step consumed
    SpherePoint image;    // first map applied to the fiber point
    // |t(path) - pullback of t(shifted path)| for all-monomial paths; checks the
    // one-step compatibility of path Julia radii
    std::optional<double> radialResidual;
};

SkewStepResult skew_step(const ScenarioSpec& spec, const PathSample& path, const SpherePoint& y,
                         int radiusDepth = 40);

} // namespace rscc
