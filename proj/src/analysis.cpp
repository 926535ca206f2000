#include "rscc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rscc/errors.hpp"
#include "rscc/rng.hpp"

namespace rscc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int drive_index(const ScenarioSpec& spec, const Drive& drive, const StatePoint& w, int step,
                CounterRng& rng) {
    const auto probs = transition_probs(spec, w);
    if (!drive.pattern.empty()) {
        const int x = drive.pattern[step % drive.pattern.size()];
        if (x < 0 || x >= spec.index_count())
            throw std::invalid_argument("forced drive names an unknown index");
        if (!(probs[x] > 0.0))
            throw std::invalid_argument("forced drive hits an inadmissible index at state " +
                                        to_string(w));
        return x;
    }
    double cum = 0.0;
    const double u = rng.next_double();
    int last = -1;
    for (int x = 0; x < spec.index_count(); ++x) {
        if (!(probs[x] > 0.0)) continue;
        cum += probs[x];
        last = x;
        if (u < cum) return x;
    }
    return last;
}

// limit-state extrapolation over the trajectory tail. ladder spaces converge
// structurally (depth keeps growing => accumulation point 0); real intervals use
// a Cauchy tail and snap to a clamp endpoint when the tail sits next to one.
std::optional<StatePoint> extrapolate_limit(const ScenarioSpec& spec,
                                            const std::vector<StatePoint>& traj, double convTol) {
    const int tail = 10;
    if (static_cast<int>(traj.size()) < tail + 1) return std::nullopt;
    const auto* last = &traj[traj.size() - tail];

    if (spec.space.kind == StateSpace::Kind::Ladder) {
        bool climbing = true, constant = true;
        for (int i = 0; i + 1 < tail; ++i) {
            const auto& a = last[i];
            const auto& b = last[i + 1];
            climbing = climbing && a.kind == StatePoint::Kind::Ladder &&
                       b.kind == StatePoint::Kind::Ladder && b.n > a.n && a.n >= 1;
            constant = constant && a == b;
        }
        if (climbing) return StatePoint::ladder(0);
        if (constant) return last[tail - 1];
        return std::nullopt;
    }

    for (int i = 0; i < tail; ++i)
        for (int j = i + 1; j < tail; ++j)
            if (state_distance(last[i], last[j]) > convTol) return std::nullopt;

    if (spec.space.kind == StateSpace::Kind::RealInterval) {
        const double v = last[tail - 1].value;
        if (std::abs(v - spec.space.lo) <= 10.0 * convTol) return StatePoint::real(spec.space.lo);
        if (std::abs(v - spec.space.hi) <= 10.0 * convTol) return StatePoint::real(spec.space.hi);
        return last[tail - 1];
    }
    return last[tail - 1]; // discrete tail, constant by the pairwise check
}

} // namespace

bool no_jump_discrete_check(const ScenarioSpec& spec) {
    return spec.space.kind == StateSpace::Kind::Discrete;
}

JumpReport detect_jump(const ScenarioSpec& spec, const StatePoint& w0, const Drive& drive,
                       int horizon, int kernelDepth, double convTol) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    JumpReport report;

    if (no_jump_discrete_check(spec)) {
        report.verdict = JumpReport::Verdict::NoJumpWithinHorizon;
        report.note = "discrete state space, jumps are excluded outright";
        return report;
    }
    if (!spec.radial) {
        report.verdict = JumpReport::Verdict::NotApplicable;
        report.note = "no radial classes declared, kernel certificates unavailable";
        return report;
    }

    CounterRng rng{drive.seed, 0x6a75ull, 0};
    std::vector<StatePoint> traj{w0};
    bool allEmpty = true;

    // the horizon is an upper bound: once the tail is Cauchy at convTol the limit
    // is determined and further steps only replay the fixed point (in floating
    // point they can land exactly on it, which the true trajectory never does)
    auto tail_converged = [&] {
        const int tail = 10;
        if (static_cast<int>(traj.size()) < tail + 1) return false;
        const auto* last = &traj[traj.size() - tail];
        for (int i = 0; i < tail; ++i)
            for (int j = i + 1; j < tail; ++j)
                if (state_distance(last[i], last[j]) > convTol) return false;
        return true;
    };

    StatePoint cur = w0;
    for (int k = 0; k <= horizon; ++k) {
        JumpStep step;
        step.k = k;
        step.w = cur;
        step.cert = kernel_julia_depth(spec, cur, kernelDepth);
        allEmpty = allEmpty && step.cert.verdict == KernelCertificate::Verdict::EmptyAtDepth;
        report.steps.push_back(std::move(step));
        if (k == horizon || tail_converged()) break;
        cur = update_state(spec, cur, drive_index(spec, drive, cur, k, rng));
        traj.push_back(cur);
    }

    const auto limit = extrapolate_limit(spec, traj, convTol);
    report.converged = limit.has_value();
    if (limit) {
        report.limit = *limit;
        report.limitCert = kernel_julia_depth(spec, *limit, kernelDepth);
    }

    const bool limitNonempty =
        report.limitCert &&
        report.limitCert->verdict == KernelCertificate::Verdict::ExactNonempty;
    if (allEmpty && report.converged && limitNonempty) {
        report.verdict = JumpReport::Verdict::JumpDetected;
        report.note = "kernel empty along the trajectory, nonempty at the limit state";
    } else {
        report.verdict = JumpReport::Verdict::NoJumpWithinHorizon;
        if (!allEmpty)
            report.note = "kernel not certified empty along the whole trajectory";
        else if (!report.converged)
            report.note = "trajectory did not settle within the horizon";
        else
            report.note = "kernel stays empty at the limit state";
    }
    return report;
}

IrreducibilityReport check_irreducible(const ScenarioSpec& spec,
                                       const std::vector<StatePoint>& states, int depth,
                                       double projTol) {
    if (states.size() < 2) throw std::invalid_argument("need at least two states");
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    for (const auto& w : states)
        if (!spec.space.contains(w))
            throw std::domain_error("state " + to_string(w) + " lies outside the state space");
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            if (state_distance(states[i], states[j]) <= projTol && states[i].kind == states[j].kind)
                throw std::invalid_argument("given states collide within the projection tolerance");

    const int n = static_cast<int>(states.size());
    const double tol = std::max(projTol, kDedupTol);

    auto project = [&](const StatePoint& w) -> int {
        int best = -1;
        double bestDist = kInf;
        for (int i = 0; i < n; ++i) {
            if (states[i].kind != w.kind) continue;
            const double d = state_distance(states[i], w);
            if (d < bestDist) {
                bestDist = d;
                best = i;
            }
        }
        return bestDist <= tol ? best : -1;
    };

    // induced edges; every state must keep at least one admissible move inside the set
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        const auto probs = transition_probs(spec, states[i]);
        bool anyInside = false;
        for (int x = 0; x < spec.index_count(); ++x) {
            if (!(probs[x] > 0.0)) continue;
            const int j = project(update_state(spec, states[i], x));
            if (j < 0) continue;
            anyInside = true;
            if (std::find(adj[i].begin(), adj[i].end(), j) == adj[i].end()) adj[i].push_back(j);
        }
        if (!anyInside)
            throw std::invalid_argument("closure violation: every admissible update leaves the "
                                        "given set from state " +
                                        to_string(states[i]));
    }

    // depth-bounded BFS per source
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::vector<int> reachCount(n, 0);
    for (int s = 0; s < n; ++s) {
        std::vector<int> frontier{s};
        reach[s][s] = true;
        reachCount[s] = 1;
        for (int level = 0; level < depth && !frontier.empty(); ++level) {
            std::vector<int> next;
            for (int u : frontier)
                for (int v : adj[u])
                    if (!reach[s][v]) {
                        reach[s][v] = true;
                        ++reachCount[s];
                        next.push_back(v);
                    }
            frontier = std::move(next);
        }
    }

    IrreducibilityReport out;
    out.irreducible = true;
    // witness rule: the most absorbing source first (smallest reach set, ties by
    // input order), then the unreachable target with the smallest embedding
    int worstSource = -1;
    for (int s = 0; s < n; ++s) {
        if (reachCount[s] == n) continue;
        out.irreducible = false;
        if (worstSource < 0 || reachCount[s] < reachCount[worstSource]) worstSource = s;
    }
    if (!out.irreducible) {
        int target = -1;
        for (int v = 0; v < n; ++v) {
            if (reach[worstSource][v]) continue;
            if (target < 0 || states[v].numeric() < states[target].numeric()) target = v;
        }
        out.witness = std::make_pair(states[worstSource], states[target]);
    }
    return out;
}

PropagationReport propagation_check(const ScenarioSpec& spec,
                                    const std::vector<StatePoint>& states, int kernelDepth) {
    if (states.empty()) throw std::invalid_argument("need at least one state");
    PropagationReport out;
    int empties = 0;
    for (const auto& w : states) {
        out.certs.push_back(kernel_julia_depth(spec, w, kernelDepth));
        empties += out.certs.back().verdict == KernelCertificate::Verdict::EmptyAtDepth;
    }
    if (empties == 0) {
        out.holds = true;
        out.vacuous = true; // nothing was empty, the dichotomy is untested
    } else {
        out.holds = empties == static_cast<int>(states.size());
        out.vacuous = false;
    }
    return out;
}

FatteningTrace fattening_experiment(double eps, int horizon, std::uint64_t seed, double y0,
                                    bool forcedFirstIndex) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (!(y0 > 0.0 && y0 < 0.125))
        throw std::invalid_argument("y0 must lie in (0, 1/8), inside every forward image");

    const ScenarioSpec spec = builtin_scenario("fattening");
    FatteningTrace trace;
    trace.eps = eps;
    trace.y0 = y0;
    trace.forcedFirstIndex = forcedFirstIndex;

    // kernel geometry of this scenario, exact: the kernel set is {0} at the
    // accumulation state and empty everywhere else on the ladder. fattening by
    // eps admits {0} as soon as the current state sits eps-close to 0, because
    // the accumulation state is reachable in one step from every ladder state.
    CounterRng rng{seed, 0x666174ull, 0};
    StatePoint w = StatePoint::ladder(1);
    double y = y0;
    for (int k = 0; k <= horizon; ++k) {
        FatteningRow row;
        row.k = k;
        row.w = w;
        row.y = y;
        const bool atAccumulation = w.kind == StatePoint::Kind::Ladder && w.n == 0;
        row.distUnfattened = atAccumulation ? y : kInf;
        row.distThickened = (atAccumulation || state_distance(w, StatePoint::ladder(0)) < eps)
                                ? y
                                : kInf;
        trace.rows.push_back(row);
        if (k == horizon) break;

        int x = 0;
        if (!forcedFirstIndex) {
            const auto probs = transition_probs(spec, w);
            x = rng.next_double() < probs[0] ? 0 : 1;
        }
        y = apply_map(spec.tau[x].maps[0], SpherePoint::at(y)).z.real();
        w = update_state(spec, w, x);
    }

    // mass of the all-first-index event, truncated where the factors stop mattering
    double prod = 1.0;
    const int cutoff = std::min(horizon, 60);
    StatePoint v = StatePoint::ladder(1);
    for (int k = 0; k < cutoff; ++k) {
        prod *= transition_probs(spec, v)[0];
        v = update_state(spec, v, 0);
    }
    trace.eventProbability = prod;
    return trace;
}

SkewStepResult skew_step(const ScenarioSpec& spec, const PathSample& path, const SpherePoint& y,
                         int radiusDepth) {
    if (path.word.empty()) throw std::invalid_argument("cannot shift an empty path");

    SkewStepResult out;
    out.image = apply_map(path.maps[0], y);

    PathSample shifted;
    shifted.word.assign(path.word.begin() + 1, path.word.end());
    shifted.states.assign(path.states.begin() + 1, path.states.end());
    shifted.maps.assign(path.maps.begin() + 1, path.maps.end());
    shifted.mapIdx.assign(path.mapIdx.begin() + 1, path.mapIdx.end());
    const double mass = cylinder_prob(spec, shifted.states.front(), shifted.word);
    double logWeights = 0.0;
    for (std::size_t k = 0; k < shifted.word.size(); ++k)
        logWeights += std::log(spec.tau[shifted.word[k]].weights[shifted.mapIdx[k]]);
    shifted.logProb = std::log(mass) + logWeights;
    out.shifted = std::move(shifted);

    bool allMonomial = true;
    for (const auto& m : path.maps) allMonomial = allMonomial && m.is_monomial() && m.d >= 2;
    if (allMonomial && static_cast<int>(path.maps.size()) > radiusDepth) {
        const auto full = path_julia_radius([&](int k) { return path.maps[k]; }, radiusDepth);
        const auto tail = path_julia_radius([&](int k) { return path.maps[k + 1]; }, radiusDepth);
        const double pulled = inverse_log_action(path.maps[0])(tail.t);
        out.radialResidual = std::abs(full.t - pulled);
    }
    return out;
}

} // namespace rscc
