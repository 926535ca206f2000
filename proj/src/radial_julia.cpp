#include "rscc/radial_julia.hpp"

#include <cmath>
#include <stdexcept>

#include "rscc/errors.hpp"

namespace rscc {

namespace {

// closed-interval intersections get this much slack so sets that touch in a
// single exactly-computed point are not split by the last rounding step
constexpr double kTouchSlack = 1e-12;

void require_radial_monomial(const MapSpec& m, const char* who) {
    if (!m.is_monomial()) throw unsupported_map(std::string(who) + " needs monomial maps");
    if (m.d < 2)
        throw std::invalid_argument(std::string(who) + " needs degrees >= 2 so inverse branches contract");
}

double branch_fixed_point(const MapSpec& m) {
    // fixed point of s -> (s - log|c|)/d
    return -std::log(std::abs(m.c)) / (static_cast<double>(m.d) - 1.0);
}

void check_interval_cap(const RadialSet& s) {
    if (s.size() > kIntervalCap)
        throw resource_error("radial interval list exceeded the cap of " +
                             std::to_string(kIntervalCap));
}

} // namespace

RadialSet radial_preimage(const MapSpec& m, const RadialSet& s) {
    require_radial_monomial(m, "radial_preimage");
    return affine_image(inverse_log_action(m), s);
}

RadialSet semigroup_julia_radial(const std::vector<MapSpec>& maps, double tol) {
    if (maps.empty()) throw std::invalid_argument("semigroup_julia_radial wants at least one map");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    double fpLo = 0.0, fpHi = 0.0, maxRatio = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        require_radial_monomial(maps[i], "semigroup_julia_radial");
        const double fp = branch_fixed_point(maps[i]);
        fpLo = i == 0 ? fp : std::min(fpLo, fp);
        fpHi = i == 0 ? fp : std::max(fpHi, fp);
        maxRatio = std::max(maxRatio, 1.0 / maps[i].d);
    }

    // every inverse branch maps the fixed-point hull into itself, so iterating
    // from the hull descends monotonically onto the attractor
    RadialSet current = RadialSet::interval(fpLo, fpHi);
    const double stopAt = tol * (1.0 - maxRatio);
    for (int iter = 0; iter < 10'000; ++iter) {
        RadialSet next;
        for (const auto& m : maps)
            next = set_union(next, affine_image(inverse_log_action(m), current));
        check_interval_cap(next);
        const double step = radial_hausdorff(next, current);
        current = std::move(next);
        if (step <= stopAt) return current;
    }
    throw resource_error("semigroup_julia_radial failed to settle; tolerance too tight");
}

std::map<std::string, RadialSet> statewise_julia_radial(const ScenarioSpec& spec, double tol) {
    if (!spec.radial) throw std::invalid_argument("scenario declares no radial classes");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    validate_radial_classes(spec);
    const auto& r = *spec.radial;
    const std::size_t k = r.names.size();

    double fpLo = 0.0, fpHi = 0.0, maxRatio = 0.0;
    bool first = true;
    for (std::size_t v = 0; v < k; ++v) {
        if (r.edges[v].empty())
            throw std::invalid_argument("radial class " + r.names[v] + " has no transitions");
        for (const auto& e : r.edges[v]) {
            const MapSpec& m = spec.tau[e.index].maps[e.mapIdx];
            require_radial_monomial(m, "statewise_julia_radial");
            const double fp = branch_fixed_point(m);
            fpLo = first ? fp : std::min(fpLo, fp);
            fpHi = first ? fp : std::max(fpHi, fp);
            first = false;
            maxRatio = std::max(maxRatio, 1.0 / m.d);
        }
    }

    // simultaneous descent from the global hull; the coupled map is a contraction
    // in the max Hausdorff metric with the same ratio bound
    std::vector<RadialSet> cur(k, RadialSet::interval(fpLo, fpHi));
    const double stopAt = tol * (1.0 - maxRatio);
    for (int iter = 0; iter < 10'000; ++iter) {
        std::vector<RadialSet> next(k);
        for (std::size_t v = 0; v < k; ++v) {
            for (const auto& e : r.edges[v]) {
                const MapSpec& m = spec.tau[e.index].maps[e.mapIdx];
                next[v] = set_union(next[v], affine_image(inverse_log_action(m), cur[e.succ]));
            }
            check_interval_cap(next[v]);
        }
        double step = 0.0;
        for (std::size_t v = 0; v < k; ++v)
            step = std::max(step, radial_hausdorff(next[v], cur[v]));
        cur = std::move(next);
        if (step <= stopAt) {
            std::map<std::string, RadialSet> out;
            for (std::size_t v = 0; v < k; ++v) out[r.names[v]] = cur[v];
            return out;
        }
    }
    throw resource_error("statewise_julia_radial failed to settle; tolerance too tight");
}

namespace {

// deterministic absorbing walk: from w the chain admits exactly one index with one
// map, and revisits a state within a short horizon. the kernel there is the Julia
// circle of the cycle composition, exactly.
struct DeterministicCycle {
    bool found = false;
    MapSpec composed = MapSpec::monomial(1.0, 2);
};

DeterministicCycle deterministic_cycle(const ScenarioSpec& spec, const StatePoint& w) {
    DeterministicCycle out;
    std::vector<StatePoint> path{w};
    std::vector<MapSpec> maps;
    StatePoint cur = w;
    for (int step = 0; step < 64; ++step) {
        const auto probs = transition_probs(spec, cur);
        int only = -1;
        for (int x = 0; x < spec.index_count(); ++x) {
            if (!(probs[x] > 0.0)) continue;
            if (only >= 0) return out; // branching, not deterministic
            only = x;
        }
        if (only < 0 || spec.tau[only].maps.size() != 1) return out;
        const MapSpec& m = spec.tau[only].maps[0];
        if (!m.is_monomial() || m.d < 2) return out;
        maps.push_back(m);
        cur = update_state(spec, cur, only);
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (state_distance(path[i], cur) > kDedupTol || path[i].kind != cur.kind) continue;
            // cycle closed at position i; compose the maps along the cycle
            MapSpec comp = maps[i];
            for (std::size_t j = i + 1; j < maps.size(); ++j)
                comp = compose_monomials(maps[j], comp);
            out.found = true;
            out.composed = comp;
            return out;
        }
        path.push_back(cur);
    }
    return out;
}

} // namespace

KernelCertificate kernel_julia_depth(const ScenarioSpec& spec, const StatePoint& w, int depth,
                                     double tol) {
    if (depth < 1) throw std::invalid_argument("kernel depth must be at least 1");

    const auto cycle = deterministic_cycle(spec, w);
    if (cycle.found) {
        KernelCertificate cert;
        cert.verdict = KernelCertificate::Verdict::ExactNonempty;
        cert.depth = depth;
        cert.set = RadialSet::point(branch_fixed_point(cycle.composed));
        return cert;
    }

    const auto statewise = statewise_julia_radial(spec, tol);
    const auto& r = *spec.radial;
    std::vector<RadialSet> classSet(r.names.size());
    for (std::size_t v = 0; v < r.names.size(); ++v) classSet[v] = statewise.at(r.names[v]);

    // cumulative constraint per class:
    //   C_j(v) = intersection over edges (x, m, v') of m^{-1}( S_{v'} ∩ C_{j-1}(v') )
    // which folds every admissible composition of length <= j into one pass per level.
    // admissibility patterns are constant on classes (validated), so no word tree.
    const std::size_t k = r.names.size();
    std::vector<RadialSet> prev(k);
    bool prevIsFullLine = true; // C_0 imposes no constraint
    const int start = radial_class_of(spec, w);

    for (int level = 1; level <= depth; ++level) {
        std::vector<RadialSet> cur(k);
        for (std::size_t v = 0; v < k; ++v) {
            bool firstTerm = true;
            for (const auto& e : r.edges[v]) {
                const MapSpec& m = spec.tau[e.index].maps[e.mapIdx];
                RadialSet target = prevIsFullLine
                                       ? classSet[e.succ]
                                       : set_intersection(classSet[e.succ],
                                                          inflate(prev[e.succ], kTouchSlack));
                RadialSet pulled = affine_image(inverse_log_action(m), target);
                cur[v] = firstTerm ? pulled
                                   : set_intersection(inflate(cur[v], kTouchSlack), pulled);
                firstTerm = false;
            }
            check_interval_cap(cur[v]);
        }
        prev = std::move(cur);
        prevIsFullLine = false;
        if (prev[start].is_empty()) {
            KernelCertificate cert;
            cert.verdict = KernelCertificate::Verdict::EmptyAtDepth;
            cert.depth = level;
            cert.set = RadialSet::empty();
            return cert;
        }
    }

    KernelCertificate cert;
    cert.verdict = KernelCertificate::Verdict::UnknownSuperset;
    cert.depth = depth;
    cert.set = prev[start];
    return cert;
}

PathRadius path_julia_radius(const std::function<MapSpec(int)>& mapAt, int depth) {
    if (depth < 1) throw std::invalid_argument("path radius depth must be at least 1");
    double t = 0.0;
    double denom = 1.0;
    double maxLogC = 0.0;
    int minDegree = 0;
    for (int kk = 0; kk < depth; ++kk) {
        const MapSpec m = mapAt(kk);
        require_radial_monomial(m, "path_julia_radius");
        denom *= static_cast<double>(m.d);
        const double lc = std::log(std::abs(m.c));
        t += -lc / denom;
        maxLogC = std::max(maxLogC, std::abs(lc));
        minDegree = kk == 0 ? m.d : std::min(minDegree, m.d);
    }
    PathRadius out;
    out.t = t;
    // remaining terms are bounded by maxLogC * sum_{j>depth} minDegree^{-j}
    out.errorBound = maxLogC / (denom * (static_cast<double>(minDegree) - 1.0));
    return out;
}

} // namespace rscc
