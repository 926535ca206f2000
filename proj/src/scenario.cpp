#include "rscc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rscc/errors.hpp"
#include "rscc/rng.hpp"

namespace rscc {

void MapDistribution::validate() const {
    if (maps.empty()) throw std::invalid_argument("map distribution must carry at least one map");
    if (maps.size() != weights.size())
        throw std::invalid_argument("map distribution: maps and weights disagree in length");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("map weights must be strictly positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument("map weights must sum to 1");
}

bool StateSpace::contains(const StatePoint& w) const {
    switch (kind) {
        case Kind::Discrete:
            return w.kind == StatePoint::Kind::Discrete &&
                   std::find(labels.begin(), labels.end(), w.label) != labels.end();
        case Kind::RealInterval:
            return w.kind == StatePoint::Kind::Real && w.value >= lo && w.value <= hi;
        case Kind::Ladder:
            if (w.kind == StatePoint::Kind::Ladder) return true;
            return hasExtra && w.kind == StatePoint::Kind::LadderExtra && w.label == extraLabel;
    }
    return false;
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_state(const ScenarioSpec& spec, const StatePoint& w) {
    if (!spec.space.contains(w))
        throw std::domain_error("state " + to_string(w) + " lies outside the declared state space");
}

void check_index(const ScenarioSpec& spec, int x) {
    if (x < 0 || x >= spec.index_count())
        throw std::invalid_argument("unknown input index " + std::to_string(x));
}

double theta_value(const TransitionRule& t, double y) {
    switch (t.theta) {
        case TransitionRule::Theta::Constant: return t.thetaA;
        case TransitionRule::Theta::Affine: return std::clamp(t.thetaA + t.thetaB * std::abs(y), 0.0, 1.0);
        case TransitionRule::Theta::Bump: {
            const double u = (y - t.thetaC) / t.thetaS;
            return std::clamp(t.thetaA * std::exp(-u * u), 0.0, 1.0);
        }
    }
    return 0.0;
}

// states compare equal for dedup purposes: exact on tags and discrete payloads,
// kDedupTol on real payloads
bool same_state(const StatePoint& a, const StatePoint& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == StatePoint::Kind::Real) return std::abs(a.value - b.value) <= kDedupTol;
    return a == b;
}

int pick_index(const std::vector<double>& probs, double u) {
    double cum = 0.0;
    int last = -1;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
        if (probs[i] <= 0.0) continue;
        cum += probs[i];
        last = i;
        if (u < cum) return i;
    }
    return last; // u fell in the rounding sliver above the last positive entry
}

int pick_weighted(const std::vector<double>& weights, double u) {
    double cum = 0.0;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return static_cast<int>(weights.size()) - 1;
}

} // namespace

void ScenarioSpec::validate() const {
    require(!indexNames.empty(), "scenario needs at least one input index");
    {
        std::set<std::string> uniq(indexNames.begin(), indexNames.end());
        require(uniq.size() == indexNames.size(), "index names must be distinct");
    }
    require(tau.size() == indexNames.size(), "tau must carry one distribution per index");
    for (const auto& dist : tau) dist.validate();
    require(space.contains(initial), "initial state must lie in the state space");

    switch (update.family) {
        case UpdateRule::Family::Ladder:
            require(space.kind == StateSpace::Kind::Ladder, "ladder update needs a ladder state space");
            require(index_count() == 2, "ladder update expects exactly two indices");
            require(!update.ladderX2ToExtra || space.hasExtra,
                    "ladder update points at an extra state the space does not declare");
            break;
        case UpdateRule::Family::ClampAffine:
            require(space.kind == StateSpace::Kind::RealInterval,
                    "clamp-affine update needs a real interval state space");
            require(index_count() == 2, "clamp-affine update expects exactly two indices");
            require(update.alpha > 0.0 && update.alpha < 1.0, "clamp-affine alpha must lie in (0,1)");
            require(update.lo == space.lo && update.hi == space.hi,
                    "clamp bounds must match the state space bounds");
            break;
        case UpdateRule::Family::Table: {
            require(space.kind == StateSpace::Kind::Discrete, "table update needs a discrete state space");
            for (const auto& label : space.labels)
                for (int x = 0; x < index_count(); ++x)
                    require(update.table.count({label, x}) == 1,
                            "update table is missing an entry for state " + label);
            break;
        }
        case UpdateRule::Family::FeedbackTheta:
            require(space.kind == StateSpace::Kind::RealInterval,
                    "feedback update needs a real interval state space");
            require(fiber == Fiber::Interval, "feedback update identifies states with fiber points");
            require(space.lo == fiberLo && space.hi == fiberHi,
                    "feedback update needs matching state and fiber intervals");
            for (const auto& dist : tau)
                require(dist.dirac(), "feedback update needs one map per index");
            require(transition.family == TransitionRule::Family::Theta,
                    "feedback update pairs with the theta transition family");
            break;
    }

    switch (transition.family) {
        case TransitionRule::Family::LadderExp:
            require(space.kind == StateSpace::Kind::Ladder, "ladder transitions need a ladder space");
            require(index_count() == 2, "ladder transitions expect exactly two indices");
            break;
        case TransitionRule::Family::LinearProb:
            require(space.kind == StateSpace::Kind::RealInterval,
                    "linear-prob transitions need a real interval space");
            require(index_count() == 2, "linear-prob transitions expect exactly two indices");
            require(space.lo >= 0.0 && space.hi <= 1.0,
                    "linear-prob transitions need state values usable as probabilities");
            break;
        case TransitionRule::Family::Table: {
            require(space.kind == StateSpace::Kind::Discrete, "table transitions need a discrete space");
            for (const auto& label : space.labels) {
                auto it = transition.rows.find(label);
                require(it != transition.rows.end(), "transition table misses state " + label);
                require(static_cast<int>(it->second.size()) == index_count(),
                        "transition row length must equal the index count");
                double sum = 0.0;
                for (double p : it->second) {
                    require(p >= 0.0, "transition masses must be nonnegative");
                    sum += p;
                }
                require(std::abs(sum - 1.0) <= kProbTol, "transition row for " + label + " must sum to 1");
            }
            break;
        }
        case TransitionRule::Family::Theta:
            require(space.kind == StateSpace::Kind::RealInterval, "theta transitions need a real interval space");
            require(index_count() == 2, "theta transitions expect exactly two indices");
            break;
    }

    if (radial) {
        const auto& r = *radial;
        require(!r.names.empty(), "radial class declaration must name at least one class");
        std::set<std::string> uniq(r.names.begin(), r.names.end());
        require(uniq.size() == r.names.size(), "radial class names must be distinct");
        require(r.edges.size() == r.names.size(), "radial classes need one edge list per class");
        for (const auto& list : r.edges)
            for (const auto& e : list) {
                require(e.index >= 0 && e.index < index_count(), "radial edge names an unknown index");
                require(e.mapIdx >= 0 && e.mapIdx < static_cast<int>(tau[e.index].maps.size()),
                        "radial edge names an unknown map");
                require(e.succ >= 0 && e.succ < static_cast<int>(r.names.size()),
                        "radial edge names an unknown successor class");
            }
    }
}

StatePoint update_state(const ScenarioSpec& spec, const StatePoint& w, int x) {
    check_index(spec, x);
    check_state(spec, w);
    switch (spec.update.family) {
        case UpdateRule::Family::Ladder: {
            if (w.kind == StatePoint::Kind::LadderExtra) return w; // absorbing
            if (x == 0)
                return w.n == 0 ? StatePoint::ladder(0) : StatePoint::ladder(w.n + 1);
            if (spec.update.ladderX2ToExtra)
                return StatePoint::ladder_extra(spec.space.extraLabel, spec.space.extraValue);
            return StatePoint::ladder(0);
        }
        case UpdateRule::Family::ClampAffine: {
            const double mixed = (1.0 - spec.update.alpha) * w.value +
                                 spec.update.alpha * static_cast<double>(x);
            return StatePoint::real(std::clamp(mixed, spec.update.lo, spec.update.hi));
        }
        case UpdateRule::Family::Table: {
            const auto& target = spec.update.table.at({w.label, x});
            auto it = std::find(spec.space.labels.begin(), spec.space.labels.end(), target);
            return StatePoint::discrete(target,
                                        static_cast<double>(it - spec.space.labels.begin()));
        }
        case UpdateRule::Family::FeedbackTheta: {
            SpherePoint img = apply_map(spec.tau[x].maps[0], SpherePoint::at(w.value));
            return StatePoint::real(img.z.real());
        }
    }
    throw std::logic_error("unreachable update family");
}

std::vector<double> transition_probs(const ScenarioSpec& spec, const StatePoint& w) {
    check_state(spec, w);
    switch (spec.transition.family) {
        case TransitionRule::Family::LadderExp: {
            if (w.kind == StatePoint::Kind::LadderExtra) return {0.0, 1.0};
            if (w.n == 0) return {1.0, 0.0};
            const double expo = spec.transition.inverseExponent
                                    ? -1.0 / static_cast<double>(w.n)
                                    : -static_cast<double>(w.n);
            const double a = std::exp2(expo); // mass of the second index
            return {1.0 - a, a};
        }
        case TransitionRule::Family::LinearProb:
            return {1.0 - w.value, w.value};
        case TransitionRule::Family::Table:
            return spec.transition.rows.at(w.label);
        case TransitionRule::Family::Theta: {
            const double t = theta_value(spec.transition, w.value);
            return {t, 1.0 - t};
        }
    }
    throw std::logic_error("unreachable transition family");
}

double cylinder_prob(const ScenarioSpec& spec, const StatePoint& w, const Word& word) {
    StatePoint cur = w;
    double mass = 1.0;
    for (int x : word) {
        check_index(spec, x);
        const double p = transition_probs(spec, cur)[x];
        if (p <= 0.0) return 0.0;
        mass *= p;
        cur = update_state(spec, cur, x);
    }
    return mass;
}

namespace {

void words_dfs(const ScenarioSpec& spec, const StatePoint& w, int remaining, double mass,
               double minProb, std::uint64_t cap, Word& prefix, std::vector<Word>& out) {
    if (remaining == 0) {
        if (out.size() >= cap)
            throw resource_error("admissible word enumeration exceeded the cap of " +
                                 std::to_string(cap));
        out.push_back(prefix);
        return;
    }
    const auto probs = transition_probs(spec, w);
    for (int x = 0; x < spec.index_count(); ++x) {
        const double next = mass * probs[x];
        if (!(next > minProb)) continue;
        prefix.push_back(x);
        words_dfs(spec, update_state(spec, w, x), remaining - 1, next, minProb, cap, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Word> admissible_words(const ScenarioSpec& spec, const StatePoint& w, int n,
                                   double minProb, std::uint64_t cap) {
    if (n < 0) throw std::invalid_argument("word length must be nonnegative");
    check_state(spec, w);
    std::vector<Word> out;
    Word prefix;
    words_dfs(spec, w, n, 1.0, minProb, cap, prefix, out);
    return out;
}

std::vector<StatePoint> reachable_states(const ScenarioSpec& spec, const StatePoint& w, int depth,
                                         std::uint64_t cap) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    check_state(spec, w);
    std::vector<StatePoint> out;
    std::vector<StatePoint> frontier{w};
    auto seen = [&](const StatePoint& s) {
        for (const auto& t : out)
            if (same_state(s, t)) return true;
        return false;
    };
    for (int level = 0; level < depth; ++level) {
        std::vector<StatePoint> next;
        for (const auto& s : frontier) {
            const auto probs = transition_probs(spec, s);
            for (int x = 0; x < spec.index_count(); ++x) {
                if (!(probs[x] > 0.0)) continue;
                StatePoint t = update_state(spec, s, x);
                if (seen(t)) continue;
                if (out.size() >= cap)
                    throw resource_error("reachable state enumeration exceeded the cap");
                out.push_back(t);
                next.push_back(t);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

ChainSample sample_chain(const ScenarioSpec& spec, const StatePoint& w, int n, std::uint64_t seed,
                         std::uint64_t stream) {
    if (n < 0) throw std::invalid_argument("chain length must be nonnegative");
    check_state(spec, w);
    CounterRng rng{seed, stream, 0};
    ChainSample s;
    s.states.push_back(w);
    s.logProb = 0.0;
    StatePoint cur = w;
    for (int k = 0; k < n; ++k) {
        const auto probs = transition_probs(spec, cur);
        const int x = pick_index(probs, rng.next_double());
        if (x < 0) throw std::domain_error("state " + to_string(cur) + " admits no index at all");
        s.word.push_back(x);
        s.logProb += std::log(probs[x]);
        cur = update_state(spec, cur, x);
        s.states.push_back(cur);
    }
    return s;
}

PathSample sample_path_with_maps(const ScenarioSpec& spec, const StatePoint& w, int n,
                                 std::uint64_t seed, std::uint64_t stream) {
    if (n < 0) throw std::invalid_argument("path length must be nonnegative");
    check_state(spec, w);
    CounterRng rng{seed, stream, 0};
    PathSample s;
    s.states.push_back(w);
    s.logProb = 0.0;
    StatePoint cur = w;
    for (int k = 0; k < n; ++k) {
        const auto probs = transition_probs(spec, cur);
        const int x = pick_index(probs, rng.next_double());
        if (x < 0) throw std::domain_error("state " + to_string(cur) + " admits no index at all");
        const auto& dist = spec.tau[x];
        const int m = pick_weighted(dist.weights, rng.next_double());
        s.word.push_back(x);
        s.mapIdx.push_back(m);
        s.maps.push_back(dist.maps[m]);
        s.logProb += std::log(probs[x]) + std::log(dist.weights[m]);
        cur = update_state(spec, cur, x);
        s.states.push_back(cur);
    }
    return s;
}

ScenarioSpec embed_gdms(int vertexCount, const std::vector<GdmsEdge>& edges) {
    require(vertexCount >= 1, "gdms needs at least one vertex");
    require(!edges.empty(), "gdms needs at least one edge");

    ScenarioSpec spec;
    spec.name = "gdms";
    spec.space.kind = StateSpace::Kind::Discrete;
    for (int v = 0; v < vertexCount; ++v) spec.space.labels.push_back(std::to_string(v + 1));
    spec.fiber = ScenarioSpec::Fiber::Sphere;

    std::vector<double> rowSum(vertexCount, 0.0);
    bool allMonomial = true;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& edge = edges[e];
        require(edge.from >= 0 && edge.from < vertexCount && edge.to >= 0 && edge.to < vertexCount,
                "gdms edge names an unknown vertex");
        require(edge.mass > 0.0, "gdms edge mass must be positive");
        edge.measure.validate();
        for (const auto& m : edge.measure.maps) allMonomial = allMonomial && m.is_monomial();
        rowSum[edge.from] += edge.mass;

        std::string base =
            "e" + std::to_string(edge.from + 1) + "-" + std::to_string(edge.to + 1);
        std::string name = base;
        for (int k = 2; std::find(spec.indexNames.begin(), spec.indexNames.end(), name) !=
                        spec.indexNames.end();
             ++k)
            name = base + "#" + std::to_string(k);
        spec.indexNames.push_back(name);
        spec.tau.push_back(edge.measure);
    }
    for (int v = 0; v < vertexCount; ++v)
        require(std::abs(rowSum[v] - 1.0) <= kProbTol,
                "gdms edge masses out of vertex " + std::to_string(v + 1) + " must sum to 1");

    spec.update.family = UpdateRule::Family::Table;
    spec.transition.family = TransitionRule::Family::Table;
    for (int v = 0; v < vertexCount; ++v) {
        std::vector<double> row(edges.size(), 0.0);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            const bool leaves = edges[e].from == v;
            row[e] = leaves ? edges[e].mass : 0.0;
            spec.update.table[{spec.space.labels[v], e}] =
                leaves ? spec.space.labels[edges[e].to] : spec.space.labels[v];
        }
        spec.transition.rows[spec.space.labels[v]] = row;
    }

    // one radial class per vertex when the fiber dynamics are monomial
    if (allMonomial) {
        RadialClassDecl r;
        r.names = spec.space.labels;
        r.edges.resize(vertexCount);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            for (int m = 0; m < static_cast<int>(edges[e].measure.maps.size()); ++m)
                r.edges[edges[e].from].push_back({e, m, edges[e].to});
        for (int v = 0; v < vertexCount; ++v) r.discreteClass[spec.space.labels[v]] = v;
        spec.radial = std::move(r);
    }

    spec.initial = StatePoint::discrete(spec.space.labels[0], 0.0);
    spec.validate();
    return spec;
}

namespace {

ScenarioSpec make_jump_annulus() {
    ScenarioSpec s;
    s.name = "jump-annulus";
    s.space.kind = StateSpace::Kind::Ladder;
    s.space.hasExtra = true;
    s.space.extraLabel = "2";
    s.space.extraValue = 2.0;
    s.fiber = ScenarioSpec::Fiber::Sphere;
    s.indexNames = {"x1", "x2"};
    s.update.family = UpdateRule::Family::Ladder;
    s.update.ladderX2ToExtra = true;
    s.transition.family = TransitionRule::Family::LadderExp;
    s.transition.inverseExponent = true;
    s.tau = {
        {{MapSpec::monomial(1.0, 2)}, {1.0}},
        {{MapSpec::monomial(1.0, 2), MapSpec::monomial(0.5, 2)}, {0.5, 0.5}},
    };
    RadialClassDecl r;
    r.names = {"Ladder", "Zero", "Two"};
    r.edges = {
        {{0, 0, 0}, {1, 0, 2}, {1, 1, 2}}, // ladder: climb or jump to the absorbing point
        {{0, 0, 1}},                       // zero: first index only, stays put
        {{1, 0, 2}, {1, 1, 2}},            // two: full pair of maps forever
    };
    r.ladderClass = 0;
    r.zeroClass = 1;
    r.extraClass = 2;
    s.radial = std::move(r);
    s.initial = StatePoint::ladder(1);
    return s;
}

ScenarioSpec make_fattening() {
    ScenarioSpec s;
    s.name = "fattening";
    s.space.kind = StateSpace::Kind::Ladder;
    s.space.hasExtra = false;
    s.fiber = ScenarioSpec::Fiber::Interval;
    s.fiberLo = 0.0;
    s.fiberHi = 1.0;
    s.indexNames = {"x1", "x2"};
    s.update.family = UpdateRule::Family::Ladder;
    s.update.ladderX2ToExtra = false; // the second index drops to the accumulation point
    s.transition.family = TransitionRule::Family::LadderExp;
    s.transition.inverseExponent = false; // mass 2^(-n) on the second index at 1/n
    s.tau = {
        {{MapSpec::affine(0.5, 0.0, 0.0, 1.0)}, {1.0}},
        {{MapSpec::constant(0.125)}, {1.0}},
    };
    s.initial = StatePoint::ladder(1);
    return s;
}

ScenarioSpec make_reinforcement(double alpha, bool truncated, double eps) {
    ScenarioSpec s;
    s.name = truncated ? "reinforcement-trunc" : "reinforcement";
    s.space.kind = StateSpace::Kind::RealInterval;
    s.space.lo = truncated ? eps : 0.0;
    s.space.hi = truncated ? 1.0 - eps : 1.0;
    s.fiber = ScenarioSpec::Fiber::Sphere;
    s.indexNames = {"0", "1"};
    s.update.family = UpdateRule::Family::ClampAffine;
    s.update.alpha = alpha;
    s.update.lo = s.space.lo;
    s.update.hi = s.space.hi;
    s.transition.family = TransitionRule::Family::LinearProb;
    s.tau = {
        {{MapSpec::monomial(1.0, 2)}, {1.0}},
        {{MapSpec::monomial(0.5, 2)}, {1.0}},
    };
    RadialClassDecl r;
    if (truncated) {
        // both indices stay admissible on the whole truncated interval
        r.names = {"Interior"};
        r.edges = {{{0, 0, 0}, {1, 0, 0}}};
        r.interiorClass = r.loClass = r.hiClass = 0;
    } else {
        r.names = {"Interior", "Zero", "One"};
        r.edges = {
            {{0, 0, 0}, {1, 0, 0}},
            {{0, 0, 1}},
            {{1, 0, 2}},
        };
        r.interiorClass = 0;
        r.loClass = 1;
        r.hiClass = 2;
    }
    s.radial = std::move(r);
    s.initial = StatePoint::real(0.5);
    return s;
}

ScenarioSpec make_feedback(const ScenarioParams& p) {
    ScenarioSpec s;
    s.name = "feedback";
    s.space.kind = StateSpace::Kind::RealInterval;
    s.space.lo = 0.0;
    s.space.hi = 1.0;
    s.fiber = ScenarioSpec::Fiber::Interval;
    s.fiberLo = 0.0;
    s.fiberHi = 1.0;
    s.indexNames = {"xf", "xg"};
    s.update.family = UpdateRule::Family::FeedbackTheta;
    s.transition.family = TransitionRule::Family::Theta;
    s.transition.theta = p.thetaKind.value_or(TransitionRule::Theta::Affine);
    s.transition.thetaA = p.thetaA.value_or(0.25);
    s.transition.thetaB = p.thetaB.value_or(0.5);
    s.transition.thetaC = p.thetaC.value_or(0.5);
    s.transition.thetaS = p.thetaS.value_or(0.25);
    s.tau = {
        {{MapSpec::affine(0.5, 0.0, 0.0, 1.0)}, {1.0}},
        {{MapSpec::affine(0.5, 0.5, 0.0, 1.0)}, {1.0}},
    };
    s.initial = StatePoint::real(0.5);
    return s;
}

ScenarioSpec make_frozen_square() {
    ScenarioSpec s;
    s.name = "frozen-square";
    s.space.kind = StateSpace::Kind::Discrete;
    s.space.labels = {"*"};
    s.fiber = ScenarioSpec::Fiber::Sphere;
    s.indexNames = {"x"};
    s.update.family = UpdateRule::Family::Table;
    s.update.table[{"*", 0}] = "*";
    s.transition.family = TransitionRule::Family::Table;
    s.transition.rows["*"] = {1.0};
    s.tau = {{{MapSpec::monomial(1.0, 2)}, {1.0}}};
    RadialClassDecl r;
    r.names = {"All"};
    r.edges = {{{0, 0, 0}}};
    r.discreteClass["*"] = 0;
    s.radial = std::move(r);
    s.initial = StatePoint::discrete("*", 0.0);
    return s;
}

ScenarioSpec make_gdms_demo() {
    std::vector<GdmsEdge> edges;
    edges.push_back({0, 1, 1.0, {{MapSpec::monomial(1.0, 2)}, {1.0}}});
    edges.push_back({1, 0, 1.0, {{MapSpec::monomial(1.0, 2), MapSpec::monomial(0.5, 2)}, {0.5, 0.5}}});
    ScenarioSpec s = embed_gdms(2, edges);
    s.name = "gdms-demo";
    return s;
}

} // namespace

ScenarioSpec builtin_scenario(const std::string& name, const ScenarioParams& params) {
    ScenarioSpec s;
    if (name == "jump-annulus") s = make_jump_annulus();
    else if (name == "fattening") s = make_fattening();
    else if (name == "reinforcement") s = make_reinforcement(params.alpha, false, 0.0);
    else if (name == "reinforcement-trunc") s = make_reinforcement(params.alpha, true, params.eps);
    else if (name == "feedback") s = make_feedback(params);
    else if (name == "frozen-square") s = make_frozen_square();
    else if (name == "gdms-demo") s = make_gdms_demo();
    else throw std::invalid_argument("unknown builtin scenario '" + name + "'");
    s.validate();
    return s;
}

std::vector<std::string> builtin_scenario_names() {
    return {"jump-annulus", "fattening",     "reinforcement", "reinforcement-trunc",
            "feedback",     "frozen-square", "gdms-demo"};
}

int radial_class_of(const ScenarioSpec& spec, const StatePoint& w) {
    if (!spec.radial) throw std::invalid_argument("scenario declares no radial classes");
    check_state(spec, w);
    const auto& r = *spec.radial;
    int cls = -1;
    switch (spec.space.kind) {
        case StateSpace::Kind::Ladder:
            if (w.kind == StatePoint::Kind::LadderExtra) cls = r.extraClass;
            else cls = w.n == 0 ? r.zeroClass : r.ladderClass;
            break;
        case StateSpace::Kind::RealInterval:
            if (w.value == spec.space.lo) cls = r.loClass;
            else if (w.value == spec.space.hi) cls = r.hiClass;
            else cls = r.interiorClass;
            break;
        case StateSpace::Kind::Discrete: {
            auto it = r.discreteClass.find(w.label);
            cls = it == r.discreteClass.end() ? -1 : it->second;
            break;
        }
    }
    if (cls < 0)
        throw std::invalid_argument("state " + to_string(w) + " has no declared radial class");
    return cls;
}

void validate_radial_classes(const ScenarioSpec& spec, int depth) {
    if (!spec.radial) throw std::invalid_argument("scenario declares no radial classes");
    const auto& r = *spec.radial;

    std::vector<StatePoint> seeds{spec.initial};
    switch (spec.space.kind) {
        case StateSpace::Kind::Ladder:
            seeds.push_back(StatePoint::ladder(1));
            seeds.push_back(StatePoint::ladder(0));
            if (spec.space.hasExtra)
                seeds.push_back(StatePoint::ladder_extra(spec.space.extraLabel, spec.space.extraValue));
            break;
        case StateSpace::Kind::RealInterval:
            seeds.push_back(StatePoint::real(spec.space.lo));
            seeds.push_back(StatePoint::real(spec.space.hi));
            seeds.push_back(StatePoint::real(0.5 * (spec.space.lo + spec.space.hi)));
            break;
        case StateSpace::Kind::Discrete:
            for (std::size_t i = 0; i < spec.space.labels.size(); ++i)
                seeds.push_back(StatePoint::discrete(spec.space.labels[i], static_cast<double>(i)));
            break;
    }

    std::vector<StatePoint> frontier = seeds;
    std::vector<StatePoint> visited;
    auto seen = [&](const StatePoint& s) {
        for (const auto& t : visited)
            if (same_state(s, t)) return true;
        return false;
    };
    for (int level = 0; level <= depth && !frontier.empty(); ++level) {
        std::vector<StatePoint> next;
        for (const auto& w : frontier) {
            if (seen(w)) continue;
            visited.push_back(w);
            const int cls = radial_class_of(spec, w);
            const auto probs = transition_probs(spec, w);
            std::vector<RadialClassDecl::Edge> realized;
            for (int x = 0; x < spec.index_count(); ++x) {
                if (!(probs[x] > 0.0)) continue;
                StatePoint t = update_state(spec, w, x);
                const int succ = radial_class_of(spec, t);
                for (int m = 0; m < static_cast<int>(spec.tau[x].maps.size()); ++m)
                    realized.push_back({x, m, succ});
                next.push_back(t);
            }
            // realized pattern must equal the declaration, both directions
            for (const auto& e : realized)
                if (std::find(r.edges[cls].begin(), r.edges[cls].end(), e) == r.edges[cls].end())
                    throw std::invalid_argument(
                        "state " + to_string(w) + " realizes an undeclared radial edge in class " +
                        r.names[cls]);
            for (const auto& e : r.edges[cls])
                if (std::find(realized.begin(), realized.end(), e) == realized.end())
                    throw std::invalid_argument(
                        "class " + r.names[cls] + " declares an edge state " + to_string(w) +
                        " does not realize");
        }
        frontier = std::move(next);
    }
}

StatePoint parse_state(const ScenarioSpec& spec, const std::string& text) {
    switch (spec.space.kind) {
        case StateSpace::Kind::Ladder: {
            if (spec.space.hasExtra && text == spec.space.extraLabel)
                return StatePoint::ladder_extra(spec.space.extraLabel, spec.space.extraValue);
            if (text == "0") return StatePoint::ladder(0);
            if (text == "1") return StatePoint::ladder(1);
            if (text.rfind("1/", 0) == 0) {
                try {
                    const unsigned long long n = std::stoull(text.substr(2));
                    if (n >= 1) return StatePoint::ladder(n);
                } catch (const std::exception&) {
                }
            }
            throw std::invalid_argument("cannot read '" + text + "' as a ladder state");
        }
        case StateSpace::Kind::RealInterval: {
            double v = 0.0;
            try {
                v = std::stod(text);
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot read '" + text + "' as a real state");
            }
            StatePoint w = StatePoint::real(v);
            check_state(spec, w);
            return w;
        }
        case StateSpace::Kind::Discrete: {
            auto it = std::find(spec.space.labels.begin(), spec.space.labels.end(), text);
            if (it == spec.space.labels.end())
                throw std::invalid_argument("unknown discrete state '" + text + "'");
            return StatePoint::discrete(text, static_cast<double>(it - spec.space.labels.begin()));
        }
    }
    throw std::logic_error("unreachable state space kind");
}

} // namespace rscc
