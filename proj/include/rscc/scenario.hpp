#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maps.hpp"
#include "state.hpp"

namespace rscc {

// weighted finite set of maps attached to one input index
struct MapDistribution {
    std::vector<MapSpec> maps;
    std::vector<double> weights; // positive, summing to 1 within kProbTol
    void validate() const;
    bool dirac() const { return maps.size() == 1; }
};

inline constexpr double kProbTol = 1e-12;   // row sums, weight sums
inline constexpr double kDedupTol = 1e-12;  // state dedup in reachable sets
inline constexpr std::uint64_t kWordCap = 1'000'000;

struct StateSpace {
    enum class Kind { Discrete, RealInterval, Ladder };
    Kind kind = Kind::RealInterval;

    double lo = 0.0, hi = 1.0;           // RealInterval bounds
    std::vector<std::string> labels;     // Discrete
    bool hasExtra = false;               // Ladder: optional extra absorbing point
    std::string extraLabel;
    double extraValue = 0.0;

    bool contains(const StatePoint& w) const;
};

// how the observed state moves when an index is consumed
struct UpdateRule {
    enum class Family { Ladder, ClampAffine, Table, FeedbackTheta };
    Family family = Family::Ladder;

    bool ladderX2ToExtra = true;    // ladder: index 1 jumps to the extra point (else to 0)
    double alpha = 0.5;             // clamp-affine mixing weight
    double lo = 0.0, hi = 1.0;      // clamp bounds
    std::map<std::pair<std::string, int>, std::string> table; // discrete (state,index) -> state
};

// distribution of the next index given the current state
struct TransitionRule {
    enum class Family { LadderExp, LinearProb, Table, Theta };
    Family family = Family::LadderExp;

    bool inverseExponent = true;    // first-index mass 1 - 2^(-1/n) when true, 1 - 2^(-n) when false
    std::map<std::string, std::vector<double>> rows; // discrete label -> row over indices

    enum class Theta { Constant, Affine, Bump };
    Theta theta = Theta::Affine;
    double thetaA = 0.25, thetaB = 0.5;  // constant value a; affine a + b*|y|
    double thetaC = 0.5, thetaS = 0.25;  // bump center, width (value a*exp(-((y-c)/s)^2))
};

// statewise radial classes: a finite partition of the state space on which the
// admissible (index, map, successor-class) pattern is constant. solving the
// graph-directed inverse system on these classes is what makes the statewise
// and kernel computations exact.
struct RadialClassDecl {
    struct Edge {
        int index;     // input index id
        int mapIdx;    // position inside tau[index]
        int succ;      // successor class
        bool operator==(const Edge& o) const {
            return index == o.index && mapIdx == o.mapIdx && succ == o.succ;
        }
    };
    std::vector<std::string> names;
    std::vector<std::vector<Edge>> edges; // per class

    // state -> class assignment, by state-space category
    int ladderClass = -1, zeroClass = -1, extraClass = -1; // ladder spaces
    int loClass = -1, hiClass = -1, interiorClass = -1;    // real intervals
    std::map<std::string, int> discreteClass;              // discrete labels
};

struct ScenarioSpec {
    std::string name;
    StateSpace space;

    enum class Fiber { Sphere, Interval };
    Fiber fiber = Fiber::Sphere;
    double fiberLo = 0.0, fiberHi = 1.0;

    std::vector<std::string> indexNames;
    UpdateRule update;
    TransitionRule transition;
    std::vector<MapDistribution> tau; // one distribution per index
    std::optional<RadialClassDecl> radial;
    StatePoint initial;

    int index_count() const { return static_cast<int>(indexNames.size()); }
    void validate() const; // structural checks; throws invalid_argument
};

// ---- elementary dynamics ----------------------------------------------------

StatePoint update_state(const ScenarioSpec& spec, const StatePoint& w, int index);

// full probability row over indices; entries are exact closed forms, sum 1 within kProbTol
std::vector<double> transition_probs(const ScenarioSpec& spec, const StatePoint& w);

using Word = std::vector<int>;

// chain-rule mass of the word cylinder started at w; 0 as soon as a step is inadmissible
double cylinder_prob(const ScenarioSpec& spec, const StatePoint& w, const Word& word);

// all words of length n with cylinder mass > minProb, lexicographic in index ids.
// throws resource_error past the word cap.
std::vector<Word> admissible_words(const ScenarioSpec& spec, const StatePoint& w, int n,
                                   double minProb = 0.0, std::uint64_t cap = kWordCap);

// distinct states reachable in exactly 1..depth admissible steps, deduplicated at kDedupTol,
// in first-reached order
std::vector<StatePoint> reachable_states(const ScenarioSpec& spec, const StatePoint& w, int depth,
                                         std::uint64_t cap = kWordCap);

struct ChainSample {
    Word word;
    std::vector<StatePoint> states; // size word.size() + 1, starts at w
    double logProb;                 // log cylinder mass of the sampled word
};

ChainSample sample_chain(const ScenarioSpec& spec, const StatePoint& w, int n, std::uint64_t seed,
                         std::uint64_t stream = 0);

struct PathSample {
    Word word;
    std::vector<StatePoint> states;
    std::vector<MapSpec> maps;  // one map drawn per step from tau[word[k]]
    std::vector<int> mapIdx;    // its position inside the distribution
    double logProb;             // log cylinder mass plus log map weights
};

PathSample sample_path_with_maps(const ScenarioSpec& spec, const StatePoint& w, int n,
                                 std::uint64_t seed, std::uint64_t stream = 0);

// ---- construction -----------------------------------------------------------

struct GdmsEdge {
    int from = 0, to = 0;    // vertex ids, 0-based
    double mass = 0.0;       // P(from, {this edge})
    MapDistribution measure; // map weights within the edge, normalized to 1
};

// graph-directed system as a scenario: states are vertices, indices are edges,
// an edge is admissible exactly at its source vertex. rows must sum to 1.
ScenarioSpec embed_gdms(int vertexCount, const std::vector<GdmsEdge>& edges);

struct ScenarioParams {
    double alpha = 0.5; // reinforcement mixing weight
    double eps = 0.01;  // truncation margin
    std::optional<TransitionRule::Theta> thetaKind;
    std::optional<double> thetaA, thetaB, thetaC, thetaS;
};

// builtins: jump-annulus, fattening, reinforcement, reinforcement-trunc,
// feedback, gdms-demo, frozen-square
ScenarioSpec builtin_scenario(const std::string& name, const ScenarioParams& params = {});
std::vector<std::string> builtin_scenario_names();

// ---- radial classes ---------------------------------------------------------

int radial_class_of(const ScenarioSpec& spec, const StatePoint& w); // throws if undeclared
// walks reachable states and checks the realized (index, map, successor-class)
// pattern matches the declaration on every class; throws invalid_argument if not
void validate_radial_classes(const ScenarioSpec& spec, int depth = 6);

// parse a state literal the way the CLI spells them: "1/3", "0", "2", "0.25", "v1"
StatePoint parse_state(const ScenarioSpec& spec, const std::string& text);

} // namespace rscc
