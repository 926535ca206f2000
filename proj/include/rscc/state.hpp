#pragma once
#include <cstdint>
#include <string>

namespace rscc {

// observed-state point. identity is tag plus payload: ladder(1) and real(1.0)
// are different states even though both embed at 1.0 on the line.
struct StatePoint {
    enum class Kind { Discrete, Real, Ladder, LadderExtra };
    Kind kind = Kind::Real;

    std::string label;    // Discrete and LadderExtra
    double value = 0.0;   // Real payload; numeric embedding for the other kinds
    std::uint64_t n = 0;  // Ladder: the state 1/n, with n == 0 the accumulation point 0

    static StatePoint discrete(std::string label, double ordinal = 0.0);
    static StatePoint real(double v);
    static StatePoint ladder(std::uint64_t n);
    static StatePoint ladder_extra(std::string label, double value);

    // embedding used by the observed-state metric and by the StateCoord observable
    double numeric() const { return value; }

    bool operator==(const StatePoint& o) const;
    bool operator!=(const StatePoint& o) const { return !(*this == o); }
};

// 0/1 between discrete points, absolute numeric gap otherwise
double state_distance(const StatePoint& a, const StatePoint& b);

std::string to_string(const StatePoint& w);

} // namespace rscc
