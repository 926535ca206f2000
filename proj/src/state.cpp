#include "rscc/state.hpp"

#include <cmath>
#include "rscc/numfmt.hpp"

namespace rscc {

StatePoint StatePoint::discrete(std::string label, double ordinal) {
    StatePoint w;
    w.kind = Kind::Discrete;
    w.label = std::move(label);
    w.value = ordinal;
    return w;
}

StatePoint StatePoint::real(double v) {
    StatePoint w;
    w.kind = Kind::Real;
    w.value = v;
    return w;
}

StatePoint StatePoint::ladder(std::uint64_t n) {
    StatePoint w;
    w.kind = Kind::Ladder;
    w.n = n;
    w.value = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
    return w;
}

StatePoint StatePoint::ladder_extra(std::string label, double value) {
    StatePoint w;
    w.kind = Kind::LadderExtra;
    w.label = std::move(label);
    w.value = value;
    return w;
}

bool StatePoint::operator==(const StatePoint& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Discrete: return label == o.label;
        case Kind::Real: return value == o.value;
        case Kind::Ladder: return n == o.n;
        case Kind::LadderExtra: return label == o.label;
    }
    return false;
}

double state_distance(const StatePoint& a, const StatePoint& b) {
    if (a.kind == StatePoint::Kind::Discrete && b.kind == StatePoint::Kind::Discrete)
        return a.label == b.label ? 0.0 : 1.0;
    return std::abs(a.numeric() - b.numeric());
}

std::string to_string(const StatePoint& w) {
    switch (w.kind) {
        case StatePoint::Kind::Discrete: return w.label;
        case StatePoint::Kind::LadderExtra: return w.label;
        case StatePoint::Kind::Ladder:
            if (w.n == 0) return "0";
            if (w.n == 1) return "1";
            return "1/" + std::to_string(w.n);
        case StatePoint::Kind::Real: return fmt_double(w.value);
    }
    return "?";
}

} // namespace rscc
