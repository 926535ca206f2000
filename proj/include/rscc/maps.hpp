#pragma once
#include <string>
#include <vector>

#include "sphere.hpp"

namespace rscc {

// map families attached to input indices. serialized one per line as
//   monomial <c> <d> | affine <a> <b> <lo> <hi> | const <v> | poly <c0> <c1> ... <cd>
// monomial, const and poly act on the sphere; affine acts on a real interval
// (applied to the real part, clamped into [lo, hi]).
struct MapSpec {
    enum class Kind { Monomial, Affine, Const, Poly };
    Kind kind = Kind::Monomial;

    cplx c{1.0, 0.0};            // monomial coefficient, nonzero
    int d = 2;                   // monomial degree, >= 1
    double a = 1.0, b = 0.0;     // affine y -> a*y + b
    double lo = 0.0, hi = 1.0;   // affine clamp bounds
    cplx v{0.0, 0.0};            // constant value
    std::vector<cplx> coeffs;    // poly c0..cd, top coefficient nonzero

    static MapSpec monomial(cplx c, int d);
    static MapSpec affine(double a, double b, double lo, double hi);
    static MapSpec constant(cplx v);
    static MapSpec poly(std::vector<cplx> coeffs);

    bool is_monomial() const { return kind == Kind::Monomial; }
    bool operator==(const MapSpec& o) const;
};

SpherePoint apply_map(const MapSpec& m, const SpherePoint& p);

// composition outer(inner(z)); both must be monomial. c*z^d composed stays monomial.
MapSpec compose_monomials(const MapSpec& outer, const MapSpec& inner);

// a monomial c*z^d acts on s = log|z| as the affine map s -> d*s + log|c|;
// its preimage action s -> (s - log|c|)/d contracts by 1/d. everything the
// radial machinery does lives in this coordinate.
struct LogAffine {
    double mul = 1.0;
    double add = 0.0;
    double operator()(double s) const { return mul * s + add; }
};

LogAffine log_radius_action(const MapSpec& m);  // forward, mul = d
LogAffine inverse_log_action(const MapSpec& m); // preimage, mul = 1/d

std::string to_string(const MapSpec& m);
MapSpec parse_map(const std::string& text); // inverse of to_string, tolerant of extra spaces

} // namespace rscc
