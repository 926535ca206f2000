#pragma once
#include <complex>

namespace rscc {

using cplx = std::complex<double>;

// point on the Riemann sphere: a finite complex number or the point at infinity.
// scenarios whose fiber is a real interval store their points here too, with
// zero imaginary part, so maps and observables have a single currency.
struct SpherePoint {
    bool finite = true;
    cplx z{0.0, 0.0};

    static SpherePoint at(cplx v) { return {true, v}; }
    static SpherePoint at(double re, double im = 0.0) { return {true, {re, im}}; }
    static SpherePoint infinity() { return {false, {0.0, 0.0}}; }

    bool operator==(const SpherePoint& o) const {
        return finite == o.finite && (!finite || z == o.z);
    }
};

// chordal metric: diameter 2, and 0 and infinity are antipodal.
// overflow-safe for |z| near the double range.
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

} // namespace rscc
