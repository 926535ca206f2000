#include "rscc/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace rscc {

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (!a.finite && !b.finite) return 0.0;
    if (!a.finite || !b.finite) {
        const cplx& z = a.finite ? a.z : b.z;
        return 2.0 / std::hypot(1.0, std::abs(z));
    }
    const double A = std::abs(a.z);
    const double B = std::abs(b.z);
    // scale by the larger modulus so neither |z-w| nor (1+|z|^2) overflows
    const double M = std::max({A, B, 1.0});
    const double num = 2.0 * std::abs(a.z / M - b.z / M);
    const double den = std::hypot(1.0 / M, A / M) * std::hypot(1.0, B);
    return num / den;
}

} // namespace rscc
