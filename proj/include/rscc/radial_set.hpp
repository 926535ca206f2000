#pragma once
#include <cstddef>
#include <vector>

#include "maps.hpp"

namespace rscc {

struct Interval {
    double lo = 0.0, hi = 0.0;
};

// finite union of disjoint closed intervals on the log-radius line s = log|z|.
// every radial computation trades in these: unions, intersections and affine
// images are exact up to the merge tolerance, so no grids are involved.
class RadialSet {
public:
    static constexpr double kMergeTol = 1e-12;

    RadialSet() = default;
    static RadialSet empty() { return {}; }
    static RadialSet of(std::vector<Interval> parts); // sorts, merges, validates
    static RadialSet interval(double lo, double hi);
    static RadialSet point(double s) { return interval(s, s); }

    bool is_empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

    double min() const; // throws on empty
    double max() const;
    double measure() const; // total length
    bool contains(double s, double slack = 0.0) const;

private:
    std::vector<Interval> parts_; // sorted, disjoint beyond kMergeTol
};

RadialSet set_union(const RadialSet& a, const RadialSet& b);
RadialSet set_intersection(const RadialSet& a, const RadialSet& b);

// closed eps-neighborhood (Minkowski sum with [-eps, eps])
RadialSet inflate(const RadialSet& a, double eps);

// image under an affine log action with positive slope (monomial forward or inverse action)
RadialSet affine_image(const LogAffine& f, const RadialSet& a);

// Hausdorff distance; 0 between two empty sets, infinity when exactly one is empty
double radial_hausdorff(const RadialSet& a, const RadialSet& b);

// distance from a point to the set; infinity from the empty set
double radial_distance(double s, const RadialSet& a);

bool radial_equal(const RadialSet& a, const RadialSet& b, double tol);

} // namespace rscc
