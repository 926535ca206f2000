#include "rscc/radial_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rscc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RadialSet RadialSet::of(std::vector<Interval> parts) {
    for (auto& p : parts) {
        if (std::isnan(p.lo) || std::isnan(p.hi))
            throw std::invalid_argument("interval endpoints must not be NaN");
        if (!(p.lo <= p.hi)) throw std::invalid_argument("interval needs lo <= hi");
        if (p.lo == 0.0) p.lo = 0.0; // flush negative zeros out of serialized output
        if (p.hi == 0.0) p.hi = 0.0;
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    RadialSet out;
    for (const auto& p : parts) {
        if (!out.parts_.empty() && p.lo <= out.parts_.back().hi + kMergeTol)
            out.parts_.back().hi = std::max(out.parts_.back().hi, p.hi);
        else
            out.parts_.push_back(p);
    }
    return out;
}

RadialSet RadialSet::interval(double lo, double hi) { return of({{lo, hi}}); }

double RadialSet::min() const {
    if (parts_.empty()) throw std::domain_error("min of the empty radial set");
    return parts_.front().lo;
}

double RadialSet::max() const {
    if (parts_.empty()) throw std::domain_error("max of the empty radial set");
    return parts_.back().hi;
}

double RadialSet::measure() const {
    double total = 0.0;
    for (const auto& p : parts_) total += p.hi - p.lo;
    return total;
}

bool RadialSet::contains(double s, double slack) const {
    // parts are sorted and disjoint, so only the two neighbors of s can match
    auto it = std::upper_bound(parts_.begin(), parts_.end(), s,
                               [](double v, const Interval& p) { return v < p.lo; });
    if (it != parts_.end() && s >= it->lo - slack) return true;
    return it != parts_.begin() && s <= (it - 1)->hi + slack;
}

RadialSet set_union(const RadialSet& a, const RadialSet& b) {
    std::vector<Interval> parts = a.parts();
    parts.insert(parts.end(), b.parts().begin(), b.parts().end());
    return RadialSet::of(std::move(parts));
}

RadialSet set_intersection(const RadialSet& a, const RadialSet& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    const auto& A = a.parts();
    const auto& B = b.parts();
    while (i < A.size() && j < B.size()) {
        const double lo = std::max(A[i].lo, B[j].lo);
        const double hi = std::min(A[i].hi, B[j].hi);
        if (lo <= hi) out.push_back({lo, hi}); // closed intervals: a shared endpoint counts
        if (A[i].hi < B[j].hi)
            ++i;
        else
            ++j;
    }
    return RadialSet::of(std::move(out));
}

RadialSet inflate(const RadialSet& a, double eps) {
    if (eps < 0.0) throw std::invalid_argument("inflate wants a nonnegative margin");
    std::vector<Interval> out;
    out.reserve(a.size());
    for (const auto& p : a.parts()) out.push_back({p.lo - eps, p.hi + eps});
    return RadialSet::of(std::move(out));
}

RadialSet affine_image(const LogAffine& f, const RadialSet& a) {
    if (!(f.mul > 0.0)) throw std::invalid_argument("affine log action needs positive slope");
    std::vector<Interval> out;
    out.reserve(a.size());
    for (const auto& p : a.parts()) out.push_back({f(p.lo), f(p.hi)});
    return RadialSet::of(std::move(out));
}

double radial_distance(double s, const RadialSet& a) {
    if (a.is_empty()) return kInf;
    const auto& P = a.parts();
    // nearest part is one of the two neighbors in the sorted order
    auto it = std::upper_bound(P.begin(), P.end(), s,
                               [](double v, const Interval& p) { return v < p.lo; });
    double best = kInf;
    if (it != P.end()) best = it->lo - s;
    if (it != P.begin()) {
        const auto& prev = *(it - 1);
        if (s <= prev.hi) return 0.0;
        best = std::min(best, s - prev.hi);
    }
    return best;
}

namespace {

// sup over x in a of dist(x, b). the sup sits either at an endpoint of a or at
// the midpoint of a gap of b that a covers, never elsewhere.
double directed_hausdorff(const RadialSet& a, const RadialSet& b) {
    double d = 0.0;
    for (const auto& p : a.parts()) {
        d = std::max(d, radial_distance(p.lo, b));
        d = std::max(d, radial_distance(p.hi, b));
    }
    const auto& B = b.parts();
    for (std::size_t j = 0; j + 1 < B.size(); ++j) {
        const double mid = 0.5 * (B[j].hi + B[j + 1].lo);
        if (a.contains(mid)) d = std::max(d, radial_distance(mid, b));
    }
    return d;
}

} // namespace

double radial_hausdorff(const RadialSet& a, const RadialSet& b) {
    if (a.is_empty() && b.is_empty()) return 0.0;
    if (a.is_empty() || b.is_empty()) return kInf;
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

bool radial_equal(const RadialSet& a, const RadialSet& b, double tol) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    return radial_hausdorff(a, b) <= tol;
}

} // namespace rscc
