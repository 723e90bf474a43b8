#pragma once

// Spatial point configurations in a disk cell and Matérn hard-core thinnings.

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "sbscache/errors.hpp"
#include "sbscache/matrix.hpp"
#include "sbscache/random.hpp"

namespace sbscache {

struct Point {
    double x = 0.0;  // meters
    double y = 0.0;  // meters

    friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Ordered points inside a disk of `region_radius` centered at the origin.
/// Index i is the identity of the i-th SBS or user.
struct PointSet {
    std::vector<Point> points;
    double region_radius = 0.0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    const Point& operator[](std::size_t i) const { return points[i]; }
};

struct MarkedPointSet {
    PointSet base;
    std::vector<double> marks;  // one per point, in [0,1), pairwise distinct

    std::size_t size() const noexcept { return base.size(); }
};

using IndexSet = std::vector<std::size_t>;

/// Exactly n i.i.d. area-uniform points on the disk (r = R*sqrt(u)).
inline PointSet sample_binomial_disk(std::size_t n, double region_radius, Rng& rng) {
    if (!(region_radius > 0.0)) throw DomainError("sample_binomial_disk: region_radius must be > 0");
    PointSet out;
    out.region_radius = region_radius;
    out.points.reserve(n);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = region_radius * std::sqrt(uniform01(rng));
        const double theta = two_pi * uniform01(rng);
        Point p{r * std::cos(theta), r * std::sin(theta)};
        // cos/sin rounding can push a boundary point a few ulps outside.
        const double len = std::hypot(p.x, p.y);
        if (len > region_radius) {
            p.x *= region_radius / len;
            p.y *= region_radius / len;
        }
        out.points.push_back(p);
    }
    return out;
}

inline PointSet sample_binomial_disk(std::size_t n, double region_radius, Seed seed) {
    Rng rng(seed);
    return sample_binomial_disk(n, region_radius, rng);
}

/// Homogeneous Poisson process of the given intensity (points per m^2) on the disk.
inline PointSet sample_ppp_disk(double intensity, double region_radius, Seed seed) {
    if (!(intensity >= 0.0)) throw DomainError("sample_ppp_disk: intensity must be >= 0");
    if (!(region_radius > 0.0)) throw DomainError("sample_ppp_disk: region_radius must be > 0");
    Rng rng(seed);
    constexpr double pi = 3.141592653589793238462643383279;
    const double mean = intensity * pi * region_radius * region_radius;
    std::size_t count = 0;
    if (mean > 0.0) {
        std::poisson_distribution<std::size_t> poisson(mean);
        count = poisson(rng);
    }
    return sample_binomial_disk(count, region_radius, rng);
}

/// Symmetric Euclidean distance matrix with zero diagonal.
inline Matrix<double> distance_matrix(const PointSet& pts) {
    const std::size_t n = pts.size();
    Matrix<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = distance(pts[i], pts[j]);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

/// Matérn type I: keep x iff no other point lies within hard_distance.
/// To express "disjoint balls of radius D", pass hard_distance = 2D.
inline IndexSet matern_type_i(const PointSet& pts, double hard_distance) {
    if (!(hard_distance > 0.0)) throw DomainError("matern_type_i: hard_distance must be > 0");
    IndexSet kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool isolated = true;
        for (std::size_t j = 0; j < pts.size() && isolated; ++j) {
            if (j != i && distance(pts[i], pts[j]) <= hard_distance) isolated = false;
        }
        if (isolated) kept.push_back(i);
    }
    return kept;
}

/// Matérn type II: keep x iff its mark is strictly smaller than the mark of
/// every other point within hard_distance.
inline IndexSet matern_type_ii(const MarkedPointSet& pts, double hard_distance) {
    if (!(hard_distance > 0.0)) throw DomainError("matern_type_ii: hard_distance must be > 0");
    if (pts.marks.size() != pts.size()) throw DomainError("matern_type_ii: one mark per point required");
    const auto& p = pts.base;
    IndexSet kept;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool smallest = true;
        for (std::size_t j = 0; j < p.size() && smallest; ++j) {
            if (j != i && distance(p[i], p[j]) <= hard_distance && !(pts.marks[i] < pts.marks[j]))
                smallest = false;
        }
        if (smallest) kept.push_back(i);
    }
    return kept;
}

/// n uniform marks in [0,1), pairwise distinct; colliding marks are redrawn.
inline std::vector<double> draw_marks(std::size_t n, Rng& rng) {
    std::vector<double> marks(n);
    std::unordered_set<double> seen;
    seen.reserve(n);
    for (auto& m : marks) {
        do {
            m = uniform01(rng);
        } while (!seen.insert(m).second);
    }
    return marks;
}

/// CSV `id,x,y` (and `mark` when marks are given).
inline void write_points_csv(std::ostream& os, const PointSet& pts, std::span<const double> marks = {}) {
    const bool with_marks = !marks.empty();
    if (with_marks && marks.size() != pts.size()) throw DomainError("write_points_csv: mark count mismatch");
    const auto old_prec = os.precision(17);
    os << (with_marks ? "id,x,y,mark\n" : "id,x,y\n");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << i << ',' << pts[i].x << ',' << pts[i].y;
        if (with_marks) os << ',' << marks[i];
        os << '\n';
    }
    os.precision(old_prec);
}

}  // namespace sbscache
