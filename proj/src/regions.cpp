#include "cspace/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cspace/error.hpp"

namespace cspace {
namespace {

void require_finite(std::span<const double> v, const std::string& what) {
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError(what + " has a non-finite entry");
}

void require_same_domain(const Region& a, const Region& b) {
    if (a.domain_id() != b.domain_id())
        throw ValidationError("regions live in different domains ('" + a.domain_id() + "' vs '" +
                              b.domain_id() + "')");
    if (a.dim_count() != b.dim_count())
        throw DimensionMismatchError(a.domain_id(), a.dim_count(), b.dim_count());
}

void require_dims(const Region& r, std::span<const double> x) {
    if (x.size() != r.dim_count()) throw DimensionMismatchError(r.domain_id(), r.dim_count(), x.size());
}

// Euclidean distance from x to the box, via the clamp residual.
double box_distance(const Box& b, std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = x[i] < b.min[i] ? b.min[i] - x[i] : (x[i] > b.max[i] ? x[i] - b.max[i] : 0.0);
        sum += r * r;
    }
    return std::sqrt(sum);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Region Region::ball(std::string domain_id, Vector center, double radius) {
    if (center.empty()) throw ValidationError("ball center must not be empty");
    require_finite(center, "ball center");
    if (!(std::isfinite(radius) && radius > 0)) throw ValidationError("ball radius must be positive and finite");
    return Region(std::move(domain_id), Ball{std::move(center), radius});
}

Region Region::box(std::string domain_id, Vector min, Vector max) {
    if (min.empty()) throw ValidationError("box bounds must not be empty");
    if (min.size() != max.size()) throw DimensionMismatchError(domain_id, min.size(), max.size());
    require_finite(min, "box min");
    require_finite(max, "box max");
    for (std::size_t i = 0; i < min.size(); ++i)
        if (min[i] > max[i]) throw ValidationError("box min exceeds max on axis " + std::to_string(i));
    return Region(std::move(domain_id), Box{std::move(min), std::move(max)});
}

std::size_t Region::dim_count() const noexcept {
    return is_ball() ? as_ball().center.size() : as_box().min.size();
}

void Region::validate(const SpaceSpec& space) const {
    const auto& d = space.domain(domain_id_);
    if (dim_count() != d.dim_count()) throw DimensionMismatchError(domain_id_, d.dim_count(), dim_count());
}

double dist_to_region(const Region& r, std::span<const double> x) {
    require_dims(r, x);
    if (r.is_ball()) {
        const auto& b = r.as_ball();
        return std::max(0.0, euclidean(x, b.center) - b.radius);
    }
    return box_distance(r.as_box(), x);
}

bool contains(const Region& r, std::span<const double> x) { return dist_to_region(r, x) == 0.0; }

double membership(const Region& r, std::span<const double> x, double sensitivity) {
    const double d = dist_to_region(r, x);
    return d == 0.0 ? 1.0 : similarity_from_distance(d, sensitivity);
}

double dist_to_region(const Region& r, const Point& p) { return dist_to_region(r, p.coords(r.domain_id())); }
bool contains(const Region& r, const Point& p) { return contains(r, p.coords(r.domain_id())); }
double membership(const Region& r, const Point& p, double sensitivity) {
    return membership(r, p.coords(r.domain_id()), sensitivity);
}

Region expand_toward(const Region& r, std::span<const double> x, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("update rate eta must lie in (0, 1]");
    require_dims(r, x);
    const double before = dist_to_region(r, x);
    if (before == 0.0) return r;
    const double target = (1.0 - eta) * before;

    if (r.is_ball()) {
        const auto& b = r.as_ball();
        const double gap = euclidean(x, b.center);
        const double shift = 0.5 * eta * before;
        Vector center = b.center;
        for (std::size_t i = 0; i < center.size(); ++i) center[i] += shift * (x[i] - b.center[i]) / gap;
        double radius = b.radius + shift;
        // Absorb rounding so the contraction bound holds exactly.
        while (euclidean(x, center) - radius > target) radius = std::nextafter(radius, kInf);
        return Region::ball(r.domain_id(), std::move(center), radius);
    }

    Box b = r.as_box();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < b.min[i]) b.min[i] -= eta * (b.min[i] - x[i]);
        if (x[i] > b.max[i]) b.max[i] += eta * (x[i] - b.max[i]);
    }
    while (box_distance(b, x) > target) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < b.min[i]) b.min[i] = std::nextafter(b.min[i], -kInf);
            if (x[i] > b.max[i]) b.max[i] = std::nextafter(b.max[i], kInf);
        }
    }
    return Region::box(r.domain_id(), std::move(b.min), std::move(b.max));
}

Region expand_toward(const Region& r, const Point& p, double eta) {
    return expand_toward(r, p.coords(r.domain_id()), eta);
}

std::optional<Region> intersect_box(const Region& a, const Region& b) {
    require_same_domain(a, b);
    if (!a.is_box() || !b.is_box())
        throw ValidationError("intersect_box needs two boxes; use overlaps() for balls");
    const auto& x = a.as_box();
    const auto& y = b.as_box();
    Vector lo(x.min.size()), hi(x.min.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::max(x.min[i], y.min[i]);
        hi[i] = std::min(x.max[i], y.max[i]);
        if (lo[i] > hi[i]) return std::nullopt;
    }
    return Region::box(a.domain_id(), std::move(lo), std::move(hi));
}

bool overlaps(const Region& a, const Region& b) {
    require_same_domain(a, b);
    if (a.is_ball() && b.is_ball())
        return euclidean(a.as_ball().center, b.as_ball().center) <= a.as_ball().radius + b.as_ball().radius;
    if (a.is_box() && b.is_box()) return intersect_box(a, b).has_value();
    const auto& ball = a.is_ball() ? a.as_ball() : b.as_ball();
    const auto& box = a.is_box() ? a.as_box() : b.as_box();
    return box_distance(box, ball.center) <= ball.radius;
}

Vector centroid(const Region& r) {
    if (r.is_ball()) return r.as_ball().center;
    const auto& b = r.as_box();
    Vector mid(b.min.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (b.min[i] + b.max[i]);
    return mid;
}

Region enclosing(const Region& a, const Region& b) {
    require_same_domain(a, b);
    if (a.is_ball() && b.is_ball()) {
        const auto& x = a.as_ball();
        const auto& y = b.as_ball();
        const double gap = euclidean(x.center, y.center);
        if (gap + y.radius <= x.radius) return a;
        if (gap + x.radius <= y.radius) return b;
        // Diameter runs from the far side of x to the far side of y.
        double radius = 0.5 * (gap + x.radius + y.radius);
        const double offset = radius - x.radius;
        Vector center = x.center;
        for (std::size_t i = 0; i < center.size(); ++i) center[i] += offset * (y.center[i] - x.center[i]) / gap;
        // Rounding can leave either operand a hair outside.
        auto covers = [&](const Ball& o) { return euclidean(center, o.center) + o.radius <= radius; };
        while (!covers(x) || !covers(y)) radius = std::nextafter(radius, kInf);
        return Region::ball(a.domain_id(), std::move(center), radius);
    }
    auto bounds = [](const Region& r) -> Box {
        if (r.is_box()) return r.as_box();
        const auto& ball = r.as_ball();
        Box box{ball.center, ball.center};
        for (std::size_t i = 0; i < box.min.size(); ++i) {
            box.min[i] -= ball.radius;
            box.max[i] += ball.radius;
        }
        return box;
    };
    const Box x = bounds(a);
    const Box y = bounds(b);
    Vector lo(x.min.size()), hi(x.min.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::min(x.min[i], y.min[i]);
        hi[i] = std::max(x.max[i], y.max[i]);
    }
    return Region::box(a.domain_id(), std::move(lo), std::move(hi));
}

}  // namespace cspace
