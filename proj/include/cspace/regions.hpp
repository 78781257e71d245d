#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "cspace/geometry.hpp"

namespace cspace {

struct Ball {
    Vector center;
    double radius = 0.0;

    bool operator==(const Ball&) const = default;
};

struct Box {
    Vector min;
    Vector max;

    bool operator==(const Box&) const = default;
};

/// A convex region inside a single domain: the geometric form of a property
/// such as "red" or "round". Membership is boundary-inclusive.
class Region {
public:
    using Shape = std::variant<Ball, Box>;

    /// Throws ValidationError unless radius > 0 and all entries are finite.
    static Region ball(std::string domain_id, Vector center, double radius);
    /// Throws ValidationError unless min <= max componentwise and lengths agree.
    static Region box(std::string domain_id, Vector min, Vector max);

    const std::string& domain_id() const noexcept { return domain_id_; }
    const Shape& shape() const noexcept { return shape_; }
    bool is_ball() const noexcept { return std::holds_alternative<Ball>(shape_); }
    bool is_box() const noexcept { return std::holds_alternative<Box>(shape_); }
    const Ball& as_ball() const { return std::get<Ball>(shape_); }
    const Box& as_box() const { return std::get<Box>(shape_); }
    std::size_t dim_count() const noexcept;

    /// Throws if the domain is unknown to `space` or the dimensionality differs.
    void validate(const SpaceSpec& space) const;

    bool operator==(const Region&) const = default;

private:
    Region(std::string domain_id, Shape shape) : domain_id_(std::move(domain_id)), shape_(std::move(shape)) {}

    std::string domain_id_;
    Shape shape_;
};

// Vector-level forms. `x` must have the region's dimensionality.
double dist_to_region(const Region& r, std::span<const double> x);
bool contains(const Region& r, std::span<const double> x);
double membership(const Region& r, std::span<const double> x, double sensitivity);

/// Euclidean distance from p to the nearest point of r; 0 iff contained.
double dist_to_region(const Region& r, const Point& p);
bool contains(const Region& r, const Point& p);
/// 1 inside the region, exp(-sensitivity * dist_to_region) outside.
double membership(const Region& r, const Point& p, double sensitivity);

/// Moves and enlarges `r` toward p so that
///   dist_to_region(result, p) <= (1 - eta) * dist_to_region(r, p)
/// while still covering all of `r`. A contained point leaves r unchanged.
/// A ball keeps its point farthest from p fixed while its center shifts and
/// its radius grows by eta * D / 2 (D the current distance), so eta = 1
/// yields the smallest ball containing both r and p.
/// A box pushes each violated face eta of the way to p.
/// Throws ValidationError for eta outside (0, 1].
Region expand_toward(const Region& r, const Point& p, double eta);
Region expand_toward(const Region& r, std::span<const double> x, double eta);

/// Exact intersection of two boxes; nullopt when disjoint.
std::optional<Region> intersect_box(const Region& a, const Region& b);

/// True iff the regions share at least one point.
bool overlaps(const Region& a, const Region& b);

/// Ball center or box midpoint; always contained in the region.
Vector centroid(const Region& r);

/// Smallest region of the operands' common kind covering both: the minimal
/// enclosing ball of two balls, otherwise the bounding box of both.
Region enclosing(const Region& a, const Region& b);

}  // namespace cspace
