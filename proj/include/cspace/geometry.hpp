#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cspace {

using Vector = std::vector<double>;

/// A bundle of quality dimensions that belong together (e.g. color).
/// Intra-domain distance is Euclidean.
struct DomainSpec {
    std::string id;
    std::vector<std::string> dim_names;
    double weight = 1.0;

    std::size_t dim_count() const noexcept { return dim_names.size(); }

    bool operator==(const DomainSpec&) const = default;
};

/// Schema of a conceptual space: the product of its domains, combined with
/// a weighted Manhattan metric over the intra-domain Euclidean distances.
class SpaceSpec {
public:
    /// Throws ValidationError on empty domain list, duplicate ids, empty
    /// dimension lists, negative/non-finite weights or sensitivity <= 0.
    explicit SpaceSpec(std::vector<DomainSpec> domains, double sensitivity = 1.0);

    const std::vector<DomainSpec>& domains() const noexcept { return domains_; }
    double sensitivity() const noexcept { return sensitivity_; }

    /// nullptr when absent.
    const DomainSpec* find(std::string_view id) const noexcept;
    /// Throws MissingDomainError when absent.
    const DomainSpec& domain(std::string_view id) const;

    /// Copy with every domain weight multiplied by `k` (> 0).
    SpaceSpec scaled_weights(double k) const;

    bool operator==(const SpaceSpec&) const = default;

private:
    std::vector<DomainSpec> domains_;
    double sensitivity_;
};

/// One observation: a real vector per domain. Coordinates are immutable
/// after construction and always finite.
class Point {
public:
    Point() = default;
    /// Throws ValidationError on non-finite entries or empty vectors.
    explicit Point(std::map<std::string, Vector> coords);

    bool has(std::string_view domain_id) const noexcept;
    /// Throws MissingDomainError when absent.
    std::span<const double> coords(std::string_view domain_id) const;
    const std::map<std::string, Vector, std::less<>>& all() const noexcept { return coords_; }
    std::vector<std::string> domain_ids() const;
    bool empty() const noexcept { return coords_.empty(); }

    /// Throws if a present domain is unknown to `space` or has the wrong length.
    void validate(const SpaceSpec& space) const;
    /// Throws MissingDomainError for the first domain of `space` not present.
    void require_full(const SpaceSpec& space) const;

    bool operator==(const Point&) const = default;

private:
    std::map<std::string, Vector, std::less<>> coords_;
};

/// Euclidean norm of a - b. Throws DimensionMismatchError on length mismatch.
double euclidean(std::span<const double> a, std::span<const double> b, std::string_view domain_id = "");

double intra_domain_distance(const Point& x, const Point& y, const DomainSpec& d);

/// Sum over domains of weight * intra-domain distance.
double combined_distance(const Point& x, const Point& y, const SpaceSpec& s);

/// exp(-sensitivity * distance), in (0, 1].
double similarity_from_distance(double distance, double sensitivity);
double similarity(const Point& x, const Point& y, const SpaceSpec& s);

/// Coordinatewise (1 - t) a + t b. Throws ValidationError for t outside
/// [0, 1] or differing domain sets.
Point interpolate(const Point& a, const Point& b, double t);

/// d(a, m) + d(m, b) <= d(a, b) + tol under the combined metric.
bool between(const Point& a, const Point& m, const Point& b, const SpaceSpec& s, double tol);

}  // namespace cspace
