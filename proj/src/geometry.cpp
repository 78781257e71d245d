#include "cspace/geometry.hpp"

#include <cmath>
#include <set>

#include "cspace/error.hpp"

namespace cspace {

SpaceSpec::SpaceSpec(std::vector<DomainSpec> domains, double sensitivity)
    : domains_(std::move(domains)), sensitivity_(sensitivity) {
    if (domains_.empty()) throw ValidationError("space needs at least one domain");
    if (!(std::isfinite(sensitivity_) && sensitivity_ > 0))
        throw ValidationError("sensitivity must be a positive finite number");
    std::set<std::string, std::less<>> seen;
    for (const auto& d : domains_) {
        if (d.id.empty()) throw ValidationError("domain id must not be empty");
        if (!seen.insert(d.id).second) throw ValidationError("duplicate domain id '" + d.id + "'");
        if (d.dim_names.empty())
            throw ValidationError("domain '" + d.id + "' needs at least one dimension");
        if (!(std::isfinite(d.weight) && d.weight >= 0))
            throw ValidationError("domain '" + d.id + "' has a negative or non-finite weight");
    }
}

const DomainSpec* SpaceSpec::find(std::string_view id) const noexcept {
    for (const auto& d : domains_)
        if (d.id == id) return &d;
    return nullptr;
}

const DomainSpec& SpaceSpec::domain(std::string_view id) const {
    if (const auto* d = find(id)) return *d;
    throw MissingDomainError(std::string(id));
}

SpaceSpec SpaceSpec::scaled_weights(double k) const {
    if (!(std::isfinite(k) && k > 0)) throw ValidationError("weight scale must be positive");
    auto scaled = domains_;
    for (auto& d : scaled) d.weight *= k;
    return SpaceSpec(std::move(scaled), sensitivity_);
}

Point::Point(std::map<std::string, Vector> coords) {
    for (auto& [id, v] : coords) {
        if (v.empty()) throw ValidationError("domain '" + id + "' has an empty coordinate vector");
        for (double x : v)
            if (!std::isfinite(x)) throw ValidationError("non-finite coordinate in domain '" + id + "'");
        coords_.emplace(id, std::move(v));
    }
}

bool Point::has(std::string_view domain_id) const noexcept { return coords_.contains(domain_id); }

std::span<const double> Point::coords(std::string_view domain_id) const {
    auto it = coords_.find(domain_id);
    if (it == coords_.end()) throw MissingDomainError(std::string(domain_id));
    return it->second;
}

std::vector<std::string> Point::domain_ids() const {
    std::vector<std::string> ids;
    ids.reserve(coords_.size());
    for (const auto& [id, v] : coords_) ids.push_back(id);
    return ids;
}

void Point::validate(const SpaceSpec& space) const {
    for (const auto& [id, v] : coords_) {
        const auto& d = space.domain(id);
        if (v.size() != d.dim_count()) throw DimensionMismatchError(id, d.dim_count(), v.size());
    }
}

void Point::require_full(const SpaceSpec& space) const {
    for (const auto& d : space.domains())
        if (!has(d.id)) throw MissingDomainError(d.id);
}

double euclidean(std::span<const double> a, std::span<const double> b, std::string_view domain_id) {
    if (a.size() != b.size()) throw DimensionMismatchError(std::string(domain_id), a.size(), b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double intra_domain_distance(const Point& x, const Point& y, const DomainSpec& d) {
    const auto xs = x.coords(d.id);
    const auto ys = y.coords(d.id);
    if (xs.size() != d.dim_count()) throw DimensionMismatchError(d.id, d.dim_count(), xs.size());
    if (ys.size() != d.dim_count()) throw DimensionMismatchError(d.id, d.dim_count(), ys.size());
    return euclidean(xs, ys, d.id);
}

double combined_distance(const Point& x, const Point& y, const SpaceSpec& s) {
    double total = 0.0;
    for (const auto& d : s.domains()) total += d.weight * intra_domain_distance(x, y, d);
    return total;
}

double similarity_from_distance(double distance, double sensitivity) {
    return std::exp(-sensitivity * distance);
}

double similarity(const Point& x, const Point& y, const SpaceSpec& s) {
    return similarity_from_distance(combined_distance(x, y, s), s.sensitivity());
}

Point interpolate(const Point& a, const Point& b, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("interpolation parameter must lie in [0, 1]");
    if (a.domain_ids() != b.domain_ids())
        throw ValidationError("interpolation endpoints cover different domains");
    std::map<std::string, Vector> out;
    for (const auto& [id, av] : a.all()) {
        const auto bv = b.coords(id);
        if (av.size() != bv.size()) throw DimensionMismatchError(id, av.size(), bv.size());
        Vector v(av.size());
        for (std::size_t i = 0; i < av.size(); ++i) v[i] = (1.0 - t) * av[i] + t * bv[i];
        out.emplace(id, std::move(v));
    }
    return Point(std::move(out));
}

bool between(const Point& a, const Point& m, const Point& b, const SpaceSpec& s, double tol) {
    return combined_distance(a, m, s) + combined_distance(m, b, s) <= combined_distance(a, b, s) + tol;
}

}  // namespace cspace
