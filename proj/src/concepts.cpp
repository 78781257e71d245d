#include "cspace/concepts.hpp"

#include <algorithm>

#include "cspace/error.hpp"

namespace cspace {

void Concept::validate(const SpaceSpec& space) const {
    if (regions.empty()) throw ValidationError("concept " + std::to_string(id) + " has no regions");
    if (count == 0) throw ValidationError("concept " + std::to_string(id) + " has a zero count");
    for (const auto& [domain_id, region] : regions) {
        if (region.domain_id() != domain_id)
            throw ValidationError("concept " + std::to_string(id) + " stores a '" + region.domain_id() +
                                  "' region under domain '" + domain_id + "'");
        region.validate(space);
    }
}

std::vector<Classification> classify(const Point& p, std::span<const Concept> store, const SpaceSpec& s) {
    std::vector<Classification> out;
    out.reserve(store.size());
    for (const auto& concept_ : store) {
        Classification c;
        c.concept_id = concept_.id;
        c.score = 1.0;
        bool skipped = false;
        for (const auto& [domain_id, region] : concept_.regions) {
            if (!p.has(domain_id)) {
                skipped = true;
                continue;
            }
            const auto x = p.coords(domain_id);
            const double m = membership(region, x, s.sensitivity());
            c.per_domain.emplace(domain_id, m);
            c.score = std::min(c.score, m);
            c.centroid_distance += s.domain(domain_id).weight * euclidean(x, centroid(region), domain_id);
        }
        if (c.per_domain.empty()) continue;
        c.strict = !skipped && std::all_of(c.per_domain.begin(), c.per_domain.end(),
                                           [](const auto& kv) { return kv.second == 1.0; });
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Classification& a, const Classification& b) {
        if (a.strict != b.strict) return a.strict;
        if (a.score != b.score) return a.score > b.score;
        if (a.centroid_distance != b.centroid_distance) return a.centroid_distance < b.centroid_distance;
        return a.concept_id < b.concept_id;
    });
    return out;
}

std::optional<Region> project_concept(const Concept& c, std::string_view domain_id) {
    auto it = c.regions.find(domain_id);
    if (it == c.regions.end()) return std::nullopt;
    return it->second;
}

std::map<std::string, bool> concept_overlap(const Concept& a, const Concept& b) {
    std::map<std::string, bool> out;
    for (const auto& [domain_id, region] : a.regions) {
        auto it = b.regions.find(domain_id);
        if (it != b.regions.end()) out.emplace(domain_id, overlaps(region, it->second));
    }
    return out;
}

}  // namespace cspace
