#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cspace/regions.hpp"

namespace cspace {

using ConceptId = std::uint64_t;

/// A label plus one convex region per covered domain. A concept covering a
/// single domain is a property.
struct Concept {
    ConceptId id = 0;
    std::optional<std::string> label;
    std::map<std::string, Region, std::less<>> regions;
    std::uint64_t count = 1;
    std::uint64_t created_at = 0;

    /// Throws on empty regions, count 0, a region keyed under a different
    /// domain than its own, or regions that do not fit `space`.
    void validate(const SpaceSpec& space) const;

    bool operator==(const Concept&) const = default;
};

struct Classification {
    ConceptId concept_id = 0;
    /// Member of every region of the concept, with no domain skipped.
    bool strict = false;
    /// Minimum of the evaluated per-domain memberships.
    double score = 0.0;
    std::map<std::string, double> per_domain;
    /// Weighted distance from the point to the concept's region centroids
    /// over the evaluated domains; used only for ranking.
    double centroid_distance = 0.0;
};

/// Scores `p` against every concept. Domains absent from `p` are skipped
/// (projection); concepts sharing no domain with `p` are left out. Results
/// are ordered by strict, then score (both descending), then centroid
/// distance and concept id (ascending).
std::vector<Classification> classify(const Point& p, std::span<const Concept> store, const SpaceSpec& s);

std::optional<Region> project_concept(const Concept& c, std::string_view domain_id);

/// Region overlap verdict for every domain both concepts cover.
std::map<std::string, bool> concept_overlap(const Concept& a, const Concept& b);

}  // namespace cspace
