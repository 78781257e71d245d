#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cspace/geometry.hpp"

namespace cspace {

/// One embedding row handed over by an external extractor. On disk each
/// record is one JSON object per line:
///   {"item_id": "a", "domain_id": "shape", "vector": [0.1, -0.3], "meta": {"size": 0.4}}
/// `meta` is optional and holds numeric generative parameters.
struct LatentCodeRecord {
    std::string item_id;
    std::string domain_id;
    Vector vector;
    std::map<std::string, double> meta;

    bool operator==(const LatentCodeRecord&) const = default;
};

/// Parses line-delimited records. Blank lines are skipped. With `space`
/// given, every record must name one of its domains with the matching
/// dimensionality. Throws ParseError carrying the 1-based line number on
/// malformed JSON, unknown keys, wrong types, non-finite numbers, dimension
/// mismatches or duplicate (item_id, domain_id) pairs.
std::vector<LatentCodeRecord> load_latent_codes(std::istream& in, const SpaceSpec* space = nullptr);

/// Writes records in the format load_latent_codes reads, shortest
/// round-trip decimal for every number.
void write_latent_codes(std::ostream& out, std::span<const LatentCodeRecord> records);

struct NamedPoint {
    std::string item_id;
    Point point;
};

struct AssembledPoints {
    /// Complete items, in order of first appearance.
    std::vector<NamedPoint> points;
    /// Items lacking at least one required domain, in order of first appearance.
    std::vector<std::string> missing;
};

/// Joins per-domain records by item_id into points restricted to the
/// required domains. Throws ValidationError on a repeated (item, domain)
/// pair.
AssembledPoints assemble_points(std::span<const LatentCodeRecord> records,
                                std::span<const std::string> required_domains);

}  // namespace cspace
