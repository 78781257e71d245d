#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cspace/latent_codes.hpp"

namespace cspace {

struct DistancePair {
    double input_distance = 0;
    double latent_distance = 0;
};

/// Spearman rank correlation between input-space and latent-space distances,
/// with average ranks for ties. Throws ValidationError for fewer than three
/// pairs or when either list is constant.
double smoothness_score(std::span<const DistancePair> pairs);

/// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

/// Records of one domain that all carry the same non-empty set of meta keys.
/// Throws ValidationError if some record of the domain lacks a key or no
/// record of the domain exists.
std::vector<LatentCodeRecord> records_with_meta(std::span<const LatentCodeRecord> records,
                                                const std::string& domain_id);

/// Samples up to `max_pairs` distinct item pairs (all pairs when that is
/// fewer) and returns (meta-parameter distance, latent distance) for each.
/// Meta parameters are rescaled by their range over the records so that no
/// single parameter dominates.
std::vector<DistancePair> distance_pairs(std::span<const LatentCodeRecord> records, std::size_t max_pairs,
                                         std::uint64_t seed);

/// Copy of `records` with latent vectors permuted across items; the chance
/// baseline for both diagnostics.
std::vector<LatentCodeRecord> shuffle_latents(std::span<const LatentCodeRecord> records, std::uint64_t seed);

struct BetweennessOptions {
    std::size_t pairs = 200;
    std::uint64_t seed = 0;
    /// Allowed excursion outside [min(a, b), max(a, b)] per parameter, as a
    /// fraction of that parameter's range over the dataset.
    double slack = 0.05;
};

struct BetweennessReport {
    std::size_t checks = 0;
    std::size_t satisfied = 0;
    double fraction = 0;
};

/// For sampled record pairs (a, b) and t in {0.25, 0.5, 0.75}, finds the
/// record whose latent vector is nearest to the interpolation of a and b and
/// checks that its meta parameters lie between those of a and b (within
/// slack). A pair drawn twice from the same record counts as satisfied.
/// Records must come from records_with_meta. Throws ValidationError with
/// fewer than two records.
BetweennessReport interpolation_betweenness_report(std::span<const LatentCodeRecord> records,
                                                   const BetweennessOptions& options = {});

}  // namespace cspace
