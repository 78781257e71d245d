#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cspace/concepts.hpp"

namespace cspace {

struct LearnerConfig {
    /// Minimum classification score for joining an existing concept, in (0, 1).
    double theta_new = 0.5;
    /// Region update rate, in (0, 1].
    double eta = 0.1;
    /// Ball radius given to every region of a freshly created concept.
    double r0 = 0.05;
    std::optional<std::size_t> max_concepts;

    /// Throws ValidationError when a field is out of range.
    void validate() const;

    bool operator==(const LearnerConfig&) const = default;
};

/// The mutable side of the conceptual layer. Only the learner writes it;
/// readers take copies between observe calls.
struct LearnerState {
    explicit LearnerState(SpaceSpec space_, std::uint64_t rng_seed_ = 0)
        : space(std::move(space_)), rng_seed(rng_seed_) {}

    SpaceSpec space;
    std::vector<Concept> concepts;
    ConceptId next_id = 1;
    /// Number of observations processed; stamps Concept::created_at.
    std::uint64_t observations = 0;
    std::uint64_t rng_seed = 0;

    const Concept* find(ConceptId id) const noexcept;
    const Concept* find_label(std::string_view label) const noexcept;

    /// Checks every concept against the space and that ids are unique and
    /// below next_id.
    void validate() const;

    bool operator==(const LearnerState&) const = default;
};

struct Assignment {
    ConceptId concept_id = 0;
    bool created = false;
    /// Best classification score before the update (0 with an empty store).
    double score = 0.0;
};

/// Assigns one full observation: joins the best concept when its score
/// reaches theta_new (or when max_concepts is exhausted) and pulls every one
/// of its regions toward p, otherwise creates a new concept of r0-balls
/// centered at p. Throws MissingDomainError if p lacks a domain; state is
/// untouched on error.
Assignment observe(LearnerState& state, const Point& p, const LearnerConfig& cfg);

/// Supervised correction: grows the first concept carrying `label` toward p,
/// or creates a labeled concept at p.
Assignment observe_labeled(LearnerState& state, const Point& p, const std::string& label,
                           const LearnerConfig& cfg);

/// Folds observe over `points` in order. Every point is validated first; on
/// failure an Error naming the offending index is thrown and state is not
/// modified.
std::vector<Assignment> fit_stream(LearnerState& state, std::span<const Point> points, const LearnerConfig& cfg);

/// Merges unlabeled concept pairs that overlap in every shared domain and
/// whose centroids lie within `overlap_threshold` (weighted combined distance
/// over the shared domains), until no pair qualifies. Returns the number of
/// merges performed.
std::size_t merge_overlapping(LearnerState& state, double overlap_threshold);

/// Deterministic Fisher-Yates permutation of [0, n) driven by mt19937_64.
std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed);

/// Adjusted Rand index between two labelings of the same items. Returns 1
/// when both partitions are identical, including the degenerate single-
/// cluster case.
double adjusted_rand_index(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

}  // namespace cspace
