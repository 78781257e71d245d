#include "cspace/learning.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "cspace/error.hpp"

namespace cspace {
namespace {

double best_score(const LearnerState& state, const Point& p) {
    const auto ranked = classify(p, state.concepts, state.space);
    return ranked.empty() ? 0.0 : ranked.front().score;
}

Concept& concept_by_id(LearnerState& state, ConceptId id) {
    for (auto& c : state.concepts)
        if (c.id == id) return c;
    throw ValidationError("unknown concept id " + std::to_string(id));
}

void check_observation(const LearnerState& state, const Point& p) {
    p.require_full(state.space);
    p.validate(state.space);
}

ConceptId create_concept(LearnerState& state, const Point& p, double r0, std::optional<std::string> label) {
    Concept c;
    c.id = state.next_id++;
    c.label = std::move(label);
    c.created_at = state.observations;
    for (const auto& d : state.space.domains()) {
        const auto x = p.coords(d.id);
        c.regions.emplace(d.id, Region::ball(d.id, Vector(x.begin(), x.end()), r0));
    }
    state.concepts.push_back(std::move(c));
    return state.concepts.back().id;
}

void pull_toward(Concept& c, const Point& p, double eta) {
    for (auto& [domain_id, region] : c.regions) region = expand_toward(region, p, eta);
    ++c.count;
}

}  // namespace

void LearnerConfig::validate() const {
    if (!(theta_new > 0.0 && theta_new < 1.0)) throw ValidationError("theta_new must lie in (0, 1)");
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in (0, 1]");
    if (!(std::isfinite(r0) && r0 > 0.0)) throw ValidationError("r0 must be positive");
    if (max_concepts && *max_concepts == 0) throw ValidationError("max_concepts must be positive");
}

const Concept* LearnerState::find(ConceptId id) const noexcept {
    for (const auto& c : concepts)
        if (c.id == id) return &c;
    return nullptr;
}

const Concept* LearnerState::find_label(std::string_view label) const noexcept {
    for (const auto& c : concepts)
        if (c.label && *c.label == label) return &c;
    return nullptr;
}

void LearnerState::validate() const {
    std::set<ConceptId> ids;
    for (const auto& c : concepts) {
        c.validate(space);
        if (!ids.insert(c.id).second) throw ValidationError("duplicate concept id " + std::to_string(c.id));
        if (c.id >= next_id) throw ValidationError("concept id " + std::to_string(c.id) + " is not below next_id");
        if (c.created_at > observations)
            throw ValidationError("concept " + std::to_string(c.id) + " created after the last observation");
    }
}

Assignment observe(LearnerState& state, const Point& p, const LearnerConfig& cfg) {
    cfg.validate();
    check_observation(state, p);

    const auto ranked = classify(p, state.concepts, state.space);
    Assignment a;
    a.score = ranked.empty() ? 0.0 : ranked.front().score;
    const bool full = cfg.max_concepts && state.concepts.size() >= *cfg.max_concepts;
    if (!ranked.empty() && (a.score >= cfg.theta_new || full)) {
        a.concept_id = ranked.front().concept_id;
        pull_toward(concept_by_id(state, a.concept_id), p, cfg.eta);
    } else {
        a.concept_id = create_concept(state, p, cfg.r0, std::nullopt);
        a.created = true;
    }
    ++state.observations;
    return a;
}

Assignment observe_labeled(LearnerState& state, const Point& p, const std::string& label,
                           const LearnerConfig& cfg) {
    cfg.validate();
    check_observation(state, p);

    Assignment a;
    a.score = best_score(state, p);
    if (const auto* existing = state.find_label(label)) {
        a.concept_id = existing->id;
        pull_toward(concept_by_id(state, a.concept_id), p, cfg.eta);
    } else {
        a.concept_id = create_concept(state, p, cfg.r0, label);
        a.created = true;
    }
    ++state.observations;
    return a;
}

std::vector<Assignment> fit_stream(LearnerState& state, std::span<const Point> points, const LearnerConfig& cfg) {
    cfg.validate();
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            check_observation(state, points[i]);
        } catch (const Error& e) {
            throw ValidationError("point " + std::to_string(i) + ": " + e.what());
        }
    }
    std::vector<Assignment> log;
    log.reserve(points.size());
    for (const auto& p : points) log.push_back(observe(state, p, cfg));
    return log;
}

std::size_t merge_overlapping(LearnerState& state, double overlap_threshold) {
    if (!(overlap_threshold >= 0.0)) throw ValidationError("overlap threshold must be nonnegative");
    auto mergeable = [&](const Concept& a, const Concept& b) {
        if (a.label || b.label) return false;
        double dist = 0.0;
        bool shared = false;
        for (const auto& [domain_id, ra] : a.regions) {
            auto it = b.regions.find(domain_id);
            if (it == b.regions.end()) continue;
            shared = true;
            if (!overlaps(ra, it->second)) return false;
            dist += state.space.domain(domain_id).weight * euclidean(centroid(ra), centroid(it->second), domain_id);
        }
        return shared && dist <= overlap_threshold;
    };

    std::size_t merges = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < state.concepts.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < state.concepts.size() && !changed; ++j) {
                auto& a = state.concepts[i];
                const auto& b = state.concepts[j];
                if (!mergeable(a, b)) continue;
                for (const auto& [domain_id, rb] : b.regions) {
                    auto it = a.regions.find(domain_id);
                    if (it == a.regions.end())
                        a.regions.emplace(domain_id, rb);
                    else
                        it->second = enclosing(it->second, rb);
                }
                a.count += b.count;
                a.created_at = std::min(a.created_at, b.created_at);
                state.concepts.erase(state.concepts.begin() + static_cast<std::ptrdiff_t>(j));
                ++merges;
                changed = true;
            }
        }
    }
    return merges;
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    // std::shuffle and uniform_int_distribution differ across standard
    // libraries; the raw engine output does not.
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    return order;
}

double adjusted_rand_index(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw ValidationError("labelings have different lengths");
    const auto n = static_cast<double>(a.size());
    if (a.size() < 2) return 1.0;
    std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
    std::map<std::int64_t, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1;
        rows[a[i]] += 1;
        cols[b[i]] += 1;
    }
    auto pairs = [](double k) { return k * (k - 1) / 2; };
    double index = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [k, v] : joint) index += pairs(v);
    for (const auto& [k, v] : rows) sum_rows += pairs(v);
    for (const auto& [k, v] : cols) sum_cols += pairs(v);
    const double expected = sum_rows * sum_cols / pairs(n);
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace cspace
