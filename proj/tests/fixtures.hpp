#pragma once

// Seeded generators shared by the unit and acceptance suites. Uses its own
// uniform/normal transforms over mt19937_64 so the corpora are identical on
// every standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cspace/concepts.hpp"
#include "cspace/latent_codes.hpp"
#include "cspace/learning.hpp"

namespace cspace::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    double normal() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * uniform());
    }
    Vector vector(std::size_t n, double lo, double hi) {
        Vector v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 engine_;
};

inline SpaceSpec two_domain_space(double w_color = 1.0, double w_shape = 1.0, double sensitivity = 1.0) {
    return SpaceSpec({{"color", {"hue", "saturation", "brightness"}, w_color}, {"shape", {"s1", "s2"}, w_shape}},
                     sensitivity);
}

inline Point random_point(Rng& rng, const SpaceSpec& space, double lo = -1.0, double hi = 2.0) {
    std::map<std::string, Vector> coords;
    for (const auto& d : space.domains()) coords.emplace(d.id, rng.vector(d.dim_count(), lo, hi));
    return Point(std::move(coords));
}

inline Region random_region(Rng& rng, const std::string& domain, std::size_t dims) {
    if (rng.uniform() < 0.5) return Region::ball(domain, rng.vector(dims, -1, 1), rng.uniform(0.05, 1.0));
    Vector lo = rng.vector(dims, -1, 1), hi = lo;
    for (auto& x : hi) x += rng.uniform(0.0, 1.0);
    return Region::box(domain, lo, hi);
}

/// Uniform sample from the region.
inline Vector sample_inside(Rng& rng, const Region& r) {
    if (r.is_box()) {
        const auto& b = r.as_box();
        Vector v(b.min.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(b.min[i], b.max[i]);
        return v;
    }
    const auto& b = r.as_ball();
    for (;;) {
        Vector offset = rng.vector(b.center.size(), -1, 1);
        double norm2 = 0;
        for (double x : offset) norm2 += x * x;
        if (norm2 > 1.0) continue;
        Vector v = b.center;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.radius * offset[i];
        return v;
    }
}

// ---------------------------------------------------------------------------
// Planted three-cluster corpus: two domains, centers at least 10 * r0 apart
// in each domain, every point within r0 / 2 of its planted center per domain.

inline constexpr double kPlantedR0 = 0.05;
inline constexpr double kPlantedSensitivity = 10.0;

struct PlantedCorpus {
    SpaceSpec space;
    std::vector<Point> points;
    std::vector<std::string> ids;
    std::vector<std::int64_t> labels;
    std::vector<std::map<std::string, Vector>> centers;
};

inline PlantedCorpus planted_corpus(std::uint64_t seed = 42, std::size_t per_cluster = 100) {
    PlantedCorpus c{two_domain_space(1.0, 1.0, kPlantedSensitivity), {}, {}, {}, {}};
    c.centers = {
        {{"color", {0.1, 0.2, 0.3}}, {"shape", {0.2, 0.2}}},
        {{"color", {0.7, 0.2, 0.3}}, {"shape", {0.8, 0.3}}},
        {{"color", {0.4, 0.8, 0.6}}, {"shape", {0.4, 0.9}}},
    };
    Rng rng(seed);
    std::vector<std::int64_t> order;
    for (std::size_t k = 0; k < c.centers.size(); ++k)
        for (std::size_t i = 0; i < per_cluster; ++i) order.push_back(static_cast<std::int64_t>(k));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    for (std::size_t n = 0; n < order.size(); ++n) {
        const auto k = order[n];
        std::map<std::string, Vector> coords;
        for (const auto& [domain, center] : c.centers[static_cast<std::size_t>(k)]) {
            Vector v;
            double norm;
            do {
                v = center;
                norm = 0;
                for (auto& x : v) {
                    const double step = kPlantedR0 / 6.0 * rng.normal();
                    x += step;
                    norm += step * step;
                }
            } while (std::sqrt(norm) > kPlantedR0 / 2.0);
            coords.emplace(domain, std::move(v));
        }
        c.points.emplace_back(std::move(coords));
        c.ids.push_back("item" + std::to_string(n));
        c.labels.push_back(k);
    }
    return c;
}

inline std::vector<LatentCodeRecord> to_records(const PlantedCorpus& c) {
    std::vector<LatentCodeRecord> out;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (const auto& [domain, v] : c.points[i].all()) out.push_back({c.ids[i], domain, v, {}});
    return out;
}

// ---------------------------------------------------------------------------
// Authored apple/banana store over a color (HSB, normalized) and a 2-D shape
// domain.

inline SpaceSpec fruit_space() {
    return SpaceSpec({{"color", {"hue", "saturation", "brightness"}, 1.0}, {"shape", {"roundness", "elongation"}, 1.0}},
                     1.0);
}

inline Concept fruit(ConceptId id, std::string label, Vector color, Vector shape, double radius = 0.1) {
    Concept c;
    c.id = id;
    c.label = std::move(label);
    c.regions.emplace("color", Region::ball("color", std::move(color), radius));
    c.regions.emplace("shape", Region::ball("shape", std::move(shape), radius));
    return c;
}

inline const Vector kRed{0.0, 0.9, 0.8};
inline const Vector kRound{0.9, 0.1};
inline const Vector kYellow{1.0 / 6.0, 0.9, 0.9};
inline const Vector kCylindric{0.2, 0.9};

inline std::vector<Concept> fruit_store() {
    return {fruit(1, "apple", kRed, kRound), fruit(2, "banana", kYellow, kCylindric)};
}

}  // namespace cspace::testing
