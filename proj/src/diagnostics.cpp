#include "cspace/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cspace/error.hpp"
#include "cspace/learning.hpp"

namespace cspace {
namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) throw ValidationError("distance list has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct Ranges {
    std::vector<std::string> keys;
    std::vector<double> lo, hi;
};

Ranges meta_ranges(std::span<const LatentCodeRecord> records) {
    Ranges r;
    for (const auto& [k, v] : records.front().meta) r.keys.push_back(k);
    r.lo.assign(r.keys.size(), std::numeric_limits<double>::infinity());
    r.hi.assign(r.keys.size(), -std::numeric_limits<double>::infinity());
    for (const auto& rec : records)
        for (std::size_t k = 0; k < r.keys.size(); ++k) {
            const double v = rec.meta.at(r.keys[k]);
            r.lo[k] = std::min(r.lo[k], v);
            r.hi[k] = std::max(r.hi[k], v);
        }
    return r;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double smoothness_score(std::span<const DistancePair> pairs) {
    if (pairs.size() < 3) throw ValidationError("smoothness needs at least 3 distance pairs");
    std::vector<double> in, lat;
    in.reserve(pairs.size());
    lat.reserve(pairs.size());
    for (const auto& p : pairs) {
        in.push_back(p.input_distance);
        lat.push_back(p.latent_distance);
    }
    return pearson(average_ranks(in), average_ranks(lat));
}

std::vector<LatentCodeRecord> records_with_meta(std::span<const LatentCodeRecord> records,
                                                const std::string& domain_id) {
    std::vector<LatentCodeRecord> out;
    for (const auto& rec : records)
        if (rec.domain_id == domain_id) out.push_back(rec);
    if (out.empty()) throw ValidationError("no records for domain '" + domain_id + "'");
    const auto& keys = out.front().meta;
    if (keys.empty()) throw ValidationError("records carry no meta parameters");
    for (const auto& rec : out) {
        if (rec.vector.size() != out.front().vector.size())
            throw DimensionMismatchError(domain_id, out.front().vector.size(), rec.vector.size());
        if (rec.meta.size() != keys.size())
            throw ValidationError("item '" + rec.item_id + "' has a different set of meta parameters");
        for (const auto& [k, v] : keys)
            if (!rec.meta.contains(k))
                throw ValidationError("item '" + rec.item_id + "' lacks meta parameter '" + k + "'");
    }
    return out;
}

std::vector<DistancePair> distance_pairs(std::span<const LatentCodeRecord> records, std::size_t max_pairs,
                                         std::uint64_t seed) {
    const std::size_t n = records.size();
    if (n < 2) throw ValidationError("need at least 2 records to form distance pairs");
    const auto ranges = meta_ranges(records);
    auto input_distance = [&](const LatentCodeRecord& a, const LatentCodeRecord& b) {
        double sum = 0;
        for (std::size_t k = 0; k < ranges.keys.size(); ++k) {
            const double span = ranges.hi[k] - ranges.lo[k];
            if (span == 0) continue;
            const double d = (a.meta.at(ranges.keys[k]) - b.meta.at(ranges.keys[k])) / span;
            sum += d * d;
        }
        return std::sqrt(sum);
    };
    auto make = [&](std::size_t i, std::size_t j) {
        return DistancePair{input_distance(records[i], records[j]),
                            euclidean(records[i].vector, records[j].vector, records[i].domain_id)};
    };

    std::vector<DistancePair> out;
    const std::size_t all = n * (n - 1) / 2;
    if (all <= max_pairs) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) out.push_back(make(i, j));
        return out;
    }
    std::mt19937_64 rng(seed);
    while (out.size() < max_pairs) {
        const std::size_t i = rng() % n;
        const std::size_t j = rng() % n;
        if (i != j) out.push_back(make(i, j));
    }
    return out;
}

std::vector<LatentCodeRecord> shuffle_latents(std::span<const LatentCodeRecord> records, std::uint64_t seed) {
    std::vector<LatentCodeRecord> out(records.begin(), records.end());
    const auto order = shuffled_order(records.size(), seed);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].vector = records[order[i]].vector;
    return out;
}

BetweennessReport interpolation_betweenness_report(std::span<const LatentCodeRecord> records,
                                                   const BetweennessOptions& options) {
    const std::size_t n = records.size();
    if (n < 2) throw ValidationError("betweenness needs at least 2 records");
    const auto ranges = meta_ranges(records);

    auto nearest = [&](const Vector& q) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = euclidean(q, records[i].vector, records[i].domain_id);
            if (d < best_d) best_d = d, best = i;
        }
        return best;
    };
    auto in_between = [&](const LatentCodeRecord& a, const LatentCodeRecord& m, const LatentCodeRecord& b) {
        for (std::size_t k = 0; k < ranges.keys.size(); ++k) {
            const auto& key = ranges.keys[k];
            const double slack = options.slack * (ranges.hi[k] - ranges.lo[k]);
            const double lo = std::min(a.meta.at(key), b.meta.at(key)) - slack;
            const double hi = std::max(a.meta.at(key), b.meta.at(key)) + slack;
            const double v = m.meta.at(key);
            if (v < lo || v > hi) return false;
        }
        return true;
    };

    BetweennessReport report;
    std::mt19937_64 rng(options.seed);
    constexpr double kSteps[] = {0.25, 0.5, 0.75};
    for (std::size_t p = 0; p < options.pairs; ++p) {
        const std::size_t i = rng() % n;
        const std::size_t j = rng() % n;
        const auto& a = records[i];
        const auto& b = records[j];
        for (double t : kSteps) {
            ++report.checks;
            if (i == j) {
                ++report.satisfied;
                continue;
            }
            Vector q(a.vector.size());
            for (std::size_t d = 0; d < q.size(); ++d) q[d] = (1.0 - t) * a.vector[d] + t * b.vector[d];
            if (in_between(a, records[nearest(q)], b)) ++report.satisfied;
        }
    }
    report.fraction = report.checks ? static_cast<double>(report.satisfied) / static_cast<double>(report.checks) : 0.0;
    return report;
}

}  // namespace cspace
