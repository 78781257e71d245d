#include <gtest/gtest.h>

#include <cmath>

#include "cspace/error.hpp"
#include "cspace/regions.hpp"
#include "fixtures.hpp"

namespace cspace {
namespace {

using testing::Rng;

Point at(Vector v) { return Point({{"d", std::move(v)}}); }
Region unit_ball() { return Region::ball("d", {0, 0}, 1); }
Region unit_box() { return Region::box("d", {0, 0}, {1, 1}); }

TEST(RegionTest, ConstructionInvariants) {
    EXPECT_THROW(Region::ball("d", {0, 0}, 0), ValidationError);
    EXPECT_THROW(Region::ball("d", {0, 0}, -1), ValidationError);
    EXPECT_THROW(Region::ball("d", {NAN, 0}, 1), ValidationError);
    EXPECT_THROW(Region::box("d", {0, 2}, {1, 1}), ValidationError);
    EXPECT_THROW(Region::box("d", {0}, {1, 1}), DimensionMismatchError);
    EXPECT_NO_THROW(Region::box("d", {1, 1}, {1, 1}));
}

TEST(ContainsTest, Examples) {
    EXPECT_TRUE(contains(Region::ball("d", {0.2, 0.7}, 0.3), at({0.2, 0.7})));
    EXPECT_TRUE(contains(unit_ball(), at({0.6, 0.8})));
    EXPECT_FALSE(contains(unit_box(), at({1.5, 0.5})));
    EXPECT_TRUE(contains(unit_box(), at({1.0, 0.0})));
    EXPECT_THROW(contains(unit_box(), Point({{"e", {0, 0}}})), MissingDomainError);
}

TEST(MembershipTest, Examples) {
    EXPECT_EQ(membership(unit_box(), at({0.5, 0.5}), 1.0), 1.0);
    EXPECT_NEAR(membership(unit_ball(), at({0, 2}), 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(membership(unit_box(), at({2, 1}), 1.0), std::exp(-1.0), 1e-15);
}

TEST(DistToRegionTest, Examples) {
    EXPECT_EQ(dist_to_region(unit_ball(), at({0.1, 0.1})), 0.0);
    EXPECT_EQ(dist_to_region(unit_ball(), at({3, 4})), 4.0);
    EXPECT_EQ(dist_to_region(unit_box(), at({4, 5})), 5.0);
    EXPECT_THROW(dist_to_region(unit_box(), at({4, 5, 6})), DimensionMismatchError);
}

TEST(ExpandTowardTest, Examples) {
    const auto inside = at({0.2, 0.2});
    EXPECT_EQ(expand_toward(unit_ball(), inside, 0.3), unit_ball());
    EXPECT_EQ(expand_toward(unit_box(), inside, 0.3), unit_box());

    const auto far = at({0, 3});
    EXPECT_EQ(dist_to_region(expand_toward(unit_ball(), far, 1.0), far), 0.0);
    EXPECT_LE(dist_to_region(expand_toward(unit_ball(), far, 0.5), far), 1.0);
    EXPECT_LE(dist_to_region(expand_toward(unit_box(), at({3, -2}), 0.5), at({3, -2})),
              0.5 * dist_to_region(unit_box(), at({3, -2})));
}

TEST(ExpandTowardTest, FullRateGivesSmallestEnclosingBall) {
    const auto r = expand_toward(unit_ball(), at({0, 3}), 1.0);
    EXPECT_NEAR(r.as_ball().radius, 2.0, 1e-12);
    EXPECT_NEAR(r.as_ball().center[1], 1.0, 1e-12);
}

TEST(ExpandTowardTest, RejectsBadRate) {
    EXPECT_THROW(expand_toward(unit_ball(), at({0, 3}), 0.0), ValidationError);
    EXPECT_THROW(expand_toward(unit_ball(), at({0, 3}), 1.1), ValidationError);
}

TEST(IntersectBoxTest, Examples) {
    const auto a = Region::box("d", {0, 0}, {2, 2});
    EXPECT_EQ(intersect_box(a, a), a);
    EXPECT_EQ(intersect_box(a, Region::box("d", {1, 1}, {3, 3})), Region::box("d", {1, 1}, {2, 2}));
    EXPECT_FALSE(intersect_box(Region::box("d", {0}, {1}), Region::box("d", {2}, {3})).has_value());
}

TEST(IntersectBoxTest, Errors) {
    EXPECT_THROW(intersect_box(unit_box(), Region::box("e", {0, 0}, {1, 1})), ValidationError);
    EXPECT_THROW(intersect_box(unit_box(), unit_ball()), ValidationError);
}

TEST(OverlapsTest, Examples) {
    EXPECT_TRUE(overlaps(unit_ball(), unit_ball()));
    EXPECT_FALSE(overlaps(unit_ball(), Region::ball("d", {3, 0}, 1)));
    EXPECT_TRUE(overlaps(unit_ball(), Region::box("d", {0.5, 0}, {2, 2})));
    EXPECT_TRUE(overlaps(unit_ball(), Region::ball("d", {2, 0}, 1)));  // tangent
    EXPECT_THROW(overlaps(unit_ball(), Region::ball("e", {0, 0}, 1)), ValidationError);
}

TEST(CentroidTest, Examples) {
    EXPECT_EQ(centroid(Region::ball("d", {0.3, -2}, 1)), (Vector{0.3, -2}));
    EXPECT_EQ(centroid(Region::box("d", {0, 0}, {2, 4})), (Vector{1, 2}));
}

TEST(EnclosingTest, TwoUnitBallsHalfApart) {
    const auto r = enclosing(unit_ball(), Region::ball("d", {0.5, 0}, 1));
    ASSERT_TRUE(r.is_ball());
    EXPECT_GE(r.as_ball().radius, 1.25);
    EXPECT_NEAR(r.as_ball().radius, 1.25, 1e-12);
    EXPECT_NEAR(r.as_ball().center[0], 0.25, 1e-12);
}

TEST(EnclosingTest, NestedAndMixedShapes) {
    EXPECT_EQ(enclosing(unit_ball(), Region::ball("d", {0.1, 0}, 0.2)), unit_ball());
    const auto r = enclosing(unit_box(), Region::ball("d", {3, 3}, 1));
    EXPECT_EQ(r, Region::box("d", {0, 0}, {4, 4}));
}

// --- properties ------------------------------------------------------------

TEST(RegionProperties, ConvexityOfSampledMembers) {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto r = testing::random_region(rng, "d", 3);
        for (int k = 0; k < 10; ++k) {
            const auto p = testing::sample_inside(rng, r), q = testing::sample_inside(rng, r);
            const double t = rng.uniform();
            Vector m(p.size());
            for (std::size_t j = 0; j < m.size(); ++j) m[j] = (1 - t) * p[j] + t * q[j];
            ASSERT_TRUE(contains(r, m));
        }
        EXPECT_TRUE(contains(r, centroid(r)));
    }
}

TEST(RegionProperties, ContainsDistanceMembershipAgree) {
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const auto r = testing::random_region(rng, "d", 2);
        const auto p = rng.vector(2, -2, 2);
        const bool in = contains(r, p);
        EXPECT_EQ(in, dist_to_region(r, p) == 0.0);
        EXPECT_EQ(in, membership(r, p, 2.0) == 1.0);
    }
}

TEST(RegionProperties, MembershipNonIncreasingInDistance) {
    const auto r = unit_ball();
    double last = 1.0;
    for (double y = 0.0; y < 6.0; y += 0.05) {
        const double m = membership(r, Vector{0, y}, 1.5);
        EXPECT_LE(m, last);
        last = m;
    }
}

TEST(RegionProperties, IteratedExpansionContractsGeometrically) {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        auto r = testing::random_region(rng, "d", 3);
        const auto p = rng.vector(3, -4, 4);
        const double eta = rng.uniform(0.05, 1.0);
        for (int step = 0; step < 20; ++step) {
            const double before = dist_to_region(r, p);
            const double m_before = membership(r, p, 1.0);
            const auto next = expand_toward(r, p, eta);
            EXPECT_LE(dist_to_region(next, p), (1 - eta) * before);
            EXPECT_GE(membership(next, p, 1.0), m_before);
            // The update only grows: previous members stay members.
            EXPECT_TRUE(contains(next, centroid(r)));
            r = next;
        }
    }
}

TEST(RegionProperties, IntersectionContainedInBothOperands) {
    Rng rng(14);
    int non_empty = 0;
    for (int i = 0; i < 300; ++i) {
        Vector lo1 = rng.vector(2, -1, 1), lo2 = rng.vector(2, -1, 1);
        Vector hi1 = lo1, hi2 = lo2;
        for (auto& x : hi1) x += rng.uniform(0, 1.5);
        for (auto& x : hi2) x += rng.uniform(0, 1.5);
        const auto a = Region::box("d", lo1, hi1), b = Region::box("d", lo2, hi2);
        const auto c = intersect_box(a, b);
        EXPECT_EQ(c.has_value(), overlaps(a, b));
        EXPECT_EQ(overlaps(a, b), overlaps(b, a));
        if (!c) continue;
        ++non_empty;
        for (int k = 0; k < 10; ++k) {
            const auto p = testing::sample_inside(rng, *c);
            EXPECT_TRUE(contains(a, p));
            EXPECT_TRUE(contains(b, p));
        }
    }
    EXPECT_GT(non_empty, 50);
}

TEST(RegionProperties, OverlapsIsSymmetric) {
    Rng rng(15);
    for (int i = 0; i < 500; ++i) {
        const auto a = testing::random_region(rng, "d", 2), b = testing::random_region(rng, "d", 2);
        EXPECT_EQ(overlaps(a, b), overlaps(b, a));
    }
}

}  // namespace
}  // namespace cspace
