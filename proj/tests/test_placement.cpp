#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sbscache/placement.hpp"

using namespace sbscache;

namespace {
std::vector<Rank> range(Rank lo, Rank hi) {
    std::vector<Rank> v(static_cast<std::size_t>(hi - lo + 1));
    std::iota(v.begin(), v.end(), lo);
    return v;
}
}  // namespace

TEST(PlaceByColoring, SingleColorIsBaseline) {
    const Catalog cat(1000, 0.6);
    const Coloring c{std::vector<Color>(7, 1), 1};
    const auto p = place_by_coloring(c, cat, 50);
    for (const auto& cached : p.cached) EXPECT_EQ(cached, range(1, 50));
    EXPECT_EQ(p, place_most_popular(7, cat, 50));
}

TEST(PlaceByColoring, ConsecutiveBlocks) {
    const auto p = place_by_coloring(Coloring{{1, 2}, 2}, Catalog(1000, 0.6), 2);
    EXPECT_EQ(p.cached[0], (std::vector<Rank>{1, 2}));
    EXPECT_EQ(p.cached[1], (std::vector<Rank>{3, 4}));
}

TEST(PlaceByColoring, WrapsModuloCatalog) {
    // Color 21 with M = 50 covers 1001..1050, i.e. 1..50 again.
    const auto p = place_by_coloring(Coloring{{21}, 21}, Catalog(1000, 0.6), 50);
    EXPECT_EQ(p.cached[0], range(1, 50));
}

TEST(PlaceByColoring, DuplicatesCollapseWhenBlockExceedsCatalog) {
    const auto p = place_by_coloring(Coloring{{1, 2}, 2}, Catalog(3, 0.6), 5);
    EXPECT_EQ(p.cached[0], (std::vector<Rank>{1, 2, 3}));
    EXPECT_EQ(p.cached[1], (std::vector<Rank>{1, 2, 3}));
}

TEST(PlaceByColoring, ZeroMemoryRejected) {
    EXPECT_THROW(place_by_coloring(Coloring{{1}, 1}, Catalog(10, 0.6), 0), DomainError);
}

TEST(PlaceByColoring, AdjacentDistinctColorsCacheDisjointSets) {
    std::mt19937_64 rng(6);
    const Catalog cat(1000, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_graph(12, 0.4, rng);
        const auto c = greedy_color_by_degree(g);
        const std::size_t m = 1 + rng() % 60;
        const auto p = place_by_coloring(c, cat, m);
        for (std::size_t s = 0; s < p.size(); ++s) {
            EXPECT_LE(p.cached[s].size(), m);
            EXPECT_TRUE(std::is_sorted(p.cached[s].begin(), p.cached[s].end()));
        }
        for (const auto& [i, j] : g.edges()) {
            if (static_cast<std::size_t>(std::max(c.colors[i], c.colors[j])) * m > cat.file_count()) continue;
            std::vector<Rank> common;
            std::set_intersection(p.cached[i].begin(), p.cached[i].end(), p.cached[j].begin(), p.cached[j].end(),
                                  std::back_inserter(common));
            EXPECT_TRUE(common.empty());
        }
    }
}

TEST(PlaceByColoring, MinimumRankIncreasesWithColor) {
    const Catalog cat(1000, 0.6);
    const std::size_t m = 50;
    std::vector<Color> colors(20);
    std::iota(colors.begin(), colors.end(), 1);
    const auto p = place_by_coloring(Coloring{colors, 20}, cat, m);
    for (std::size_t q = 1; q < 20; ++q) {
        EXPECT_LT(p.cached[q - 1].front(), p.cached[q].front());
        EXPECT_EQ(p.cached[q].size(), m);
    }
}

TEST(PlaceMostPopular, DefaultMemory) {
    const auto p = place_most_popular(48, Catalog(1000, 0.6), 50);
    ASSERT_EQ(p.size(), 48u);
    for (const auto& cached : p.cached) EXPECT_EQ(cached, range(1, 50));
    EXPECT_EQ(p.memory_capacity, 50u);
}

TEST(PlaceMostPopular, FullCatalogAndEmptyNetwork) {
    const Catalog cat(30, 1.0);
    EXPECT_EQ(place_most_popular(3, cat, 30).cached[2], range(1, 30));
    EXPECT_EQ(place_most_popular(0, cat, 10).size(), 0u);
    EXPECT_THROW(place_most_popular(3, cat, 31), DomainError);
}
