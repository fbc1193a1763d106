#include "bellsim/matching.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bellsim/rng.h"

namespace {

using bellsim::min_weight_perfect_matching;
using Matrix = std::vector<std::vector<int64_t>>;

int64_t matching_weight(const Matrix &w, const std::vector<int> &mate) {
    int64_t total = 0;
    for (size_t v = 0; v < mate.size(); ++v) {
        EXPECT_NE(mate[v], -1);
        EXPECT_EQ(mate[mate[v]], static_cast<int>(v));
        if (static_cast<int>(v) < mate[v]) total += w[v][mate[v]];
    }
    return total;
}

// Exhaustive minimum over all (n-1)!! pairings.
int64_t brute_force_min(const Matrix &w, std::vector<char> &used, int64_t acc) {
    size_t i = 0;
    while (i < used.size() && used[i]) ++i;
    if (i == used.size()) return acc;
    used[i] = 1;
    int64_t best = INT64_MAX;
    for (size_t j = i + 1; j < used.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        best = std::min(best, brute_force_min(w, used, acc + w[i][j]));
        used[j] = 0;
    }
    used[i] = 0;
    return best;
}

int64_t brute_force_min(const Matrix &w) {
    std::vector<char> used(w.size(), 0);
    return brute_force_min(w, used, 0);
}

Matrix random_matrix(bellsim::ShotRng &rng, int n, int64_t max_weight) {
    Matrix w(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            w[i][j] = w[j][i] = static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(max_weight + 1)));
    return w;
}

TEST(MinWeightMatching, AgreesWithBruteForceSmallWeights) {
    // Small weight ranges produce many ties, which is what drives the solver
    // through blossom formation and expansion.
    for (int n : {2, 4, 6, 8, 10}) {
        for (uint64_t trial = 0; trial < 400; ++trial) {
            bellsim::ShotRng rng(11u + static_cast<uint64_t>(n), trial);
            Matrix w = random_matrix(rng, n, 6);
            auto mate = min_weight_perfect_matching(w);
            ASSERT_EQ(matching_weight(w, mate), brute_force_min(w))
                << "n=" << n << " trial=" << trial;
        }
    }
}

TEST(MinWeightMatching, AgreesWithBruteForceWideWeights) {
    for (int n : {4, 6, 8, 10, 12}) {
        for (uint64_t trial = 0; trial < 120; ++trial) {
            bellsim::ShotRng rng(77u + static_cast<uint64_t>(n), trial);
            Matrix w = random_matrix(rng, n, 1'000'000);
            auto mate = min_weight_perfect_matching(w);
            ASSERT_EQ(matching_weight(w, mate), brute_force_min(w))
                << "n=" << n << " trial=" << trial;
        }
    }
}

TEST(MinWeightMatching, PointsOnALinePairAdjacently) {
    bellsim::ShotRng rng(5, 0);
    for (int n : {8, 12, 14}) {
        std::vector<int64_t> x(n);
        for (auto &v : x) v = static_cast<int64_t>(rng.next_below(10'000));
        std::sort(x.begin(), x.end());
        Matrix w(n, std::vector<int64_t>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i][j] = std::abs(x[i] - x[j]);
        int64_t expected = 0;
        for (int i = 0; i < n; i += 2) expected += x[i + 1] - x[i];
        auto mate = min_weight_perfect_matching(w);
        EXPECT_EQ(matching_weight(w, mate), expected);
    }
}

TEST(MinWeightMatching, HandlesForcedBlossoms) {
    // Two cheap triangles joined by expensive edges: any perfect matching must
    // use exactly one crossing edge, and the solver has to shrink both
    // triangles to see it.
    Matrix w(6, std::vector<int64_t>(6, 0));
    auto set = [&](int i, int j, int64_t v) { w[i][j] = w[j][i] = v; };
    set(0, 1, 1);
    set(1, 2, 1);
    set(0, 2, 1);
    set(3, 4, 1);
    set(4, 5, 1);
    set(3, 5, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) set(i, j, 100);
    auto mate = min_weight_perfect_matching(w);
    EXPECT_EQ(matching_weight(w, mate), 102);
}

TEST(MinWeightMatching, ZeroAndEmptyCases) {
    EXPECT_TRUE(min_weight_perfect_matching({}).empty());
    Matrix w(4, std::vector<int64_t>(4, 0));
    auto mate = min_weight_perfect_matching(w);
    EXPECT_EQ(matching_weight(w, mate), 0);
}

TEST(MinWeightMatching, RejectsBadInput) {
    Matrix odd(3, std::vector<int64_t>(3, 1));
    EXPECT_THROW(min_weight_perfect_matching(odd), std::invalid_argument);
    Matrix ragged{{0, 1}, {1}};
    EXPECT_THROW(min_weight_perfect_matching(ragged), std::invalid_argument);
    Matrix neg{{0, -1}, {-1, 0}};
    EXPECT_THROW(min_weight_perfect_matching(neg), std::invalid_argument);
}

TEST(MinWeightMatching, LargeInstanceStaysConsistent) {
    // No oracle at this size; check the matching is perfect and no two-pair
    // swap improves it (necessary condition for optimality).
    int n = 80;
    bellsim::ShotRng rng(123, 9);
    Matrix w = random_matrix(rng, n, 5000);
    auto mate = min_weight_perfect_matching(w);
    int64_t total = matching_weight(w, mate);
    EXPECT_GE(total, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            int ma = mate[a], mb = mate[b];
            if (ma == b || mb == a) continue;
            int64_t before = w[a][ma] + w[b][mb];
            EXPECT_GE(w[a][b] + w[ma][mb] - before, 0) << "improving swap exists";
            EXPECT_GE(w[a][mb] + w[ma][b] - before, 0) << "improving swap exists";
        }
}

}  // namespace
