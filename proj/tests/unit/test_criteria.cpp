#include <doctest.h>

#include <cmath>

#include "rbg/criteria.hpp"
#include "rbg/lab.hpp"
#include "rbg/solver.hpp"

using namespace rbg;

TEST_CASE("beck sum closed forms") {
    const auto four = beck_sum(HypergraphSummary::from_sizes({4, 4, 4, 4}), 1, 1);
    CHECK(four.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(four.breaker_wins);

    const auto single = beck_sum(HypergraphSummary::from_sizes({1}), 1, 1);
    CHECK(single.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(single.breaker_wins);
}

TEST_CASE("beck sum monotonicity") {
    const auto base = beck_sum(HypergraphSummary::from_sizes({3, 5, 7}), 1, 2);
    const auto bigger_bias = beck_sum(HypergraphSummary::from_sizes({3, 5, 7}), 1, 3);
    CHECK(bigger_bias.value < base.value);
    const auto bigger_sets = beck_sum(HypergraphSummary::from_sizes({4, 6, 8}), 1, 2);
    CHECK(bigger_sets.value < base.value);
    const auto more_sets = beck_sum(HypergraphSummary::from_sizes({3, 5, 7, 9}), 1, 2);
    CHECK(more_sets.value > base.value);
}

TEST_CASE("beck sum survives huge exponents") {
    HypergraphSummary huge;
    huge.groups.push_back({100000, 1e12});
    const auto res = beck_sum(huge, 1, 1);
    CHECK(res.value >= 0);
    CHECK(res.value < 1);
}

TEST_CASE("box criterion") {
    CHECK(box_criterion(2, 10, 2));
    CHECK_FALSE(box_criterion(2, 10, 3));
    CHECK_FALSE(box_criterion(1, 10, 1));
    CHECK_FALSE(box_criterion(1, 1000, 5));
}

TEST_CASE("threshold bound tables") {
    const auto c4 = threshold_bounds("C", 1e6, 4);
    CHECK(c4.exponent == doctest::Approx(0.5));
    CHECK(c4.upper == doctest::Approx(96000.0).epsilon(1e-9));
    CHECK(c4.lower <= c4.upper);
    CHECK(c4.asymptotic_only);

    const auto rs = threshold_bounds("RS", 100, 99);
    CHECK(rs.upper == doctest::Approx(1079.0));
    CHECK(rs.lower <= rs.upper);

    const auto c2 = threshold_bounds("C", 50, 2);
    CHECK(c2.lower == 2);
    CHECK(c2.upper == 2);

    const auto large = threshold_bounds("C_large", 1000, 40);
    CHECK(large.lower == doctest::Approx(0.5 * 40 * 1000 / std::log(1000.0)));
    CHECK(large.upper == doctest::Approx(2 * large.lower));

    CHECK_THROWS(threshold_bounds("nope", 10, 2));
}

namespace {

// independent brute-force enumeration of the partition-color-subset sum:
// recursion assigns each vertex to a block, subsets enumerated by bitmask
double rs_sum_brute(int n, double b) {
    double total = 0;
    std::vector<int> assign(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int v, int blocks) {
        if (v == n) {
            if (blocks < 2) return;
            long long crossing = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (assign[i] != assign[j]) ++crossing;
            const int want = n - blocks + 1;
            for (std::uint32_t set = 0; set < (1u << (n - 1)); ++set) {
                if (std::popcount(set) != want) continue;
                total += std::pow(2.0, -static_cast<double>(want) * crossing / b);
            }
            return;
        }
        for (int blk = 0; blk <= blocks; ++blk) {
            assign[v] = blk;
            rec(v + 1, blk == blocks ? blocks + 1 : blocks);
        }
    };
    rec(0, 0);
    return total;
}

}  // namespace

TEST_CASE("rs partition sum: exact mode equals the independent enumerator") {
    for (const int n : {3, 4, 5}) {
        for (const double b : {1.0, 2.5, 7.0}) {
            const auto sums = rs_beck_partition_sum(n, b, true);
            const double brute = rs_sum_brute(n, b);
            CHECK(sums.total() == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("balanced bipartition crossing count shows up in the sum") {
    // crossing count for the balanced 2-partition of n=8 is 16 = n^2/4;
    // with huge b each partition-subset term tends to 1, so just sanity-check
    // the exact enumerator against brute force once more at n=6
    const auto sums = rs_beck_partition_sum(6, 3.0, true);
    CHECK(sums.total() == doctest::Approx(rs_sum_brute(6, 3.0)).epsilon(1e-12));
    CHECK(sums.f1 > 0);
    CHECK(sums.f2 > 0);
    CHECK(sums.f3 > 0);
}

TEST_CASE("rs partition bound mode is small in the winning regime") {
    const double n = 1e4;
    const double b = (std::log(2.0) / 8 - 0.01) * n * n / std::log(n);
    const auto sums = rs_beck_partition_sum(static_cast<int>(n), b, false);
    CHECK(sums.f1 < 1);
    CHECK(sums.f2 < 1);
    CHECK(sums.f3 < 1);
}

TEST_CASE("path count upper bound") {
    // exact agreement with a brute-force enumerator at n=6, s=3, b=1
    const int n = 6, s = 3;
    // count vertex paths v..w of length 3 avoiding/using the pair {x,y}
    // with v=0,w=1,x=2,y=3
    long long all = 0, through = 0;
    for (int a = 0; a < n; ++a)
        for (int b2 = 0; b2 < n; ++b2) {
            if (a == b2 || a == 0 || a == 1 || b2 == 0 || b2 == 1) continue;
            ++all;
            if ((a == 2 && b2 == 3) || (a == 3 && b2 == 2)) ++through;
        }
    const double f1 = (all - through) * std::pow(3, 3) + through * 2 * std::pow(3, 2);
    const double f2 = through * std::pow(3, 2);
    const double expect = f1 * std::pow(2.0, -3) + f2 * std::pow(2.0, -2);
    CHECK(path_count_upper_bound(n, s, 1) == doctest::Approx(expect).epsilon(1e-12));

    // b -> infinity drives the bound to zero
    CHECK(path_count_upper_bound(100, 4, 1e9) < 1e-20);
    // leading order ~ n^{s-1} s^s b^{-s}
    const double big = path_count_upper_bound(1e5, 3, 10);
    CHECK(big == doctest::Approx(std::pow(1e5, 2) * 27 / std::pow(11, 3)).epsilon(0.01));
}

TEST_CASE("random threshold formulas") {
    CHECK(random_threshold_formulas("constant", 1e4, 2) == doctest::Approx(1e-2));
    CHECK(random_threshold_formulas("large", 1e4, 200) ==
          doctest::Approx(std::log(1e4) / (200 * 1e4)));
    CHECK(random_threshold_formulas("constant", 1000, 1) ==
          doctest::Approx(std::log(1000.0) / 1000));
}
