#pragma once

#include <string>
#include <vector>

namespace rbg {

// Winning-set family in grouped form: (set size, multiplicity). Explicit
// families convert by grouping equal sizes.
struct HypergraphSummary {
    struct Group {
        long long size = 0;
        double multiplicity = 1.0;
    };
    std::vector<Group> groups;

    static HypergraphSummary from_sizes(const std::vector<long long>& sizes);
    double total_sets() const;
};

struct BeckSum {
    double value = 0.0;
    bool breaker_wins = false;  // sum < 1, valid when Breaker starts
};

// sum over F of (1+q)^(-|F|/p), accumulated in log space
BeckSum beck_sum(const HypergraphSummary& summary, int p, int q);

// equal boxes of size m: Maker wins Box(p,1) when m <= (p-1) ln(n_boxes)
bool box_criterion(int p, int n_boxes, int m);

struct ThresholdBound {
    std::string game;
    double lower = 0.0;
    double upper = 0.0;
    double exponent = 0.0;        // leading-order exponent data where applicable
    bool asymptotic_only = false; // true when o(1) terms were dropped / constants unknown
};

// game ids: "C" (rainbow connectivity, constant s), "C_large" (s >> log n),
// "RS" (rainbow spanning tree, s = n-1), "D" (diameter)
ThresholdBound threshold_bounds(const std::string& game, double n, int s);

struct RsPartitionSums {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double total() const { return f1 + f2 + f3; }
};

// Exact mode enumerates every vertex partition and color-subset size (n <= 9);
// bound mode evaluates the three estimate chains with o(1) dropped.
RsPartitionSums rs_beck_partition_sum(int n, double b, bool exact);

// Potential ceiling on the number of length-s v,w-paths Maker can own after
// her first edge xy (v,w,x,y distinct), when Breaker moves first from then on.
double path_count_upper_bound(double n, int s, double b);

// Rainbow-connectivity threshold probability for random systems:
// regime "constant" -> n^{-(s-1)/s} (s=1 reduces to ln n / n),
// regime "large"    -> ln(n) / (s n)
double random_threshold_formulas(const std::string& regime, double n, int s);

}  // namespace rbg
