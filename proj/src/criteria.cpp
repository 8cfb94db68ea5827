#include "rbg/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace rbg {

namespace {

// Kahan-compensated sum of exp(log_terms), stable when terms span many orders
// of magnitude.
class CompensatedExpSum {
  public:
    void add_log(double log_term) {
        const double term = std::exp(log_term);
        const double y = term - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

}  // namespace

HypergraphSummary HypergraphSummary::from_sizes(const std::vector<long long>& sizes) {
    std::map<long long, double> grouped;
    for (long long s : sizes) grouped[s] += 1.0;
    HypergraphSummary out;
    for (const auto& [size, mult] : grouped) out.groups.push_back({size, mult});
    return out;
}

double HypergraphSummary::total_sets() const {
    double t = 0;
    for (const auto& g : groups) t += g.multiplicity;
    return t;
}

BeckSum beck_sum(const HypergraphSummary& summary, int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("biases must be positive");
    const double log_base = std::log1p(static_cast<double>(q));
    CompensatedExpSum acc;
    for (const auto& g : summary.groups) {
        if (g.multiplicity <= 0) throw std::invalid_argument("multiplicities must be positive");
        acc.add_log(std::log(g.multiplicity) - static_cast<double>(g.size) / p * log_base);
    }
    return {acc.value(), acc.value() < 1.0};
}

bool box_criterion(int p, int n_boxes, int m) {
    return m <= (p - 1) * std::log(static_cast<double>(n_boxes));
}

ThresholdBound threshold_bounds(const std::string& game, double n, int s) {
    ThresholdBound out;
    out.game = game;
    if (game == "C") {
        if (s < 2) throw std::invalid_argument("rainbow connectivity needs s >= 2");
        if (s == 2) {
            out.lower = out.upper = 2;  // exact threshold
            out.exponent = 0;
            return out;
        }
        const double t = 1.0 - 1.0 / std::ceil(s / 2.0);
        out.exponent = t;
        out.lower = std::pow(n, t);  // the lower-bound constant is existential
        out.upper = 24.0 * s * std::pow(n, t);
        out.asymptotic_only = true;
        return out;
    }
    if (game == "C_large") {
        const double base = s * n / std::log(n);
        out.lower = 0.5 * base;
        out.upper = base;
        out.asymptotic_only = true;
        return out;
    }
    if (game == "RS") {
        out.lower = std::log(2.0) / 8.0 * n * n / std::log(n);
        out.upper = std::ceil(n * (n - 1) / 2.0 / std::log(n - 1)) + 1;  // Box-game bound
        out.asymptotic_only = false;
        return out;
    }
    if (game == "D") {
        const double t = 1.0 - 1.0 / std::ceil(s / 2.0);
        out.exponent = t;
        out.lower = std::pow(n, t);
        out.upper = 24.0 * s * std::pow(n, t);  // reuse of the blocking strategy
        out.asymptotic_only = true;
        return out;
    }
    throw std::invalid_argument("unknown-game: " + game);
}

RsPartitionSums rs_beck_partition_sum(int n, double b, bool exact) {
    RsPartitionSums out;
    const double log2 = std::log(2.0);
    if (exact) {
        if (n > 9) throw std::invalid_argument("too-large: exact mode capped at n = 9");
        // enumerate set partitions by restricted growth strings
        std::vector<int> a(static_cast<size_t>(n), 0);
        CompensatedExpSum f1, f2, f3;
        while (true) {
            int k = 0;
            for (int v = 0; v < n; ++v) k = std::max(k, a[v] + 1);
            if (k >= 2) {
                std::vector<int> block_size(static_cast<size_t>(k), 0);
                for (int v = 0; v < n; ++v) ++block_size[a[v]];
                long long crossing = static_cast<long long>(n) * (n - 1) / 2;
                for (int i = 0; i < k; ++i)
                    crossing -= static_cast<long long>(block_size[i]) * (block_size[i] - 1) / 2;
                const int set_count = n - k + 1;  // |S|, colors out of n-1
                const double log_term = log_binomial(n - 1, set_count) -
                                        static_cast<double>(set_count) * crossing / b * log2;
                const int max_block = *std::max_element(block_size.begin(), block_size.end());
                // class precedence: a giant part wins, then the k-range
                if (max_block > n / 2.0) f2.add_log(log_term);
                else if (k <= n / 2.0) f1.add_log(log_term);
                else f3.add_log(log_term);
            }
            int i = n - 1;
            while (i > 0) {
                int prefix_max = 0;
                for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
                if (a[i] <= prefix_max) break;
                --i;
            }
            if (i == 0) break;
            ++a[i];
            for (int j = i + 1; j < n; ++j) a[j] = 0;
        }
        out.f1 = f1.value();
        out.f2 = f2.value();
        out.f3 = f3.value();
        return out;
    }

    // bound mode: the three displayed estimate chains with o(1) terms dropped
    {
        // F1 <= n^n * 2^n * 2^{-(n/2)(n^2/4)/b}
        const double log_f1 =
            n * std::log(static_cast<double>(n)) + n * log2 - (n / 2.0) * (n * n / 4.0) / b * log2;
        out.f1 = std::exp(log_f1);
    }
    {
        CompensatedExpSum acc;
        for (int t = 1; t <= n / 2; ++t) {
            const double log_term = 2 * log_binomial(n, t) + t * std::log(static_cast<double>(t)) -
                                    static_cast<double>(t) * (n - t) * (n - t) / b * log2;
            acc.add_log(log_term);
        }
        out.f2 = acc.value();
    }
    {
        CompensatedExpSum acc;
        for (int k = n / 2; k <= n; ++k) {
            const int r = n - k;
            const double log_term = 2.0 * r * std::log(static_cast<double>(n)) +
                                    (r + 1) * std::log(static_cast<double>(n)) -
                                    (r + 1) * (3.0 / 8.0) * n * n / b * log2;
            acc.add_log(log_term);
        }
        out.f3 = acc.value();
    }
    return out;
}

double path_count_upper_bound(double n, int s, double b) {
    if (s < 2) throw std::invalid_argument("paths of length >= 2 required");
    // vertex paths v -> w of length s: internal vertices ordered, distinct,
    // avoiding v and w
    double all_paths = 1.0;
    for (int i = 2; i <= s; ++i) all_paths *= std::max(0.0, n - i);
    // vertex paths traversing the fixed pair {x,y} consecutively
    double through_pair = 2.0 * std::max(0, s - 2);
    for (int i = 0; i <= s - 4; ++i) through_pair *= std::max(0.0, n - 4 - i);
    if (s == 2) through_pair = 0.0;

    const double layers = static_cast<double>(s);
    // paths missing the claimed element xy entirely: any colors on pair-free
    // paths, any colors except xy's layer when the pair is traversed
    const double f1_count = (all_paths - through_pair) * std::pow(layers, s) +
                            through_pair * (layers - 1) * std::pow(layers, s - 1);
    const double f2_count = through_pair * std::pow(layers, s - 1);

    return f1_count * std::pow(1.0 + b, -static_cast<double>(s)) +
           f2_count * std::pow(1.0 + b, -static_cast<double>(s - 1));
}

double random_threshold_formulas(const std::string& regime, double n, int s) {
    if (regime == "constant") {
        if (s <= 1) return std::log(n) / n;  // classical connectivity limit
        return std::pow(n, -(static_cast<double>(s) - 1) / s);
    }
    if (regime == "large") return std::log(n) / (s * n);
    throw std::invalid_argument("unknown regime: " + regime);
}

}  // namespace rbg
