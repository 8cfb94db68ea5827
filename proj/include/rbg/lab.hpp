#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbg/engine.hpp"

namespace rbg {

// ---------------------------------------------------------------------------
// Random systems.
// ---------------------------------------------------------------------------

// s independent G(n, p) layers on a shared vertex set
ColoredSubgraph generate_random_system(int n, int s, double p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Minimal TOML subset for experiment configs: [section] headers, key = value
// with integers, floats, strings, booleans and flat arrays.
// ---------------------------------------------------------------------------

struct TomlValue {
    std::string raw;
    double as_double(double fallback = 0) const;
    long long as_int(long long fallback = 0) const;
    std::string as_string() const;
    bool as_bool(bool fallback = false) const;
    std::vector<double> as_doubles() const;
};

struct TomlTable {
    std::map<std::string, TomlValue> values;  // keyed "section.key" (or "key" at top level)

    bool has(const std::string& key) const { return values.count(key) > 0; }
    double number(const std::string& key, double fallback) const;
    long long integer(const std::string& key, long long fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    static TomlTable parse(const std::string& text);
    static TomlTable parse_file(const std::string& path);
};

// ---------------------------------------------------------------------------
// Sweeps.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string game = "rc";  // rc | diameter | rst | rpm | rhc
    std::vector<int> n_grid;
    std::vector<int> s_grid;
    std::vector<int> b_grid;
    std::string maker = "random";
    std::string breaker = "random";
    int trials = 1;
    std::uint64_t seed = 0;
    std::string output_path;
    std::string transcript_path;  // optional JSONL dump
    ParamPack params;
    Player first_player = Player::Maker;

    static ExperimentConfig from_toml(const TomlTable& toml);
};

struct ResultRow {
    int n = 0, s = 0, b = 0;
    int trials = 0;
    int maker_wins = 0;
    std::map<std::string, int> forfeits;  // reason -> count
    double wall_ms = 0;

    static std::string csv_header();
    std::string to_csv() const;
};

WinPredicate predicate_for_game(const std::string& game, int n, int s);
GameConfig game_config_for(const ExperimentConfig& cfg, int n, int s, int b,
                           std::uint64_t seed);

// full factorial over the grids, parallel over (cell, trial); rows sorted
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);

// ---------------------------------------------------------------------------
// Empirical threshold estimation.
// ---------------------------------------------------------------------------

struct ThresholdEstimate {
    int b_low = 0;   // largest Maker-favorable bias found (win rate >= hi)
    int b_high = 0;  // smallest Breaker-favorable bias found (win rate <= lo)
    std::map<int, double> win_rates;
};

struct ThresholdSearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exponential bracket then bisection on b; thresholds 0.9 / 0.1
ThresholdEstimate estimate_empirical_threshold(const ExperimentConfig& cfg, int n, int s,
                                               int b_min = 1, int b_max = 1 << 20);

// ---------------------------------------------------------------------------
// Random graph intuition experiment.
// ---------------------------------------------------------------------------

struct RandomIntuitionRow {
    int n = 0, s = 0;
    double p = 0;
    int samples = 0;
    int connected = 0;
};

// rainbow-connectivity frequency over a geometric p-grid around the predicted
// threshold
std::vector<RandomIntuitionRow> random_intuition_scan(int n, int s, double p_center,
                                                      const std::vector<double>& p_factors,
                                                      int samples, std::uint64_t seed,
                                                      int max_len);

// 50%-crossing estimate by linear interpolation on the scan
std::optional<double> crossing_probability(const std::vector<RandomIntuitionRow>& rows);

// exact rainbow connectivity for arbitrary max_len via minimal-mask BFS
bool rainbow_connected_masks(const ColoredSubgraph& g, int max_len);

// least-squares slope of log(y) against log(x)
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

int lab_thread_count();  // honors RBG_THREADS

}  // namespace rbg
