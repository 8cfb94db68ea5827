#include "rbg/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rbg/strategies.hpp"

namespace rbg {

ColoredSubgraph generate_random_system(int n, int s, double p, std::uint64_t seed) {
    Rng rng(seed);
    ColoredSubgraph g(n, s);
    for (int c = 0; c < s; ++c)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.coin(p)) g.add(EdgeRef(c, u, v));
    return g;
}

// --- TOML subset -------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

double TomlValue::as_double(double fallback) const {
    try {
        return std::stod(raw);
    } catch (...) {
        return fallback;
    }
}

long long TomlValue::as_int(long long fallback) const {
    try {
        return std::stoll(raw);
    } catch (...) {
        return fallback;
    }
}

std::string TomlValue::as_string() const {
    std::string v = trim(raw);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

bool TomlValue::as_bool(bool fallback) const {
    const std::string v = as_string();
    if (v == "true") return true;
    if (v == "false") return false;
    return fallback;
}

std::vector<double> TomlValue::as_doubles() const {
    std::vector<double> out;
    std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') v = v.substr(1, v.size() - 2);
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

double TomlTable::number(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_double(fallback);
}

long long TomlTable::integer(const std::string& key, long long fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_int(fallback);
}

std::string TomlTable::text(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second.as_string();
}

std::vector<double> TomlTable::numbers(const std::string& key) const {
    auto it = values.find(key);
    return it == values.end() ? std::vector<double>{} : it->second.as_doubles();
}

TomlTable TomlTable::parse(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        table.values[section.empty() ? key : section + "." + key] = TomlValue{value};
    }
    return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io-error: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// --- sweep -------------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_toml(const TomlTable& toml) {
    ExperimentConfig cfg;
    cfg.game = toml.text("experiment.game", "rc");
    for (double v : toml.numbers("experiment.n")) cfg.n_grid.push_back(static_cast<int>(v));
    for (double v : toml.numbers("experiment.s")) cfg.s_grid.push_back(static_cast<int>(v));
    for (double v : toml.numbers("experiment.b")) cfg.b_grid.push_back(static_cast<int>(v));
    if (cfg.n_grid.empty()) cfg.n_grid.push_back(static_cast<int>(toml.integer("experiment.n", 6)));
    if (cfg.s_grid.empty()) cfg.s_grid.push_back(static_cast<int>(toml.integer("experiment.s", 2)));
    if (cfg.b_grid.empty()) cfg.b_grid.push_back(static_cast<int>(toml.integer("experiment.b", 1)));
    cfg.maker = toml.text("experiment.maker", "random");
    cfg.breaker = toml.text("experiment.breaker", "random");
    cfg.trials = static_cast<int>(toml.integer("experiment.trials", 1));
    cfg.seed = static_cast<std::uint64_t>(toml.integer("experiment.seed", 0));
    cfg.output_path = toml.text("experiment.output", "results.csv");
    cfg.transcript_path = toml.text("experiment.transcripts", "");
    cfg.first_player = toml.text("experiment.first", "maker") == "breaker" ? Player::Breaker
                                                                           : Player::Maker;
    for (const auto& [key, value] : toml.values) {
        if (key.rfind("params.", 0) == 0) cfg.params[key.substr(7)] = value.as_double(0);
    }
    return cfg;
}

std::string ResultRow::csv_header() {
    return "n,s,b,trials,maker_wins,forfeits_maker,forfeits_breaker,forfeit_reasons,wall_ms";
}

std::string ResultRow::to_csv() const {
    int fm = 0, fb = 0;
    std::string reasons;
    for (const auto& [reason, count] : forfeits) {
        if (reason.rfind("maker:", 0) == 0) fm += count;
        else fb += count;
        if (!reasons.empty()) reasons += ';';
        reasons += reason + "=" + std::to_string(count);
    }
    std::ostringstream out;
    out << n << ',' << s << ',' << b << ',' << trials << ',' << maker_wins << ',' << fm << ','
        << fb << ',' << reasons << ',' << wall_ms;
    return out.str();
}

WinPredicate predicate_for_game(const std::string& game, int n, int s) {
    if (game == "rc")
        return {"rainbow_connected", {{"max_len", static_cast<double>(std::min(n - 1, s))}}};
    if (game == "rc_full")
        return {"rainbow_connected", {{"max_len", static_cast<double>(n - 1)}}};
    if (game == "diameter")
        return {"diameter", {{"bound", static_cast<double>(s)}}};
    if (game == "rst") return {"rainbow_spanning_tree", {}};
    if (game == "rpm") return {"rainbow_perfect_matching", {}};
    if (game == "rhc") return {"rainbow_hamilton_cycle", {}};
    throw std::runtime_error("unknown game: " + game);
}

GameConfig game_config_for(const ExperimentConfig& cfg, int n, int s, int b,
                           std::uint64_t seed) {
    GameConfig gc;
    gc.n = n;
    // the diameter game is played on one layer; s names the diameter bound
    gc.s = cfg.game == "diameter" ? 1 : s;
    gc.maker_bias = 1;
    gc.breaker_bias = b;
    gc.first_player = cfg.first_player;
    gc.predicate = predicate_for_game(cfg.game, n, s);
    gc.seed = seed;
    gc.strategy_params = cfg.params;
    if (cfg.game == "diameter") gc.strategy_params.emplace("path_s", static_cast<double>(s));
    return gc;
}

int lab_thread_count() {
    if (const char* env = std::getenv("RBG_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
    struct Cell {
        int n, s, b;
    };
    std::vector<Cell> cells;
    for (int n : cfg.n_grid)
        for (int s : cfg.s_grid)
            for (int b : cfg.b_grid) cells.push_back({n, s, b});
    if (cells.empty() || cfg.trials < 1) throw std::runtime_error("grids nonempty, trials >= 1");

    std::vector<ResultRow> rows(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        rows[i].n = cells[i].n;
        rows[i].s = cells[i].s;
        rows[i].b = cells[i].b;
        rows[i].trials = cfg.trials;
    }

    struct Task {
        size_t cell;
        int trial;
    };
    std::vector<Task> tasks;
    for (size_t c = 0; c < cells.size(); ++c)
        for (int t = 0; t < cfg.trials; ++t) tasks.push_back({c, t});

    std::mutex mu;
    std::ofstream transcripts;
    if (!cfg.transcript_path.empty()) transcripts.open(cfg.transcript_path);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto [ci, trial] = tasks[i];
            const auto& cell = cells[ci];
            const auto t0 = std::chrono::steady_clock::now();
            GameConfig gc = game_config_for(cfg, cell.n, cell.s, cell.b,
                                            split_seed(cfg.seed, ci, trial));
            auto maker = make_strategy(cfg.maker);
            auto breaker = make_strategy(cfg.breaker);
            Board board = Board::layered_complete(gc.n, gc.s);
            auto [outcome, transcript] = play_game(std::move(board), *maker, *breaker, gc);
            const auto t1 = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            std::lock_guard<std::mutex> lock(mu);
            auto& row = rows[ci];
            row.wall_ms += ms;
            if (outcome.maker_won()) ++row.maker_wins;
            if (outcome.kind == Outcome::Kind::Forfeit) {
                const std::string key =
                    (outcome.forfeited_by == Player::Maker ? "maker:" : "breaker:") +
                    outcome.reason;
                ++row.forfeits[key];
            }
            if (transcripts.is_open()) transcripts << transcript.to_jsonl();
        }
    };
    std::vector<std::thread> pool;
    const int threads = std::max(1, lab_thread_count());
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io-error: cannot write " + path);
    out << "# rbg-results v1\n" << ResultRow::csv_header() << '\n';
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.n, a.s, a.b) < std::tie(b.n, b.s, b.b);
    });
    for (const auto& row : sorted) out << row.to_csv() << '\n';
}

// --- threshold estimation ------------------------------------------------------

namespace {

double win_rate_at(const ExperimentConfig& cfg, int n, int s, int b) {
    ExperimentConfig point = cfg;
    point.n_grid = {n};
    point.s_grid = {s};
    point.b_grid = {b};
    const auto rows = run_sweep(point);
    return static_cast<double>(rows[0].maker_wins) / rows[0].trials;
}

}  // namespace

ThresholdEstimate estimate_empirical_threshold(const ExperimentConfig& cfg, int n, int s,
                                               int b_min, int b_max) {
    const double hi = 0.9, lo = 0.1;
    ThresholdEstimate est;
    auto rate = [&](int b) {
        auto it = est.win_rates.find(b);
        if (it != est.win_rates.end()) return it->second;
        const double r = win_rate_at(cfg, n, s, b);
        est.win_rates[b] = r;
        return r;
    };

    int b_low = b_min;
    const double first = rate(b_min);
    if (first <= lo) {
        // Breaker already favored at the smallest bias
        est.b_low = b_min - 1;
        est.b_high = b_min;
        return est;
    }
    if (first < hi) throw ThresholdSearchError("non-monotone-data: ambiguous at b_min");

    // exponential bracket
    int b_high = -1;
    for (int b = std::max(2 * b_min, b_min + 1); b <= b_max; b *= 2) {
        const double r = rate(b);
        if (r >= hi) {
            b_low = b;
        } else if (r <= lo) {
            b_high = b;
            break;
        } else {
            // in the soft zone: keep expanding, remember nothing
        }
        if (b > b_max / 2) break;
    }
    if (b_high < 0) throw ThresholdSearchError("non-monotone-data: bracket never established");

    // bisection, conservative: move endpoints only on decisive rates
    while (b_high - b_low > 1) {
        const int mid = b_low + (b_high - b_low) / 2;
        const double r = rate(mid);
        if (r >= hi) b_low = mid;
        else if (r <= lo) b_high = mid;
        else if (r >= 0.5) b_low = mid;  // soft middle: still shrink the interval
        else b_high = mid;
    }
    est.b_low = b_low;
    est.b_high = b_high;
    return est;
}

// --- random graph intuition -----------------------------------------------------

bool rainbow_connected_masks(const ColoredSubgraph& g, int max_len) {
    const int n = g.n();
    if (g.s() > 62) throw RainbowError("mask search capped at 62 colors");
    // From each source, propagate minimal color masks: a pair (vertex, mask)
    // antichain per vertex. Sound and complete for existence queries.
    constexpr size_t kAntichainCap = 4096;
    for (int src = 0; src < n; ++src) {
        std::vector<std::vector<std::uint64_t>> minimal(static_cast<size_t>(n));
        std::vector<std::pair<int, std::uint64_t>> frontier{{src, 0}};
        minimal[src] = {0};
        std::vector<char> reached(static_cast<size_t>(n), 0);
        reached[src] = 1;
        int reach_count = 1;
        for (int depth = 0; depth < max_len && !frontier.empty(); ++depth) {
            std::vector<std::pair<int, std::uint64_t>> next;
            for (const auto& [v, mask] : frontier) {
                for (const auto& [w, c] : g.at(v)) {
                    if ((mask >> c) & 1) continue;
                    const std::uint64_t m2 = mask | (1ULL << c);
                    auto& anti = minimal[w];
                    bool dominated = false;
                    for (const auto& m : anti)
                        if ((m & m2) == m) {
                            dominated = true;
                            break;
                        }
                    if (dominated) continue;
                    std::erase_if(anti, [&](std::uint64_t m) { return (m2 & m) == m2; });
                    if (anti.size() >= kAntichainCap) continue;  // cap: stay sound
                    anti.push_back(m2);
                    next.push_back({w, m2});
                    if (!reached[w]) {
                        reached[w] = 1;
                        ++reach_count;
                    }
                }
            }
            if (reach_count == n) break;
            frontier = std::move(next);
        }
        if (reach_count < n) return false;
    }
    return true;
}

std::vector<RandomIntuitionRow> random_intuition_scan(int n, int s, double p_center,
                                                      const std::vector<double>& p_factors,
                                                      int samples, std::uint64_t seed,
                                                      int max_len) {
    std::vector<RandomIntuitionRow> rows;
    for (double f : p_factors) {
        RandomIntuitionRow row;
        row.n = n;
        row.s = s;
        row.p = std::min(1.0, p_center * f);
        row.samples = samples;
        rows.push_back(row);
    }
    std::atomic<size_t> next{0};
    std::vector<std::atomic<int>> connected(rows.size());
    for (auto& c : connected) c = 0;
    const size_t total_tasks = rows.size() * static_cast<size_t>(samples);
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= total_tasks) return;
            const size_t cell = i / samples;
            const int trial = static_cast<int>(i % samples);
            const auto g = generate_random_system(n, s, rows[cell].p,
                                                  split_seed(seed, cell, trial));
            bool ok;
            if (max_len <= 3 && s <= 8) {
                // cheap small-s cover check
                ok = true;
                for (int v = 0; v < n && ok; ++v)
                    for (int w = v + 1; w < n && ok; ++w)
                        if (!rainbow_path_exists(g, v, w, max_len)) ok = false;
            } else {
                ok = rainbow_connected_masks(g, max_len);
            }
            if (ok) connected[cell].fetch_add(1);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < std::max(1, lab_thread_count()); ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (size_t i = 0; i < rows.size(); ++i) rows[i].connected = connected[i].load();
    return rows;
}

std::optional<double> crossing_probability(const std::vector<RandomIntuitionRow>& rows) {
    // rows are scanned in increasing p; interpolate the first 50% crossing
    for (size_t i = 1; i < rows.size(); ++i) {
        const double f0 = static_cast<double>(rows[i - 1].connected) / rows[i - 1].samples;
        const double f1 = static_cast<double>(rows[i].connected) / rows[i].samples;
        if (f0 < 0.5 && f1 >= 0.5) {
            const double t = (0.5 - f0) / (f1 - f0);
            return rows[i - 1].p + t * (rows[i].p - rows[i - 1].p);
        }
    }
    return std::nullopt;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t k = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < k; ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace rbg
