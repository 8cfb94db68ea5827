#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbg/board.hpp"
#include "rbg/rainbow.hpp"
#include "rbg/rng.hpp"

namespace rbg {

using ParamPack = std::map<std::string, double>;

inline double param_or(const ParamPack& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

// Win predicates are monotone in Maker's graph and evaluated on it.
struct WinPredicate {
    std::string id;       // registered identifier
    ParamPack params;
};

bool predicate_registered(const std::string& id);
bool eval_predicate(const WinPredicate& pred, const ColoredSubgraph& maker_graph);
// true when the predicate ignores the V_L/V_R split (enables full vertex
// symmetry in the solver)
bool predicate_split_independent(const std::string& id);

struct GameConfig {
    int n = 2;
    int s = 1;
    int maker_bias = 1;    // p
    int breaker_bias = 1;  // b
    Player first_player = Player::Maker;
    WinPredicate predicate;
    std::uint64_t seed = 0;
    ParamPack strategy_params;
    // 0 = evaluate at game end only; k > 0 additionally checks the predicate
    // after every k-th Maker claim (sound for the monotone predicates here)
    int maker_win_check_interval = 0;
};

struct Move {
    int round = 0;
    Player player = Player::Maker;
    EdgeRef edge;

    friend bool operator==(const Move&, const Move&) = default;
};

struct Outcome {
    enum class Kind { MakerWin, BreakerWin, Forfeit, Undecided };
    Kind kind = Kind::Undecided;
    Player forfeited_by = Player::Maker;  // meaningful when kind == Forfeit
    std::string reason;

    // forfeits are scored for the opponent
    bool maker_won() const {
        return kind == Kind::MakerWin ||
               (kind == Kind::Forfeit && forfeited_by == Player::Breaker);
    }
    friend bool operator==(const Outcome& a, const Outcome& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::Forfeit) return a.forfeited_by == b.forfeited_by;
        return true;
    }
};

std::string outcome_to_string(const Outcome& o);

struct Transcript {
    GameConfig config;
    std::vector<Move> moves;
    Outcome outcome;
    std::vector<std::uint64_t> rng_trace;  // optional per-move draw log, empty by default

    std::string to_jsonl() const;
    static Transcript from_jsonl(const std::string& text);
};

struct ForfeitSignal {
    std::string reason;
};

struct CorruptTranscript : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MoveCtx {
    int round = 1;
    int claim_index = 0;                 // 0-based within this player's claims this round
    const std::vector<Move>* history = nullptr;
};

// Strategies see the board read-only and may not mutate it; they may pass
// (return nullopt) to skip the rest of their claims in the round.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual void begin(const Board& board, const GameConfig& config, Player role,
                       std::uint64_t seed) = 0;
    virtual std::optional<EdgeRef> choose(const Board& board, const MoveCtx& ctx) = 0;
};

std::pair<Outcome, Transcript> play_game(Board board, Strategy& maker, Strategy& breaker,
                                         const GameConfig& config);

// Re-executes the transcript on a fresh board, validating alternation, bias
// and claim states; throws CorruptTranscript on violations. Truncated
// transcripts yield Undecided.
Outcome replay(const Transcript& t);

// Baseline strategies used across tests and experiments.
std::unique_ptr<Strategy> make_random_strategy();
// claims the free edge that most shortens the current farthest pair in the
// player's color-blind graph
std::unique_ptr<Strategy> make_greedy_path_strategy();

}  // namespace rbg
