#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hanabi/action.hpp"
#include "hanabi/state.hpp"
#include "hanabi/stats.hpp"

namespace hanabi {

struct GameConfig {
  int players = 2;

  // Standard hand sizes: 5 for 2-3 players, 4 for 4-5.
  int hand_size() const { return players <= 3 ? 5 : 4; }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// What apply() did, in public terms. Everything a record line or an observer
// needs to reconstruct the turn.
struct ApplyEvents {
  Card card{};                // the card played or discarded
  bool success = false;       // play landed on its stack
  bool life_lost = false;
  bool token_gained = false;  // discard recovery or completed-five bonus
  bool drew = false;
  Card drawn{};
  bool countdown_started = false;
  uint8_t touched_mask = 0;   // hints: bit per touched slot
  bool played_color_known = false;  // knowledge state at the moment of play
  bool played_rank_known = false;
};

GameState new_game(const GameConfig& config, uint64_t seed);

// Deterministic order: plays by slot, discards by slot (none at 8 tokens),
// then hints by (target asc, colors asc, then ranks asc).
std::vector<Action> legal_actions(const GameState& state);
bool is_legal(const GameState& state, const Action& action);

ApplyEvents apply(GameState& state, const Action& action);

bool is_terminal(const GameState& state);
inline int score(const GameState& state) { return state.score(); }

// A seat in a game. begin_game hands the agent its per-seat RNG seed; act
// must return a legal action; observe fires after every completed turn,
// including the agent's own.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_game(uint64_t rule_seed, int seat) {}
  virtual Action act(const PlayerView& view) = 0;
  virtual void observe(const TurnObservation& obs) {}
};

struct TurnEntry {
  uint8_t player = 0;
  uint8_t tokens_before = 0;
  uint8_t lives_before = 0;
  Action action;
  ApplyEvents events;
  uint64_t view_digest = 0;
};

struct GameRecord {
  uint64_t seed = 0;
  GameConfig config;
  std::vector<std::string> agent_names;
  std::vector<TurnEntry> turns;  // filled only when requested
  int final_score = 0;
  int turn_count = 0;
  std::vector<PlayStats> stats;  // per seat
};

struct PlayOptions {
  bool record_turns = false;           // build TurnEntry list + view digests
  std::vector<std::string> agent_names;
  // Invoked before each action with the pre-action state; used by the
  // analysis corpus and the risk-aversion replay.
  std::function<void(const GameState&, const Action&)> on_turn;
};

// Runs one seeded game. Starting seat comes from the game seed; per-seat rule
// RNG seeds are derived from (seed, seat). Throws if an agent returns an
// illegal action, identifying the seat and turn.
GameRecord play_game(std::vector<Agent*> seats, const GameConfig& config, uint64_t seed,
                     const PlayOptions& options = {});
GameRecord play_game(Agent& seat0, Agent& seat1, uint64_t seed, const PlayOptions& options = {});

// Debug-build invariant: 50 cards split across deck, hands, discards and
// fireworks at all times.
void check_card_conservation(const GameState& state);

// Re-runs a recorded game from its seed, invoking `on_turn` with the
// pre-action state before each recorded action is applied. Determinism makes
// this an exact reconstruction; throws if the record does not replay.
void replay_record(const GameRecord& record,
                   const std::function<void(const GameState&, const TurnEntry&)>& on_turn);

}  // namespace hanabi
