#include "hanabi/engine.hpp"

#include <cassert>
#include <stdexcept>

#include "hanabi/rng.hpp"

namespace hanabi {

void PlayerView::serialize(std::string& out) const {
  auto num = [&out](long long v) {
    out += std::to_string(v);
    out += ';';
  };
  out += "view;";
  num(viewer_);
  num(s_->player_count);
  num(s_->deck_size);
  num(s_->hint_tokens);
  num(s_->lives);
  num(s_->current_player);
  num(s_->final_countdown);
  num(s_->turn_number);
  for (int c = 0; c < kNumColors; ++c) num(s_->fireworks[c]);
  out += "discards;";
  for (const Card& c : discard_pile()) out += to_string(c);
  out += ';';
  for (int p = 0; p < s_->player_count; ++p) {
    out += "hand;";
    num(p);
    const Hand& h = s_->hands[p];
    for (int i = 0; i < h.size; ++i) {
      if (p != viewer_) out += to_string(h.slots[i].card);
      const CardKnowledge& k = h.slots[i].know;
      num(k.color_mask);
      num(k.rank_mask);
      num(k.color_hinted);
      num(k.rank_hinted);
      num(k.last_hinted_turn);
    }
  }
  out += "history;";
  for (const HistoryEntry& e : action_history()) {
    num(e.player);
    out += to_string(e.action);
    out += ';';
  }
}

uint64_t PlayerView::digest() const {
  std::string buf;
  buf.reserve(512);
  serialize(buf);
  return detail::fnv1a(buf);
}

void check_card_conservation(const GameState& s) {
  int total = s.deck_size;
  for (int p = 0; p < s.player_count; ++p) total += s.hands[p].size;
  for (int c = 0; c < kNumColors; ++c) {
    total += s.fireworks[c];
    for (int r = 1; r <= kMaxRank; ++r) total += s.discards[c][r];
  }
  assert(total == kDeckSize && "card conservation violated");
  (void)total;
}

GameState new_game(const GameConfig& config, uint64_t seed) {
  if (config.players < 2 || config.players > kMaxPlayers)
    throw std::invalid_argument("player count must be 2..5, got " +
                                std::to_string(config.players));

  GameState s;
  s.seed = seed;
  s.player_count = static_cast<uint8_t>(config.players);
  s.hand_size = static_cast<uint8_t>(config.hand_size());

  s.deck = full_deck();
  s.deck_size = kDeckSize;
  Rng shuffle_rng(stream_seed(seed, "deck"));
  for (int i = kDeckSize - 1; i > 0; --i) {
    int j = static_cast<int>(shuffle_rng.uniform(static_cast<uint32_t>(i + 1)));
    std::swap(s.deck[i], s.deck[j]);
  }

  for (int p = 0; p < config.players; ++p)
    for (int k = 0; k < s.hand_size; ++k) s.hands[p].push_back(s.deck[--s.deck_size]);

  Rng seat_rng(stream_seed(seed, "seat"));
  s.current_player = static_cast<uint8_t>(seat_rng.uniform(s.player_count));
  return s;
}

namespace {

bool hint_touches(const Hand& hand, const Action& a) {
  for (int i = 0; i < hand.size; ++i) {
    const Card& c = hand.slots[i].card;
    if (a.type == ActionType::kHintColor ? c.color == a.value : c.rank == a.value) return true;
  }
  return false;
}

}  // namespace

bool is_legal(const GameState& s, const Action& a) {
  if (is_terminal(s)) return false;
  const Hand& own = s.hands[s.current_player];
  switch (a.type) {
    case ActionType::kPlay:
      return a.slot >= 0 && a.slot < own.size;
    case ActionType::kDiscard:
      return a.slot >= 0 && a.slot < own.size && s.hint_tokens < kStartTokens;
    case ActionType::kHintColor:
    case ActionType::kHintRank: {
      if (s.hint_tokens < 1) return false;
      if (a.target < 0 || a.target >= s.player_count || a.target == s.current_player)
        return false;
      if (a.type == ActionType::kHintColor ? (a.value < 0 || a.value >= kNumColors)
                                           : (a.value < 1 || a.value > kMaxRank))
        return false;
      return hint_touches(s.hands[a.target], a);
    }
  }
  return false;
}

std::vector<Action> legal_actions(const GameState& s) {
  if (is_terminal(s)) throw std::logic_error("legal_actions on terminal state");
  std::vector<Action> out;
  const Hand& own = s.hands[s.current_player];
  out.reserve(2 * own.size + 10);
  for (int i = 0; i < own.size; ++i) out.push_back(Action::play(i));
  if (s.hint_tokens < kStartTokens)
    for (int i = 0; i < own.size; ++i) out.push_back(Action::discard(i));
  if (s.hint_tokens >= 1) {
    for (int t = 0; t < s.player_count; ++t) {
      if (t == s.current_player) continue;
      for (int c = 0; c < kNumColors; ++c) {
        Action a = Action::hint_color(t, c);
        if (hint_touches(s.hands[t], a)) out.push_back(a);
      }
      for (int r = 1; r <= kMaxRank; ++r) {
        Action a = Action::hint_rank(t, r);
        if (hint_touches(s.hands[t], a)) out.push_back(a);
      }
    }
  }
  return out;
}

ApplyEvents apply(GameState& s, const Action& a) {
  if (!is_legal(s, a)) throw std::logic_error("illegal action: " + to_string(a));

  ApplyEvents ev;
  const bool countdown_was_active = s.final_countdown >= 0;
  Hand& own = s.hands[s.current_player];

  auto discard_card = [&s](const Card& c) {
    ++s.discards[c.color][c.rank];
    s.discard_order[s.discard_size++] = c;
  };
  auto draw = [&s, &ev](Hand& hand) {
    if (s.deck_size > 0) {
      ev.drew = true;
      ev.drawn = s.deck[--s.deck_size];
      hand.push_back(ev.drawn);
      if (s.deck_size == 0 && s.final_countdown < 0) {
        s.final_countdown = static_cast<int8_t>(s.player_count);
        ev.countdown_started = true;
      }
    }
  };

  switch (a.type) {
    case ActionType::kPlay: {
      const HandSlot& slot = own.slots[a.slot];
      ev.card = slot.card;
      ev.played_color_known = slot.know.color_known();
      ev.played_rank_known = slot.know.rank_known();
      own.erase(a.slot);
      if (s.fireworks[ev.card.color] + 1 == ev.card.rank) {
        ev.success = true;
        ++s.fireworks[ev.card.color];
        if (ev.card.rank == kMaxRank && s.hint_tokens < kStartTokens) {
          ++s.hint_tokens;  // completed-stack bonus
          ev.token_gained = true;
        }
      } else {
        discard_card(ev.card);
        --s.lives;
        ev.life_lost = true;
      }
      draw(own);
      break;
    }
    case ActionType::kDiscard: {
      ev.card = own.slots[a.slot].card;
      own.erase(a.slot);
      discard_card(ev.card);
      ++s.hint_tokens;
      ev.token_gained = true;
      draw(own);
      break;
    }
    case ActionType::kHintColor:
    case ActionType::kHintRank: {
      --s.hint_tokens;
      Hand& hand = s.hands[a.target];
      const bool by_color = a.type == ActionType::kHintColor;
      for (int i = 0; i < hand.size; ++i) {
        HandSlot& slot = hand.slots[i];
        const int have = by_color ? slot.card.color : slot.card.rank;
        if (have == a.value) {
          if (by_color)
            slot.know.set_color(a.value);
          else
            slot.know.set_rank(a.value);
          slot.know.last_hinted_turn = static_cast<int16_t>(s.turn_number);
          ev.touched_mask |= static_cast<uint8_t>(1u << i);
        } else {
          if (by_color)
            slot.know.exclude_color(a.value);
          else
            slot.know.exclude_rank(a.value);
        }
      }
      break;
    }
  }

  assert(s.history_size < kMaxTurns);
  s.history[s.history_size++] = HistoryEntry{s.current_player, a};
  ++s.turn_number;
  s.current_player = static_cast<uint8_t>((s.current_player + 1) % s.player_count);
  // The turn that empties the deck is the drawer's own last turn; the
  // countdown starts ticking on the following turn.
  if (countdown_was_active) --s.final_countdown;

#ifndef NDEBUG
  check_card_conservation(s);
#endif
  return ev;
}

bool is_terminal(const GameState& s) {
  return s.lives == 0 || s.final_countdown == 0 || s.score() == kMaxScore;
}

GameRecord play_game(std::vector<Agent*> seats, const GameConfig& config, uint64_t seed,
                     const PlayOptions& options) {
  if (static_cast<int>(seats.size()) != config.players)
    throw std::invalid_argument("play_game: seat count does not match config");

  GameState s = new_game(config, seed);
  for (int p = 0; p < config.players; ++p)
    seats[p]->begin_game(stream_seed(seed, "rules", static_cast<uint64_t>(p)), p);

  GameRecord rec;
  rec.seed = seed;
  rec.config = config;
  rec.agent_names = options.agent_names;
  rec.stats.resize(seats.size());

  while (!is_terminal(s)) {
    const int actor = s.current_player;
    const uint8_t tokens_before = s.hint_tokens;
    const uint8_t lives_before = s.lives;
    PlayerView view(s, actor);
    const Action action = seats[actor]->act(view);
    if (!is_legal(s, action))
      throw std::runtime_error("agent at seat " + std::to_string(actor) +
                               " returned illegal action '" + to_string(action) + "' on turn " +
                               std::to_string(s.turn_number));

    uint64_t digest = 0;
    if (options.record_turns) digest = view.digest();
    if (options.on_turn) options.on_turn(s, action);

    const ApplyEvents ev = apply(s, action);

    TurnObservation obs;
    obs.actor = static_cast<uint8_t>(actor);
    obs.action = action;
    obs.tokens_before = tokens_before;
    obs.played_color_known = ev.played_color_known;
    obs.played_rank_known = ev.played_rank_known;
    record_turn(rec.stats[actor], obs);
    for (Agent* agent : seats) agent->observe(obs);

    if (options.record_turns) {
      TurnEntry entry;
      entry.player = static_cast<uint8_t>(actor);
      entry.tokens_before = tokens_before;
      entry.lives_before = lives_before;
      entry.action = action;
      entry.events = ev;
      entry.view_digest = digest;
      rec.turns.push_back(entry);
    }
  }

  rec.final_score = s.score();
  rec.turn_count = s.turn_number;
  return rec;
}

GameRecord play_game(Agent& seat0, Agent& seat1, uint64_t seed, const PlayOptions& options) {
  return play_game({&seat0, &seat1}, GameConfig{2}, seed, options);
}

void replay_record(const GameRecord& record,
                   const std::function<void(const GameState&, const TurnEntry&)>& on_turn) {
  if (record.turns.empty()) throw std::invalid_argument("record has no turn entries to replay");
  GameState s = new_game(record.config, record.seed);
  for (const TurnEntry& t : record.turns) {
    if (is_terminal(s) || s.current_player != t.player || s.hint_tokens != t.tokens_before)
      throw std::runtime_error("record does not replay: divergence at turn " +
                               std::to_string(s.turn_number));
    on_turn(s, t);
    apply(s, t.action);
  }
  if (s.score() != record.final_score)
    throw std::runtime_error("record does not replay: final score mismatch");
}

}  // namespace hanabi
