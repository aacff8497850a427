#include "netgames/engine.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "netgames/error.hpp"

namespace netgames {

std::string_view to_string(GameKind g) noexcept {
  switch (g) {
    case GameKind::G1: return "G1";
    case GameKind::G2: return "G2";
    case GameKind::G3: return "G3";
    case GameKind::G4: return "G4";
    case GameKind::G5: return "G5";
  }
  return "?";
}

GameKind parse_game(std::string_view name) {
  std::string_view digits = name;
  if (!digits.empty() && (digits.front() == 'g' || digits.front() == 'G')) {
    digits.remove_prefix(1);
  }
  if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '5') {
    return static_cast<GameKind>(digits[0] - '0');
  }
  throw InvalidParameter("unknown game '" + std::string(name) + "' (expected g1..g5)");
}

std::string_view to_string(GameResult r) noexcept {
  switch (r) {
    case GameResult::WinA: return "win_a";
    case GameResult::WinB: return "win_b";
    case GameResult::Tie: return "tie";
    case GameResult::Censored: return "censored";
  }
  return "?";
}

std::string_view to_string(ProximityRule r) noexcept {
  return r == ProximityRule::Adjacent ? "adjacent" : "inclusive";
}

ProximityRule parse_proximity_rule(std::string_view name) {
  if (name == "adjacent") return ProximityRule::Adjacent;
  if (name == "inclusive") return ProximityRule::Inclusive;
  throw InvalidParameter("unknown proximity rule '" + std::string(name) +
                         "' (expected adjacent, inclusive)");
}

void validate(const GameConfig& config) {
  if (config.players_per_team < 1) {
    throw InvalidParameter("players_per_team must be >= 1");
  }
  if (config.max_iterations < 1) {
    throw InvalidParameter("max_iterations must be >= 1");
  }
}

// ---------------------------------------------------------------------------
// GameState

GameState::GameState(const Graph& graph) : graph_(&graph) {
  for (auto& c : count_) c.assign(graph.node_count(), 0);
  for (auto& c : nearby_) c.assign(graph.node_count(), 0);
}

void GameState::add_presence(NodeId node, Team team, int delta) noexcept {
  const auto t = index(team);
  count_[t][node] += static_cast<std::uint32_t>(delta);
  nearby_[t][node] += static_cast<std::uint32_t>(delta);
  for (NodeId n : graph_->neighbors(node)) {
    nearby_[t][n] += static_cast<std::uint32_t>(delta);
  }
}

void GameState::place(NodeId node, Team team) {
  if (node >= graph_->node_count()) {
    throw InvalidParameter("place: node out of range");
  }
  add_presence(node, team, +1);
  players_[index(team)].push_back(node);
}

void GameState::move_player(Team team, std::size_t player, NodeId to) {
  NodeId& at = players_[index(team)][player];
  add_presence(at, team, -1);
  add_presence(to, team, +1);
  at = to;
}

void GameState::remove_player(Team team, std::size_t player) {
  auto& list = players_[index(team)];
  add_presence(list[player], team, -1);
  list[player] = list.back();
  list.pop_back();
}

void GameState::check_invariants() const {
  const std::size_t n = graph_->node_count();
  for (Team team : {Team::A, Team::B}) {
    std::vector<std::uint32_t> counts(n, 0);
    for (NodeId p : players(team)) {
      ++counts[p];
    }
    if (counts != count_[index(team)]) {
      throw ContractViolation("occupancy counts disagree with player list");
    }
    for (NodeId v = 0; v < n; ++v) {
      std::uint32_t near = counts[v];
      for (NodeId u : graph_->neighbors(v)) near += counts[u];
      if (near != nearby_[index(team)][v]) {
        throw ContractViolation("proximity cache out of date at node " + std::to_string(v));
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (count(v, Team::A) > 0 && count(v, Team::B) > 0) {
      throw ContractViolation("node " + std::to_string(v) + " holds both teams");
    }
  }
}

// ---------------------------------------------------------------------------

GameState init_state(const Graph& graph, std::size_t players_per_team, Rng& rng) {
  if (graph.node_count() < 2) {
    throw InvalidParameter("init_state: graph needs at least 2 nodes");
  }
  GameState state(graph);
  for (std::size_t i = 0; i < 2 * players_per_team; ++i) {
    const Team team = (i % 2 == 0) ? Team::A : Team::B;
    const Team other = adversary(team);
    std::uint64_t free_nodes = 0;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      if (state.count(v, other) == 0) ++free_nodes;
    }
    if (free_nodes == 0) {
      throw InitializationError("init_state: no node free of the adversary for player " +
                                std::to_string(i));
    }
    std::uint64_t r = uniform_index(rng, free_nodes);
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      if (state.count(v, other) == 0 && r-- == 0) {
        state.place(v, team);
        break;
      }
    }
  }
  return state;
}

std::vector<NodeId> valid_destinations(const GameState& state, NodeId from, Team team) {
  std::vector<NodeId> out;
  const Team other = adversary(team);
  for (NodeId n : state.graph().neighbors(from)) {
    if (state.count(n, other) == 0) out.push_back(n);
  }
  return out;
}

std::uint32_t proximity_score(const GameState& state, NodeId node, Team team,
                              std::optional<NodeId> exclude_self_at, ProximityRule rule) {
  std::uint32_t score = state.nearby(node, team);
  if (rule == ProximityRule::Adjacent) {
    score -= state.count(node, team);
  }
  if (exclude_self_at && state.count(*exclude_self_at, team) > 0) {
    const bool counted = *exclude_self_at == node ? rule == ProximityRule::Inclusive
                                                  : state.graph().has_edge(*exclude_self_at, node);
    if (counted) --score;
  }
  return score;
}

namespace {

bool uses_strategy(GameKind game, Team team) noexcept {
  return game == GameKind::G4 || (game == GameKind::G3 && team == Team::A);
}

}  // namespace

std::optional<NodeId> choose_move(const GameState& state, NodeId from, Team team, GameKind game,
                                  Rng& rng, ProximityRule rule) {
  const Team other = adversary(team);
  const auto nbrs = state.graph().neighbors(from);
  auto open = [&](NodeId n) { return state.count(n, other) == 0; };
  // Every candidate is adjacent to `from`, so the mover is always counted
  // once in the candidate's neighborhood and discounted here.
  const bool adjacent_only = rule == ProximityRule::Adjacent;
  auto score = [&](NodeId n) {
    return state.nearby(n, team) - (adjacent_only ? state.count(n, team) : 0) - 1;
  };

  if (uses_strategy(game, team)) {
    std::int64_t best = -1;
    std::uint64_t ties = 0;
    for (NodeId n : nbrs) {
      if (!open(n)) continue;
      const std::int64_t s = score(n);
      if (s > best) {
        best = s;
        ties = 1;
      } else if (s == best) {
        ++ties;
      }
    }
    if (ties == 0) return std::nullopt;
    std::uint64_t r = ties > 1 ? uniform_index(rng, ties) : 0;
    for (NodeId n : nbrs) {
      if (open(n) && score(n) == best && r-- == 0) return n;
    }
  } else if (game == GameKind::G5) {
    std::uint64_t total = 0;
    std::uint64_t options = 0;
    for (NodeId n : nbrs) {
      if (!open(n)) continue;
      total += score(n) + 1;
      ++options;
    }
    if (options == 0) return std::nullopt;
    std::uint64_t r = options > 1 ? uniform_index(rng, total) : 0;
    for (NodeId n : nbrs) {
      if (!open(n)) continue;
      const std::uint64_t w = score(n) + 1;
      if (r < w) return n;
      r -= w;
    }
  } else {
    std::uint64_t options = 0;
    for (NodeId n : nbrs) {
      if (open(n)) ++options;
    }
    if (options == 0) return std::nullopt;
    std::uint64_t r = options > 1 ? uniform_index(rng, options) : 0;
    for (NodeId n : nbrs) {
      if (open(n) && r-- == 0) return n;
    }
  }
  throw ContractViolation("choose_move: selection fell through");
}

EncounterRecord resolve_encounter(const GameState& state, NodeId node, GameKind game,
                                  ProximityRule rule) {
  if (state.count(node, Team::A) != 1 || state.count(node, Team::B) != 1) {
    throw ContractViolation("resolve_encounter: node " + std::to_string(node) +
                            " must hold exactly one player of each team");
  }
  EncounterRecord rec{node, true, true};
  if (game == GameKind::G1) {
    return rec;
  }
  const auto score_a = proximity_score(state, node, Team::A, node, rule);
  const auto score_b = proximity_score(state, node, Team::B, node, rule);
  if (score_a > score_b) {
    rec.removed_a = false;
  } else if (score_b > score_a) {
    rec.removed_b = false;
  }
  return rec;
}

StepRecord step(GameState& state, GameKind game, Rng& rng, ProximityRule rule) {
  if (state.finished()) {
    throw ContractViolation("step: game already finished");
  }
  const std::size_t ia = uniform_index(rng, state.alive(Team::A));
  const std::size_t ib = uniform_index(rng, state.alive(Team::B));

  StepRecord rec;
  rec.from = {state.players(Team::A)[ia], state.players(Team::B)[ib]};
  rec.to[0] = choose_move(state, rec.from[0], Team::A, game, rng, rule);
  rec.to[1] = choose_move(state, rec.from[1], Team::B, game, rng, rule);

  if (rec.to[0]) state.move_player(Team::A, ia, *rec.to[0]);
  if (rec.to[1]) state.move_player(Team::B, ib, *rec.to[1]);

  if (rec.to[0] && rec.to[1] && *rec.to[0] == *rec.to[1]) {
    const NodeId node = *rec.to[0];
    // Both destinations were adversary-free before the move, so the node
    // was empty; anything else here means a corrupted state.
    rec.encounter = resolve_encounter(state, node, game, rule);
    if (rec.encounter->removed_a) state.remove_player(Team::A, ia);
    if (rec.encounter->removed_b) state.remove_player(Team::B, ib);
  }
  state.advance();
  return rec;
}

// ---------------------------------------------------------------------------
// Absorbing-state probe

namespace {

// Interned per-team occupancy vectors (one byte per node). Lookup goes
// through an open-addressing table keyed by an additive hash (sum of
// count * salt[node]), which updates in O(1) when one player moves; equality
// is always checked on the full bytes. The neighborhood counts used for
// scoring depend only on the team's own occupancy, so they are cached here.
class ConfigTable {
 public:
  explicit ConfigTable(const Graph& g) : g_(&g), n_(g.node_count()), salt_(n_) {
    std::uint64_t x = 0x243F6A8885A308D3ULL;
    for (auto& s : salt_) s = mix64(x++);
    table_.assign(1024, kEmpty);
  }

  [[nodiscard]] const std::uint8_t* counts(std::uint32_t id) const {
    return counts_.data() + std::size_t{id} * n_;
  }
  [[nodiscard]] const std::uint8_t* nearby(std::uint32_t id) const {
    return nearby_.data() + std::size_t{id} * n_;
  }
  [[nodiscard]] std::uint64_t hash_of(std::uint32_t id) const { return hashes_[id]; }
  [[nodiscard]] std::uint64_t salt(NodeId v) const { return salt_[v]; }

  [[nodiscard]] std::uint64_t hash(const std::uint8_t* c) const {
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < n_; ++i) h += c[i] * salt_[i];
    return h;
  }

  std::uint32_t intern(const std::uint8_t* c, std::uint64_t h) {
    const std::size_t mask = table_.size() - 1;
    for (std::size_t pos = mix64(h) & mask;; pos = (pos + 1) & mask) {
      const std::uint32_t id = table_[pos];
      if (id == kEmpty) {
        const auto fresh = static_cast<std::uint32_t>(hashes_.size());
        table_[pos] = fresh;
        add(c, h);
        if (2 * hashes_.size() > table_.size()) grow();
        return fresh;
      }
      if (hashes_[id] == h && std::equal(c, c + n_, counts(id))) return id;
    }
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFU;

  void add(const std::uint8_t* c, std::uint64_t h) {
    counts_.insert(counts_.end(), c, c + n_);
    hashes_.push_back(h);
    const std::size_t base = nearby_.size();
    nearby_.resize(base + n_, 0);
    for (NodeId v = 0; v < n_; ++v) {
      if (c[v] == 0) continue;
      nearby_[base + v] = static_cast<std::uint8_t>(nearby_[base + v] + c[v]);
      for (NodeId u : g_->neighbors(v)) {
        nearby_[base + u] = static_cast<std::uint8_t>(nearby_[base + u] + c[v]);
      }
    }
  }

  void grow() {
    table_.assign(table_.size() * 2, kEmpty);
    const std::size_t mask = table_.size() - 1;
    for (std::uint32_t i = 0; i < hashes_.size(); ++i) {
      std::size_t pos = mix64(hashes_[i]) & mask;
      while (table_[pos] != kEmpty) pos = (pos + 1) & mask;
      table_[pos] = i;
    }
  }

  const Graph* g_;
  std::size_t n_;
  std::vector<std::uint64_t> salt_;
  std::vector<std::uint8_t> counts_;
  std::vector<std::uint8_t> nearby_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> table_;
};

// Open-addressing set of 64-bit keys that also records insertion order.
class KeySet {
 public:
  KeySet() { table_.assign(1024, kEmpty); }

  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
  [[nodiscard]] std::uint64_t operator[](std::size_t i) const { return order_[i]; }

  bool insert(std::uint64_t key) {
    const std::size_t mask = table_.size() - 1;
    for (std::size_t pos = mix64(key) & mask;; pos = (pos + 1) & mask) {
      if (table_[pos] == kEmpty) {
        table_[pos] = key;
        order_.push_back(key);
        if (2 * order_.size() > table_.size()) grow();
        return true;
      }
      if (table_[pos] == key) return false;
    }
  }

 private:
  // Never a valid key: config ids stay far below 2^32 - 1.
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  void grow() {
    table_.assign(table_.size() * 2, kEmpty);
    const std::size_t mask = table_.size() - 1;
    for (std::uint64_t key : order_) {
      std::size_t pos = mix64(key) & mask;
      while (table_[pos] != kEmpty) pos = (pos + 1) & mask;
      table_[pos] = key;
    }
  }

  std::vector<std::uint64_t> table_;
  std::vector<std::uint64_t> order_;
};

struct Move {
  NodeId from;
  NodeId to;  // == from for Stay
};

// Every (from, to) move choose_move could produce for a mover standing on
// an occupied node of `own`.
void enumerate_moves(const Graph& g, const std::uint8_t* own, const std::uint8_t* own_nearby,
                     const std::uint8_t* other, bool strategic, ProximityRule rule,
                     std::vector<Move>& out) {
  out.clear();
  const std::size_t n = g.node_count();
  for (NodeId from = 0; from < n; ++from) {
    if (own[from] == 0) continue;
    const std::size_t first = out.size();
    int best = -1;
    for (NodeId v : g.neighbors(from)) {
      if (other[v] != 0) continue;
      if (!strategic) {
        out.push_back({from, v});
        continue;
      }
      const int s = own_nearby[v] - (rule == ProximityRule::Adjacent ? own[v] : 0) - 1;
      if (s > best) {
        best = s;
        out.resize(first);
      }
      if (s == best) out.push_back({from, v});
    }
    if (out.size() == first) out.push_back({from, from});
  }
}

}  // namespace

Reachability probe_encounters(const GameState& state, GameKind game, ProximityRule rule,
                              std::size_t max_states) {
  const Graph& g = state.graph();
  const std::size_t n = g.node_count();
  if (state.finished()) return Reachability::Unreachable;
  if (state.alive(Team::A) > 255 || state.alive(Team::B) > 255) return Reachability::Unknown;

  // A joint state is the pair of interned team configurations (a << 32 | b).
  ConfigTable configs[2] = {ConfigTable(g), ConfigTable(g)};
  std::vector<std::uint8_t> buf(n);
  std::uint32_t start[2];
  for (std::size_t t = 0; t < 2; ++t) {
    for (NodeId v = 0; v < n; ++v) {
      buf[v] = static_cast<std::uint8_t>(state.count(v, static_cast<Team>(t)));
    }
    start[t] = configs[t].intern(buf.data(), configs[t].hash(buf.data()));
  }
  KeySet seen;
  seen.insert((std::uint64_t{start[0]} << 32) | start[1]);

  const bool strategic[2] = {uses_strategy(game, Team::A), uses_strategy(game, Team::B)};
  std::vector<Move> moves[2];
  std::vector<std::uint32_t> next[2];
  std::vector<std::uint8_t> target_of_a(n);

  // `seen` doubles as the BFS queue: states are expanded in insertion order.
  for (std::size_t cur = 0; cur < seen.size(); ++cur) {
    const std::uint32_t id[2] = {static_cast<std::uint32_t>(seen[cur] >> 32),
                                 static_cast<std::uint32_t>(seen[cur])};
    for (std::size_t t = 0; t < 2; ++t) {
      enumerate_moves(g, configs[t].counts(id[t]), configs[t].nearby(id[t]),
                      configs[1 - t].counts(id[1 - t]), strategic[t], rule, moves[t]);
    }

    // Any A mover can be paired with any B mover, so an encounter is possible
    // exactly when some real A destination is also a real B destination.
    std::fill(target_of_a.begin(), target_of_a.end(), 0);
    for (const auto& m : moves[0]) {
      if (m.to != m.from) target_of_a[m.to] = 1;
    }
    for (const auto& m : moves[1]) {
      if (m.to != m.from && target_of_a[m.to]) return Reachability::Reachable;
    }

    for (std::size_t t = 0; t < 2; ++t) {
      next[t].clear();
      const std::uint64_t h = configs[t].hash_of(id[t]);
      for (const auto& m : moves[t]) {
        std::copy_n(configs[t].counts(id[t]), n, buf.begin());
        --buf[m.from];
        ++buf[m.to];
        next[t].push_back(
            configs[t].intern(buf.data(), h - configs[t].salt(m.from) + configs[t].salt(m.to)));
      }
      std::sort(next[t].begin(), next[t].end());
      next[t].erase(std::unique(next[t].begin(), next[t].end()), next[t].end());
    }
    for (std::uint32_t a : next[0]) {
      for (std::uint32_t b : next[1]) {
        if (seen.insert((std::uint64_t{a} << 32) | b) && seen.size() > max_states) {
          return Reachability::Unknown;
        }
      }
    }
  }
  return Reachability::Unreachable;
}

// ---------------------------------------------------------------------------

namespace {

// A probe is attempted after this many encounter-free iterations, then after
// twice as many, and so on; the gap resets on every encounter. Each probe may
// visit gap / kProbeCostRatio states, which keeps probing time roughly in
// proportion to the simulation time it could save.
constexpr std::uint64_t kFirstProbeGap = 10'000;
constexpr std::uint64_t kProbeCostRatio = 4;

}  // namespace

GameOutcome run_game(const Graph& graph, const GameConfig& config, const StepObserver& observer) {
  validate(config);
  Rng rng(config.seed);
  GameState state = init_state(graph, config.players_per_team, rng);
  const bool may_skip = config.skip_absorbed && !observer;
  std::uint64_t last_encounter = 0;
  std::uint64_t probe_gap = kFirstProbeGap;
  bool absorbed = false;
  while (!state.finished() && state.iteration() < config.max_iterations) {
    const StepRecord rec = step(state, config.game, rng, config.proximity);
    if (observer) observer(state, rec);
    if (rec.encounter) {
      last_encounter = state.iteration();
      probe_gap = kFirstProbeGap;
    } else if (may_skip && state.iteration() - last_encounter == probe_gap) {
      const auto r = probe_encounters(state, config.game, config.proximity,
                                      probe_gap / kProbeCostRatio);
      if (r == Reachability::Unreachable) {
        absorbed = true;
        break;
      }
      probe_gap *= 2;
    }
  }

  GameOutcome out;
  out.duration = absorbed ? config.max_iterations : state.iteration();
  const bool a_alive = state.alive(Team::A) > 0;
  const bool b_alive = state.alive(Team::B) > 0;
  if (a_alive && b_alive) {
    out.result = GameResult::Censored;
  } else if (a_alive) {
    out.result = GameResult::WinA;
  } else if (b_alive) {
    out.result = GameResult::WinB;
  } else {
    out.result = GameResult::Tie;
  }
  return out;
}

}  // namespace netgames
