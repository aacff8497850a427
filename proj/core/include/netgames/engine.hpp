#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "netgames/graph.hpp"
#include "netgames/rng.hpp"

namespace netgames {

enum class Team : std::uint8_t { A = 0, B = 1 };

constexpr Team adversary(Team t) noexcept { return t == Team::A ? Team::B : Team::A; }
constexpr std::size_t index(Team t) noexcept { return static_cast<std::size_t>(t); }

/// G1: random moves, encounters cancel both players.
/// G2: random moves, the encounter is won by the player with more teammates nearby.
/// G3: as G2, but team A moves to the destination with the most teammates nearby.
/// G4: as G2, both teams move to the destination with the most teammates nearby.
/// G5: as G2, both teams move with probability proportional to (teammates nearby + 1).
enum class GameKind : std::uint8_t { G1 = 1, G2 = 2, G3 = 3, G4 = 4, G5 = 5 };

inline constexpr GameKind kAllGames[] = {GameKind::G1, GameKind::G2, GameKind::G3, GameKind::G4,
                                         GameKind::G5};

std::string_view to_string(GameKind g) noexcept;  // "G1".."G5"
GameKind parse_game(std::string_view name);       // "g1" / "G1" / "1"

/// Which teammates count as "nearby" a node.
///   Adjacent:  players on nodes adjacent to it (players standing on the node
///              itself are not counted).
///   Inclusive: players on the node itself or on adjacent nodes.
/// In both cases the moving player never counts itself.
enum class ProximityRule : std::uint8_t { Adjacent, Inclusive };

std::string_view to_string(ProximityRule r) noexcept;
ProximityRule parse_proximity_rule(std::string_view name);

struct GameConfig {
  GameKind game = GameKind::G1;
  ProximityRule proximity = ProximityRule::Adjacent;
  std::size_t players_per_team = 10;
  std::uint64_t max_iterations = 1'000'000;
  std::uint64_t seed = 0;
  /// Finish a run early as Censored once no encounter is reachable from the
  /// current state (see probe_encounters). The outcome is the same as
  /// simulating to the cap; only the wall-clock time differs.
  bool skip_absorbed = true;
};

/// Throws InvalidParameter unless players_per_team >= 1 and max_iterations >= 1.
void validate(const GameConfig& config);

enum class GameResult : std::uint8_t { WinA, WinB, Tie, Censored };

std::string_view to_string(GameResult r) noexcept;

struct GameOutcome {
  GameResult result = GameResult::Tie;
  std::uint64_t duration = 0;

  friend bool operator==(const GameOutcome&, const GameOutcome&) = default;
};

/// Occupancy of the arena. Besides per-node counts the state caches, for
/// every node and team, the number of that team's players on the node or on
/// any adjacent node, so proximity queries are O(1).
///
/// A state is bound to the graph it was created for and must not outlive it.
class GameState {
 public:
  explicit GameState(const Graph& graph);

  [[nodiscard]] const Graph& graph() const noexcept { return *graph_; }
  [[nodiscard]] std::uint32_t count(NodeId node, Team team) const noexcept {
    return count_[index(team)][node];
  }
  [[nodiscard]] std::uint32_t nearby(NodeId node, Team team) const noexcept {
    return nearby_[index(team)][node];
  }
  [[nodiscard]] std::size_t alive(Team team) const noexcept { return players_[index(team)].size(); }
  [[nodiscard]] std::uint64_t iteration() const noexcept { return iteration_; }
  [[nodiscard]] bool finished() const noexcept { return alive(Team::A) == 0 || alive(Team::B) == 0; }

  /// Node of every live player of `team` (one entry per player).
  [[nodiscard]] std::span<const NodeId> players(Team team) const noexcept {
    return players_[index(team)];
  }

  void place(NodeId node, Team team);
  /// Moves player number `player` of `team` to `to`.
  void move_player(Team team, std::size_t player, NodeId to);
  /// Removes player number `player` of `team`. Player numbering of the last
  /// player changes (swap-remove).
  void remove_player(Team team, std::size_t player);
  void advance() noexcept { ++iteration_; }

  /// Throws ContractViolation if counts, caches, or the no-mixed-node rule
  /// are inconsistent. O(V + E); meant for tests and debugging.
  void check_invariants() const;

  friend bool operator==(const GameState& lhs, const GameState& rhs) {
    return lhs.count_ == rhs.count_ && lhs.iteration_ == rhs.iteration_ &&
           lhs.players_ == rhs.players_;
  }

 private:
  void add_presence(NodeId node, Team team, int delta) noexcept;

  const Graph* graph_;
  std::array<std::vector<std::uint32_t>, 2> count_;
  std::array<std::vector<std::uint32_t>, 2> nearby_;
  std::array<std::vector<NodeId>, 2> players_;
  std::uint64_t iteration_ = 0;
};

/// Places players one at a time alternating A, B, A, ... each uniformly over
/// nodes not holding the adversary. Throws InitializationError if a player
/// has nowhere to go, InvalidParameter for graphs with fewer than 2 nodes.
GameState init_state(const Graph& graph, std::size_t players_per_team, Rng& rng);

/// Neighbors of `from` that hold no adversary of `team`.
std::vector<NodeId> valid_destinations(const GameState& state, NodeId from, Team team);

/// Teammates of `team` near `node` under `rule`. When `exclude_self_at` names
/// a counted position holding a `team` player, one player (the mover itself)
/// is not counted.
std::uint32_t proximity_score(const GameState& state, NodeId node, Team team,
                              std::optional<NodeId> exclude_self_at = std::nullopt,
                              ProximityRule rule = ProximityRule::Adjacent);

/// Destination of a mover of `team` standing on `from`; nullopt means Stay
/// (no valid destination). A random draw is consumed only when more than one
/// destination is possible.
std::optional<NodeId> choose_move(const GameState& state, NodeId from, Team team, GameKind game,
                                  Rng& rng, ProximityRule rule = ProximityRule::Adjacent);

struct EncounterRecord {
  NodeId node = 0;
  bool removed_a = false;
  bool removed_b = false;
};

struct StepRecord {
  std::array<NodeId, 2> from{};
  std::array<std::optional<NodeId>, 2> to{};
  std::optional<EncounterRecord> encounter;
};

/// Encounter outcome for one A player and one B player arriving at `node`:
/// G1 removes both; otherwise the larger self-excluded proximity score
/// survives and equal scores remove both. `state` is the post-move state.
EncounterRecord resolve_encounter(const GameState& state, NodeId node, GameKind game,
                                  ProximityRule rule = ProximityRule::Adjacent);

/// One simultaneous move: picks one player per team uniformly, computes both
/// destinations against the pre-move state, applies them, and resolves an
/// encounter when both land on the same node. Throws ContractViolation when
/// the game is already finished.
StepRecord step(GameState& state, GameKind game, Rng& rng,
                ProximityRule rule = ProximityRule::Adjacent);

enum class Reachability : std::uint8_t { Reachable, Unreachable, Unknown };

/// Explores every state the game can reach from `state` (over all mover
/// picks and all random destination choices). Returns Unreachable when that
/// closed set contains no step producing an encounter, meaning alive counts
/// can never change again; Reachable as soon as one encounter is found;
/// Unknown when more than `max_states` states would have to be visited.
Reachability probe_encounters(const GameState& state, GameKind game, ProximityRule rule,
                              std::size_t max_states);

/// Called after every step with the post-step state.
using StepObserver = std::function<void(const GameState&, const StepRecord&)>;

/// Plays one replica to completion or to the iteration cap. Deterministic in
/// (graph, config). With an observer attached every step is simulated, so
/// skip_absorbed has no effect.
GameOutcome run_game(const Graph& graph, const GameConfig& config,
                     const StepObserver& observer = {});

}  // namespace netgames
