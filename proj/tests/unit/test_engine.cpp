#include <gtest/gtest.h>

#include <map>
#include <string>

#include "netgames/engine.hpp"
#include "netgames/error.hpp"
#include "netgames/graphgen.hpp"

namespace netgames {
namespace {

Graph from_edges(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Mover on 0 with two exits: node 1 touches three teammates (3, 4, 5), node
// 2 touches one (6).
Graph fork_graph() {
  return from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 6}});
}

GameState fork_state(const Graph& g) {
  GameState s(g);
  for (NodeId v : {0U, 3U, 4U, 5U, 6U}) s.place(v, Team::A);
  return s;
}

TEST(Names, GamesRoundTrip) {
  for (auto g : kAllGames) EXPECT_EQ(parse_game(to_string(g)), g);
  EXPECT_EQ(parse_game("g3"), GameKind::G3);
  EXPECT_EQ(parse_game("4"), GameKind::G4);
  EXPECT_THROW(parse_game("g6"), InvalidParameter);
  EXPECT_EQ(parse_proximity_rule("inclusive"), ProximityRule::Inclusive);
  EXPECT_THROW(parse_proximity_rule("near"), InvalidParameter);
}

TEST(Config, Validation) {
  GameConfig c;
  EXPECT_NO_THROW(validate(c));
  c.players_per_team = 0;
  EXPECT_THROW(validate(c), InvalidParameter);
  c.players_per_team = 1;
  c.max_iterations = 0;
  EXPECT_THROW(validate(c), InvalidParameter);
}

TEST(Proximity, AdjacentRuleIgnoresTheNodeItself) {
  const Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  GameState s(g);
  s.place(1, Team::A);
  s.place(1, Team::A);
  s.place(2, Team::A);
  s.place(3, Team::B);
  EXPECT_EQ(proximity_score(s, 1, Team::A), 1U);                    // node 2
  EXPECT_EQ(proximity_score(s, 2, Team::A), 2U);                    // node 1 twice
  EXPECT_EQ(proximity_score(s, 2, Team::A, NodeId{1}), 1U);         // minus the mover on 1
  EXPECT_EQ(proximity_score(s, 1, Team::A, NodeId{1}), 1U);         // mover on 1 not counted anyway
  EXPECT_EQ(proximity_score(s, 2, Team::B), 1U);
}

TEST(Proximity, InclusiveRuleCountsTheNodeItself) {
  const Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  GameState s(g);
  s.place(1, Team::A);
  s.place(1, Team::A);
  s.place(2, Team::A);
  constexpr auto kInc = ProximityRule::Inclusive;
  EXPECT_EQ(proximity_score(s, 1, Team::A, std::nullopt, kInc), 3U);
  EXPECT_EQ(proximity_score(s, 1, Team::A, NodeId{1}, kInc), 2U);
  EXPECT_EQ(proximity_score(s, 0, Team::A, std::nullopt, kInc), 2U);
  EXPECT_EQ(proximity_score(s, 3, Team::A, NodeId{1}, kInc), 1U);  // mover on 1 is not near 3
}

TEST(Moves, ValidDestinationsExcludeAdversaries) {
  const Graph g = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(2, Team::B);
  s.place(3, Team::A);
  EXPECT_EQ(valid_destinations(s, 0, Team::A), (std::vector<NodeId>{1, 3}));
}

TEST(Moves, BlockadedMoverStaysWithoutDrawing) {
  const Graph g = from_edges(3, {{0, 1}, {0, 2}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(1, Team::B);
  s.place(2, Team::B);
  for (auto game : kAllGames) {
    Rng rng(1);
    const Rng before = rng;
    EXPECT_FALSE(choose_move(s, 0, Team::A, game, rng).has_value());
    EXPECT_EQ(rng, before);
  }
}

TEST(Moves, SingleOptionConsumesNoRandomness) {
  const Graph g = from_edges(3, {{0, 1}, {0, 2}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(2, Team::B);
  for (auto game : kAllGames) {
    Rng rng(1);
    const Rng before = rng;
    EXPECT_EQ(choose_move(s, 0, Team::A, game, rng), NodeId{1});
    EXPECT_EQ(rng, before);
  }
}

TEST(Moves, StrategicMoverTakesTheBestScore) {
  const Graph g = fork_graph();
  const GameState s = fork_state(g);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    ASSERT_EQ(choose_move(s, 0, Team::A, GameKind::G4, rng), NodeId{1});
    ASSERT_EQ(choose_move(s, 0, Team::A, GameKind::G3, rng), NodeId{1});
  }
}

TEST(Moves, StrategyOnlyForTheRightTeams) {
  // In G3 team B moves at random even with the same layout.
  const Graph g = fork_graph();
  GameState s(g);
  for (NodeId v : {0U, 3U, 4U, 5U, 6U}) s.place(v, Team::B);
  Rng rng(4);
  std::map<NodeId, int> hits;
  for (int i = 0; i < 2000; ++i) ++hits[*choose_move(s, 0, Team::B, GameKind::G3, rng)];
  EXPECT_GT(hits[2], 800);
  EXPECT_GT(hits[1], 800);
}

TEST(Moves, StrategicTiesAreUniform) {
  const Graph g = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  GameState s(g);
  s.place(0, Team::A);
  Rng rng(5);
  std::map<NodeId, int> hits;
  for (int i = 0; i < 30000; ++i) ++hits[*choose_move(s, 0, Team::A, GameKind::G4, rng)];
  for (NodeId v : {1U, 2U, 3U}) EXPECT_NEAR(hits[v], 10000, 500);
}

TEST(Moves, G5WeightsByScorePlusOne) {
  // Node 1 scores 3 (weight 4) and node 2 scores 1 (weight 2): 4/6 vs 2/6.
  const Graph g = fork_graph();
  const GameState s = fork_state(g);
  EXPECT_EQ(proximity_score(s, 1, Team::A, NodeId{0}), 3U);
  EXPECT_EQ(proximity_score(s, 2, Team::A, NodeId{0}), 1U);
  Rng rng(6);
  constexpr int kDraws = 60000;
  int to_one = 0;
  for (int i = 0; i < kDraws; ++i) {
    if (*choose_move(s, 0, Team::A, GameKind::G5, rng) == 1) ++to_one;
  }
  // Binomial sd is about 115; allow five of them.
  EXPECT_NEAR(to_one, kDraws * 4 / 6, 600);
}

TEST(Moves, RandomGamesAreUniform) {
  const Graph g = fork_graph();
  const GameState s = fork_state(g);
  for (auto game : {GameKind::G1, GameKind::G2}) {
    Rng rng(7);
    int to_one = 0;
    for (int i = 0; i < 20000; ++i) {
      if (*choose_move(s, 0, Team::A, game, rng) == 1) ++to_one;
    }
    EXPECT_NEAR(to_one, 10000, 400);
  }
}

TEST(Encounter, G1RemovesBoth) {
  const Graph g = from_edges(3, {{0, 1}, {1, 2}});
  GameState s(g);
  s.place(1, Team::A);
  s.place(1, Team::B);
  const auto r = resolve_encounter(s, 1, GameKind::G1);
  EXPECT_TRUE(r.removed_a);
  EXPECT_TRUE(r.removed_b);
}

TEST(Encounter, LargerTeamNearbyWins) {
  // A has two teammates next to the meeting node, B has one.
  const Graph g = from_edges(5, {{0, 2}, {1, 2}, {2, 3}, {3, 4}});
  GameState s(g);
  s.place(2, Team::A);
  s.place(2, Team::B);
  s.place(0, Team::A);
  s.place(1, Team::A);
  s.place(3, Team::B);
  for (auto game : {GameKind::G2, GameKind::G3, GameKind::G4, GameKind::G5}) {
    const auto r = resolve_encounter(s, 2, game);
    EXPECT_FALSE(r.removed_a);
    EXPECT_TRUE(r.removed_b);
  }
}

TEST(Encounter, EqualScoresRemoveBoth) {
  const Graph g = from_edges(5, {{0, 2}, {1, 2}, {2, 3}, {3, 4}});
  GameState s(g);
  s.place(2, Team::A);
  s.place(2, Team::B);
  s.place(0, Team::A);
  s.place(3, Team::B);
  const auto r = resolve_encounter(s, 2, GameKind::G2);
  EXPECT_TRUE(r.removed_a);
  EXPECT_TRUE(r.removed_b);
}

TEST(Encounter, RequiresOneOfEach) {
  const Graph g = from_edges(2, {{0, 1}});
  GameState s(g);
  s.place(0, Team::A);
  EXPECT_THROW(resolve_encounter(s, 0, GameKind::G2), ContractViolation);
}

TEST(Step, SimultaneousArrivalIsAnEncounter) {
  const Graph g = from_edges(3, {{0, 1}, {1, 2}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(2, Team::B);
  Rng rng(1);
  const auto rec = step(s, GameKind::G1, rng);
  ASSERT_TRUE(rec.encounter.has_value());
  EXPECT_EQ(rec.encounter->node, 1U);
  EXPECT_TRUE(s.finished());
  EXPECT_EQ(s.alive(Team::A), 0U);
  EXPECT_EQ(s.alive(Team::B), 0U);
  EXPECT_EQ(s.iteration(), 1U);
  EXPECT_THROW(step(s, GameKind::G1, rng), ContractViolation);
}

TEST(Step, DestinationsUseThePreMoveState) {
  // B leaves node 1 this step, but A still may not enter it.
  const Graph g = from_edges(3, {{0, 1}, {1, 2}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(1, Team::B);
  Rng rng(2);
  const auto rec = step(s, GameKind::G2, rng);
  EXPECT_FALSE(rec.to[0].has_value());
  EXPECT_EQ(rec.to[1], NodeId{2});
  EXPECT_FALSE(rec.encounter.has_value());
  EXPECT_EQ(s.players(Team::A)[0], 0U);
  EXPECT_EQ(s.players(Team::B)[0], 2U);
  EXPECT_NO_THROW(s.check_invariants());
}

TEST(Init, PlacesEveryoneWithoutMixedNodes) {
  const Graph g = make_reg(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const GameState s = init_state(g, 10, rng);
    ASSERT_EQ(s.alive(Team::A), 10U);
    ASSERT_EQ(s.alive(Team::B), 10U);
    ASSERT_NO_THROW(s.check_invariants());
  }
  Graph tiny(1);
  Rng rng(0);
  EXPECT_THROW(init_state(tiny, 1, rng), InvalidParameter);
}

TEST(Init, CrowdedArenaStillFits) {
  const Graph g = from_edges(2, {{0, 1}});
  Rng rng(3);
  const GameState s = init_state(g, 40, rng);
  EXPECT_EQ(s.count(0, Team::A) + s.count(1, Team::A), 40U);
  EXPECT_NO_THROW(s.check_invariants());
}

class Trajectories : public ::testing::TestWithParam<std::tuple<GameKind, TopologyKind>> {};

TEST_P(Trajectories, InvariantsHoldEveryStep) {
  const auto [game, topo] = GetParam();
  const Graph g = generate(TopologySpec::defaults(topo), 99);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    GameState s = init_state(g, 10, rng);
    std::size_t total = 20;
    for (int it = 0; it < 3000 && !s.finished(); ++it) {
      const auto rec = step(s, game, rng);
      ASSERT_NO_THROW(s.check_invariants());
      const std::size_t now = s.alive(Team::A) + s.alive(Team::B);
      if (rec.encounter) {
        ASSERT_TRUE(rec.to[0] && rec.to[1] && *rec.to[0] == *rec.to[1]);
        ASSERT_TRUE(rec.encounter->removed_a || rec.encounter->removed_b);
        ASSERT_LT(now, total);
      } else {
        ASSERT_EQ(now, total);
      }
      if (game == GameKind::G1) ASSERT_EQ(s.alive(Team::A), s.alive(Team::B));
      total = now;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllCases, Trajectories,
                         ::testing::Combine(::testing::ValuesIn(kAllGames),
                                            ::testing::ValuesIn(kAllTopologies)),
                         [](const auto& info) {
                           return std::string(to_string(std::get<0>(info.param))) + "_" +
                                  std::string(to_string(std::get<1>(info.param)));
                         });

TEST(RunGame, DeterministicInSeed) {
  const Graph g = make_geo(5, 0.25, 4);
  GameConfig c;
  c.game = GameKind::G2;
  c.seed = 1234;
  EXPECT_EQ(run_game(g, c), run_game(g, c));
}

TEST(RunGame, G1AlwaysTies) {
  for (auto topo : kAllTopologies) {
    const Graph g = generate(TopologySpec::defaults(topo), 5);
    GameConfig c;
    c.game = GameKind::G1;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      c.seed = seed;
      ASSERT_EQ(run_game(g, c).result, GameResult::Tie);
    }
  }
}

TEST(RunGame, CapProducesCensoredOutcome) {
  const Graph g = make_reg(5);
  GameConfig c;
  c.game = GameKind::G2;
  c.max_iterations = 3;
  c.seed = 8;
  const auto o = run_game(g, c);
  EXPECT_EQ(o.result, GameResult::Censored);
  EXPECT_EQ(o.duration, 3U);
}

TEST(RunGame, ObserverSeesEveryStep) {
  const Graph g = make_reg(5);
  GameConfig c;
  c.game = GameKind::G2;
  c.seed = 17;
  std::uint64_t calls = 0;
  const auto o = run_game(g, c, [&](const GameState& s, const StepRecord&) {
    ++calls;
    EXPECT_EQ(s.iteration(), calls);
  });
  EXPECT_EQ(calls, o.duration);
  EXPECT_EQ(o, run_game(g, c));
}

TEST(RunGame, SkippingAbsorbedRunsDoesNotChangeOutcomes) {
  for (auto topo : kAllTopologies) {
    const Graph g = generate(TopologySpec::defaults(topo), 31);
    for (auto game : {GameKind::G3, GameKind::G4}) {
      GameConfig skip;
      skip.game = game;
      skip.max_iterations = 150'000;
      GameConfig full = skip;
      full.skip_absorbed = false;
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        skip.seed = full.seed = seed;
        ASSERT_EQ(run_game(g, skip), run_game(g, full))
            << to_string(topo) << " " << to_string(game) << " seed " << seed;
      }
    }
  }
}

TEST(Probe, SeparatedTeamsCanNeverMeet) {
  // Two components: A lives on {0, 1}, B on {2, 3}.
  const Graph g = from_edges(4, {{0, 1}, {2, 3}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(2, Team::B);
  for (auto game : kAllGames) {
    EXPECT_EQ(probe_encounters(s, game, ProximityRule::Adjacent, 1000), Reachability::Unreachable);
  }
}

TEST(Probe, FindsReachableEncounters) {
  const Graph g = from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  GameState s(g);
  s.place(0, Team::A);
  s.place(4, Team::B);
  EXPECT_EQ(probe_encounters(s, GameKind::G2, ProximityRule::Adjacent, 1000),
            Reachability::Reachable);
  EXPECT_EQ(probe_encounters(s, GameKind::G2, ProximityRule::Adjacent, 1), Reachability::Unknown);
}

TEST(Probe, G4OnTheLatticeGetsAbsorbed) {
  // The strategic lattice game settles into encounter-free cycles; by
  // 200k steps the probe must have recognised most of them.
  const Graph g = make_reg(5);
  int absorbed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    GameState s = init_state(g, 10, rng);
    for (int i = 0; i < 50'000 && !s.finished(); ++i) step(s, GameKind::G4, rng);
    if (!s.finished() &&
        probe_encounters(s, GameKind::G4, ProximityRule::Adjacent, 50'000) ==
            Reachability::Unreachable) {
      ++absorbed;
    }
  }
  EXPECT_GE(absorbed, 15);
}

}  // namespace
}  // namespace netgames
